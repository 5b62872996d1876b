#pragma once

#include <stdexcept>
#include <string>

namespace natcoh {

// Base for every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BidegreeMismatch : public Error {
public:
    using Error::Error;
};

class NegativeBidegree : public Error {
public:
    using Error::Error;
};

class DenominatorDivisibleByP : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class MixedMonadCohomology : public Error {
public:
    using Error::Error;
};

class NoValidShapeWithinShiftBound : public Error {
public:
    using Error::Error;
};

class SplitTypeMismatch : public Error {
public:
    using Error::Error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace natcoh
