#pragma once

// Hand-entered monads used as fixtures by the CLI and the tests.

#include <string>
#include <vector>

#include "natcoh/io.hpp"

namespace natcoh {

/// Names accepted by example_document.
std::vector<std::string> example_names();

/// Throws InvalidParameters for an unknown name.
MonadDocument example_document(const std::string& name);

/// The r = 2, gamma = 2 monad with f chosen by hand and g a general point of
/// L = { g : g o f = 0 }, entered coefficient by coefficient.
MonadDocument example_g2r2();

}  // namespace natcoh
