#pragma once

#include <string>
#include <vector>

#include "natcoh/bigraded.hpp"

namespace natcoh {

/// A map of line-bundle sums given by a matrix of bihomogeneous polynomials.
/// Entry (i, j) maps source summand j to target summand i and has bidegree
/// target[i] - source[j]; it is zero whenever that bidegree has a negative part.
class SheafMap {
public:
    SheafMap() = default;
    /// Zero map.
    SheafMap(LineBundleSum source, LineBundleSum target);
    /// Row-major entries; throws ShapeMismatch / BidegreeMismatch on bad input.
    SheafMap(LineBundleSum source, LineBundleSum target, std::vector<BiPoly> entries);

    /// Constant 1 on the diagonal of a square map source -> source.
    static SheafMap identity(const LineBundleSum& source);

    const LineBundleSum& source() const { return source_; }
    const LineBundleSum& target() const { return target_; }
    std::size_t rows() const { return target_.size(); }
    std::size_t cols() const { return source_.size(); }

    const BiPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
    /// Replaces entry (i, j); the bidegree must match.
    void set(std::size_t i, std::size_t j, BiPoly p);
    Bidegree entry_bidegree(std::size_t i, std::size_t j) const { return target_[i] - source_[j]; }
    const std::vector<BiPoly>& entries() const { return entries_; }

    bool is_zero() const;

    /// Same entries between twisted sums.
    SheafMap twisted(Bidegree t) const;
    /// phi* = phi^dual twisted by the dualizing bundle: target* -> source*, entries transposed.
    SheafMap serre_dual() const;
    /// phi^dual: target^dual -> source^dual, entries transposed.
    SheafMap dual() const;

    friend bool operator==(const SheafMap&, const SheafMap&) = default;

private:
    void normalize_entries();

    LineBundleSum source_;
    LineBundleSum target_;
    std::vector<BiPoly> entries_;
};

/// g o f; throws ShapeMismatch unless f.target() == g.source().
SheafMap compose(const SheafMap& g, const SheafMap& f);

}  // namespace natcoh
