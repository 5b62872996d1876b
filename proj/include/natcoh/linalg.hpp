#pragma once

// Exact dense linear algebra over Q with a prime-field screening path.
//
// Rank decisions that end up in a certificate are always exact: a mod-p rank
// is only a lower bound, and it is accepted as the rational rank only when it
// meets an upper bound the caller has proven (see certified_rank). Otherwise
// the rank is recomputed by fraction-free (Bareiss) elimination over Z.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "natcoh/bigraded.hpp"

namespace natcoh {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
    std::span<Rational> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }

    bool is_zero() const;
    ExactMatrix transpose() const;
    std::vector<Rational> apply(std::span<const Rational> v) const;

    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& block);

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

/// A matrix over F_p; entries always lie in [0, p).
class ModMatrix {
public:
    ModMatrix(std::size_t rows, std::size_t cols, std::uint64_t prime)
        : rows_(rows), cols_(cols), prime_(prime), entries_(rows * cols, 0)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t prime() const { return prime_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    /// Stores value mod p.
    void set(std::size_t i, std::size_t j, std::uint64_t value) { entries_[i * cols_ + j] = value % prime_; }

    /// Row reduction mod p; destroys nothing (works on a copy).
    std::size_t rank() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::uint64_t prime_;
    std::vector<std::uint64_t> entries_;
};

/// Reduces q mod p; throws DenominatorDivisibleByP if p divides the denominator.
std::uint64_t reduce_mod(const Rational& q, std::uint64_t p);
ModMatrix reduce_mod(const ExactMatrix& m, std::uint64_t p);

/// Exact rank over Q.
std::size_t rank(const ExactMatrix& m);

/// Exact rank given a proven upper bound (for example min(rows, cols), or
/// cols - rank(f) when g*f = 0 holds exactly). Screens mod p first and falls
/// back to exact elimination only when the screen does not reach the bound.
std::size_t certified_rank(const ExactMatrix& m, std::size_t upper_bound, std::uint64_t prime = kDefaultPrime);

/// Fraction-free elimination over Z after clearing row denominators.
std::size_t rank_bareiss(const ExactMatrix& m);

/// Rank of m reduced mod p; never exceeds rank(m).
std::size_t rank_modp(const ExactMatrix& m, std::uint64_t p);

/// Right kernel basis from the reduced row echelon form with first-nonzero
/// pivoting: one vector per free column, 1 in that column and 0 in the other
/// free columns.
std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m);

/// Scales v by a positive rational so that its entries are coprime integers.
std::vector<Rational> primitive_integer(std::vector<Rational> v);

}  // namespace natcoh
