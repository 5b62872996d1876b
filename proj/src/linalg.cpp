#include "natcoh/linalg.hpp"

#include <algorithm>
#include <utility>

#include "natcoh/errors.hpp"

namespace natcoh {

namespace {

// Secondary screening prime, tried before falling back to exact elimination.
constexpr std::uint64_t kBackupPrime = 2147483629ULL;

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t result = 1 % p;
    base %= p;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return result;
}

std::uint64_t reduce_integer(const Integer& z, std::uint64_t p)
{
    Integer r = z % Integer(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

}  // namespace

ExactMatrix ExactMatrix::identity(std::size_t n)
{
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool ExactMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

ExactMatrix ExactMatrix::transpose() const
{
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<Rational> ExactMatrix::apply(std::span<const Rational> v) const
{
    if (v.size() != cols_) throw ShapeMismatch("vector length does not match matrix columns");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

void ExactMatrix::set_block(std::size_t r0, std::size_t c0, const ExactMatrix& block)
{
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) throw ShapeMismatch("block does not fit");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r0 + i, c0 + j) = block(i, j);
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y)
{
    if (x.cols_ != y.rows_) throw ShapeMismatch("matrix product of incompatible shapes");
    ExactMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
        for (std::size_t k = 0; k < x.cols_; ++k) {
            const Rational& a = x(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < y.cols_; ++j)
                if (y(k, j) != 0) out(i, j) += a * y(k, j);
        }
    return out;
}

std::size_t ModMatrix::rank() const
{
    std::vector<std::uint64_t> a = entries_;
    const std::uint64_t p = prime_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && a[pivot * cols_ + c] == 0) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r)
            for (std::size_t j = c; j < cols_; ++j) std::swap(a[pivot * cols_ + j], a[r * cols_ + j]);
        const std::uint64_t inv = powmod(a[r * cols_ + c], p - 2, p);
        for (std::size_t j = c; j < cols_; ++j) a[r * cols_ + j] = mulmod(a[r * cols_ + j], inv, p);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            const std::uint64_t factor = a[i * cols_ + c];
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols_; ++j) {
                const std::uint64_t sub = mulmod(factor, a[r * cols_ + j], p);
                std::uint64_t& x = a[i * cols_ + j];
                x = x >= sub ? x - sub : x + p - sub;
            }
        }
        ++r;
    }
    return r;
}

std::uint64_t reduce_mod(const Rational& q, std::uint64_t p)
{
    const std::uint64_t den = reduce_integer(q.get_den(), p);
    if (den == 0)
        throw DenominatorDivisibleByP("prime " + std::to_string(p) + " divides denominator of " + q.get_str());
    const std::uint64_t num = reduce_integer(q.get_num(), p);
    return den == 1 ? num : mulmod(num, powmod(den, p - 2, p), p);
}

ModMatrix reduce_mod(const ExactMatrix& m, std::uint64_t p)
{
    ModMatrix out(m.rows(), m.cols(), p);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) out.set(i, j, reduce_mod(m(i, j), p));
    return out;
}

std::size_t rank_modp(const ExactMatrix& m, std::uint64_t p)
{
    return reduce_mod(m, p).rank();
}

std::size_t rank_bareiss(const ExactMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<Integer> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        Integer l = 1;
        for (const auto& q : m.row(i)) l = lcm(l, q.get_den());
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational& q = m(i, j);
            a[i * cols + j] = q.get_num() * (l / q.get_den());
        }
    }
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(a[pivot * cols + j], a[r * cols + j]);
        const Integer& piv = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            Integer& lead = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer& x = a[i * cols + j];
                x = piv * x - lead * a[r * cols + j];
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            lead = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

std::size_t rank(const ExactMatrix& m)
{
    return certified_rank(m, std::min(m.rows(), m.cols()));
}

std::size_t certified_rank(const ExactMatrix& m, std::size_t upper_bound, std::uint64_t prime)
{
    upper_bound = std::min({upper_bound, m.rows(), m.cols()});
    std::size_t lower = 0;
    for (std::uint64_t p : {prime, kBackupPrime}) {
        try {
            lower = std::max(lower, rank_modp(m, p));
        } catch (const DenominatorDivisibleByP&) {
            continue;
        }
        if (lower >= upper_bound) return upper_bound;
    }
    return rank_bareiss(m);
}

std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    ExactMatrix a = m;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
        const Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational factor = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (a(r, j) != 0) a(i, j) -= factor * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rational> primitive_integer(std::vector<Rational> v)
{
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, q.get_den());
    Integer g = 0;
    for (const auto& q : v) g = gcd(g, Integer(q.get_num() * (l / q.get_den())));
    if (g == 0) return v;
    Rational scale(l, g);
    scale.canonicalize();
    for (auto& q : v) q *= scale;
    return v;
}

}  // namespace natcoh
