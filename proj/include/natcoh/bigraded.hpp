#pragma once

// Bidegrees, (Laurent) monomials in z0,z1,w0,w1, bihomogeneous polynomials
// with exact rational coefficients, and ordered sums of line bundles O(a,b)
// on P1 x P1.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace natcoh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign) into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

struct Bidegree {
    int a = 0;
    int b = 0;

    friend constexpr auto operator<=>(const Bidegree&, const Bidegree&) = default;
    friend constexpr Bidegree operator+(Bidegree x, Bidegree y) { return {x.a + y.a, x.b + y.b}; }
    friend constexpr Bidegree operator-(Bidegree x, Bidegree y) { return {x.a - y.a, x.b - y.b}; }
    friend constexpr Bidegree operator-(Bidegree x) { return {-x.a, -x.b}; }

    constexpr bool nonnegative() const { return a >= 0 && b >= 0; }
};

std::string to_string(Bidegree d);

/// Exponents of z0, z1, w0, w1. Negative exponents only occur in cohomology bases.
struct Monomial {
    int za = 0;
    int zb = 0;
    int wa = 0;
    int wb = 0;

    friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
    friend constexpr Monomial operator*(Monomial x, Monomial y)
    {
        return {x.za + y.za, x.zb + y.zb, x.wa + y.wa, x.wb + y.wb};
    }

    constexpr Bidegree bidegree() const { return {za + zb, wa + wb}; }
    constexpr bool polynomial() const { return za >= 0 && zb >= 0 && wa >= 0 && wb >= 0; }
};

/// The fixed basis order: za descending, then wa descending (then zb, wb
/// descending so that Laurent monomials of mixed bidegree still compare totally).
struct MonomialOrder {
    bool operator()(const Monomial& x, const Monomial& y) const
    {
        if (x.za != y.za) return x.za > y.za;
        if (x.wa != y.wa) return x.wa > y.wa;
        if (x.zb != y.zb) return x.zb > y.zb;
        return x.wb > y.wb;
    }
};

/// "z0^2*w1", "1" for the constant monomial, Laurent exponents printed as-is.
std::string to_string(const Monomial& m);

/// All monomials of bidegree d with nonnegative exponents, in MonomialOrder.
/// Empty if either component of d is negative.
std::vector<Monomial> monomial_basis(Bidegree d);

class BiPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    BiPoly() = default;
    explicit BiPoly(Bidegree d) : degree_(d) {}

    static BiPoly zero(Bidegree d) { return BiPoly(d); }
    static BiPoly constant(const Rational& c);
    static BiPoly monomial(const Monomial& m, const Rational& c = 1);
    /// c0*v0 + c1*v1 for the first factor (z) or the second (w).
    static BiPoly linear_z(const Rational& c0, const Rational& c1);
    static BiPoly linear_w(const Rational& c0, const Rational& c1);

    Bidegree bidegree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Monomial& m) const;

    /// Adds c*m; throws BidegreeMismatch or NegativeBidegree on a bad monomial.
    void add_term(const Monomial& m, const Rational& c);

    BiPoly& operator+=(const BiPoly& other);
    BiPoly& operator-=(const BiPoly& other);
    BiPoly& operator*=(const Rational& c);

    friend BiPoly operator+(BiPoly p, const BiPoly& q) { return p += q; }
    friend BiPoly operator-(BiPoly p, const BiPoly& q) { return p -= q; }
    friend BiPoly operator-(BiPoly p) { return p *= -1; }
    friend BiPoly operator*(BiPoly p, const Rational& c) { return p *= c; }
    friend BiPoly operator*(const Rational& c, BiPoly p) { return p *= c; }
    friend BiPoly operator*(const BiPoly& p, const BiPoly& q);

    friend bool operator==(const BiPoly& p, const BiPoly& q)
    {
        return p.degree_ == q.degree_ && p.terms_ == q.terms_;
    }

private:
    Bidegree degree_;
    Terms terms_;
};

/// Text form "c*z0^i*z1^j*w0^k*w1^l" joined by " + " / " - "; "0" for zero.
std::string to_string(const BiPoly& p);

/// Inverse of to_string. The bidegree of a zero polynomial cannot be read
/// from text, so the caller supplies the expected one; nonzero input must match it.
BiPoly parse_bipoly(std::string_view text, Bidegree expected);

/// Ordered direct sum of line bundles; order indexes matrix rows/columns.
struct LineBundleSum {
    std::vector<Bidegree> summands;

    LineBundleSum() = default;
    LineBundleSum(std::initializer_list<Bidegree> s) : summands(s) {}
    explicit LineBundleSum(std::vector<Bidegree> s) : summands(std::move(s)) {}

    static LineBundleSum repeated(Bidegree d, int count);

    std::size_t size() const { return summands.size(); }
    bool empty() const { return summands.empty(); }
    const Bidegree& operator[](std::size_t i) const { return summands[i]; }

    LineBundleSum twisted(Bidegree t) const;
    /// O(a,b) -> O(-2-a,-2-b) summand-wise, order kept.
    LineBundleSum serre_dual() const;
    /// O(a,b) -> O(-a,-b) summand-wise, order kept.
    LineBundleSum dual() const;
    LineBundleSum& append(const LineBundleSum& other);

    friend bool operator==(const LineBundleSum&, const LineBundleSum&) = default;
};

std::string to_string(const LineBundleSum& s);

/// Seeded generator with a portable integer distribution, so that a seed
/// gives the same draws on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Derives an independent stream from (seed, stream index).
    static Rng derive(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [lo, hi], rejection sampled.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Every monomial of monomial_basis(d) gets an integer coefficient uniform
/// in [-height, height]. Throws NegativeBidegree.
BiPoly random_bipoly(Bidegree d, int height, Rng& rng);

}  // namespace natcoh
