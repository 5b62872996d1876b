#pragma once

// Monads 0 -> A -f-> B -g-> C -> 0 of line-bundle sums on P1 x P1 and the
// cohomology of their middle bundle E = ker g / im f.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "natcoh/bigraded.hpp"
#include "natcoh/cohomology.hpp"
#include "natcoh/errors.hpp"
#include "natcoh/linalg.hpp"
#include "natcoh/sheaf_map.hpp"

namespace natcoh {

class NotAComplex : public Error {
public:
    using Error::Error;
};

/// Hilbert polynomial r * ((x - alpha)(y - beta) - gamma).
struct HilbertParams {
    int r = 1;
    Rational gamma = 1;
    Rational alpha = 0;
    Rational beta = 0;

    /// (x - alpha)(y - beta) - gamma at (x, y), without the factor r.
    Rational poly(const Rational& x, const Rational& y) const { return (x - alpha) * (y - beta) - gamma; }
    Rational chi(int a, int b) const { return r * poly(a, b); }
    bool simple() const { return alpha == 0 && beta == 0; }

    /// Throws InvalidParameters unless r >= 1, gamma > 0 and r*gamma is integral.
    void validate() const;
};

class Monad {
public:
    Monad() = default;
    /// Throws ShapeMismatch if the maps do not run A -> B -> C.
    Monad(LineBundleSum a, LineBundleSum b, LineBundleSum c, SheafMap f, SheafMap g);

    const LineBundleSum& A() const { return a_; }
    const LineBundleSum& B() const { return b_; }
    const LineBundleSum& C() const { return c_; }
    const SheafMap& f() const { return f_; }
    const SheafMap& g() const { return g_; }

    /// g o f == 0 exactly.
    bool is_complex() const { return complex_; }

    friend bool operator==(const Monad& x, const Monad& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.f_ == y.f_ && x.g_ == y.g_;
    }

private:
    LineBundleSum a_;
    LineBundleSum b_;
    LineBundleSum c_;
    SheafMap f_;
    SheafMap g_;
    bool complex_ = true;
};

Monad twist(const Monad& m, Bidegree t);

/// 0 -> C* -> B* -> A* -> 0 with maps g*, f*; summand order within each term kept.
Monad serre_dual(const Monad& m);

/// chi(E(t)) = chi(B(t)) - chi(A(t)) - chi(C(t)).
long long euler_char(const Monad& m, Bidegree t);

/// Degrees i with H^i(A(t)) + H^i(B(t)) + H^i(C(t)) != 0.
std::set<int> monad_coh_degrees(const Monad& m, Bidegree t);

struct CohDims {
    long long h0 = 0;
    long long h1 = 0;
    long long h2 = 0;

    long long chi() const { return h0 - h1 + h2; }
    long long operator[](int i) const { return i == 0 ? h0 : (i == 1 ? h1 : h2); }
    /// At most one nonzero entry.
    bool natural() const { return (h0 != 0) + (h1 != 0) + (h2 != 0) <= 1; }
    friend bool operator==(const CohDims&, const CohDims&) = default;
};

std::string to_string(const CohDims& h);

/// Ranks of H^i(f(t)) and H^i(g(t)) together with the term dimensions.
struct MonadRanks {
    int degree = 0;
    long long dim_a = 0;
    long long dim_b = 0;
    long long dim_c = 0;
    long long rank_f = 0;
    long long rank_g = 0;
};

/// Exact ranks of the induced maps in degree i at twist t. Requires a complex
/// (the bound rank g <= dim B - rank f is used to cut elimination short).
MonadRanks monad_ranks(const Monad& m, int i, Bidegree t, std::uint64_t prime = kDefaultPrime);

/// (h0, h1, h2) of E(t) from the single nonzero cohomology row of the monad.
/// Throws MixedMonadCohomology if two degrees are nonzero, NotAComplex if g o f != 0.
CohDims bundle_coh(const Monad& m, Bidegree t, std::uint64_t prime = kDefaultPrime);

enum class Verdict { certified, probable, failed };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);

struct FiberCheck {
    /// (z0, z1, w0, w1) over F_p.
    std::array<std::uint64_t, 4> point{};
    std::size_t rank = 0;
    std::size_t required = 0;
};

struct WindowCheck {
    Bidegree twist;
    long long cokernel = 0;
};

struct SurjectivityConfig {
    std::uint64_t prime = kDefaultPrime;
    int fiber_samples = 50;
    /// Twists t0 + (k,k), k = 0..window, where t0 makes the target globally generated.
    int window = 4;
    std::uint64_t seed = 0;
};

struct SurjectivityCertificate {
    std::vector<FiberCheck> fiber_checks;
    std::vector<WindowCheck> window_checks;
    int window = 0;
    std::uint64_t prime = kDefaultPrime;
    Verdict verdict = Verdict::failed;
    std::string reason;
};

/// Evidence that g is surjective on every fiber. Fiber ranks at random F_p
/// points (plus the zeros of single-factor linear entries) give "probable";
/// a twist with globally generated target at which H^0(g(t)) is onto upgrades
/// to "certified". Any deficient fiber gives "failed".
SurjectivityCertificate certify_surjective(const SheafMap& g, const SurjectivityConfig& config);

/// f is an injective bundle map iff its dual is a surjective one.
SurjectivityCertificate certify_injective(const SheafMap& f, const SurjectivityConfig& config);

/// The surjectivity window for a given (r, gamma): r*gamma + 2.
int default_surjectivity_window(const HilbertParams& p);

}  // namespace natcoh
