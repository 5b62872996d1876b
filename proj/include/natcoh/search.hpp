#pragma once

// Randomized construction of monads whose bundle has natural cohomology.
//
// gamma > 1:  0 -> O(-1,-1)^{r(gamma-1)} -f-> O(0,-1)^{r gamma} + O(-1,0)^{r gamma} -g-> O^{r gamma} -> 0
// gamma <= 1: 0 -> E -> O(0,-1)^{r gamma} + O(-1,0)^{r gamma} + O(-1,-1)^{r(1-gamma)} -g-> O^{r gamma} -> 0
//
// Every draw is derived from (seed, attempt), so a configuration always
// reproduces the same monad, and every accepted draw has passed all the rank
// conditions below over Q.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "natcoh/errors.hpp"
#include "natcoh/monad.hpp"

namespace natcoh {

struct SearchConfig {
    std::uint64_t seed = 0;
    int max_retries = 10;
    int height = 100;
    std::uint64_t prime = kDefaultPrime;
    /// Surjectivity window; a negative value means r*gamma + 2.
    int window = -1;
    int fiber_samples = 50;

    int surjectivity_window(const HilbertParams& p) const
    {
        return window >= 0 ? window : default_surjectivity_window(p);
    }
    SurjectivityConfig surjectivity(const HilbertParams& p) const
    {
        return {prime, fiber_samples, surjectivity_window(p), seed};
    }
};

struct ConditionRecord {
    std::string name;
    std::optional<Bidegree> twist;
    std::vector<std::pair<std::string, long long>> required;
    std::vector<std::pair<std::string, long long>> observed;
    bool pass = false;
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionRecord> records;
    /// Bundle-map certificates, keyed "f_injective" / "g_surjective".
    std::vector<std::pair<std::string, SurjectivityCertificate>> bundle_maps;
    /// Attempt index that produced the monad.
    int attempt = 0;

    bool passed() const;
    const ConditionRecord* find(const std::string& name) const;
    /// First failing record, if any.
    const ConditionRecord* first_failure() const;
};

class RetriesExhausted : public Error {
public:
    RetriesExhausted(const std::string& what, ConditionReport last) : Error(what), last_report(std::move(last)) {}
    ConditionReport last_report;
};

/// Smallest r with r*gamma integral, doubled when it would be 1.
int minimal_rank_multiple(const Rational& gamma);

/// The terms of the two monad shapes for P = xy - gamma.
LineBundleSum monad_term_a(const HilbertParams& p);
LineBundleSum monad_term_b(const HilbertParams& p);
LineBundleSum monad_term_c(const HilbertParams& p);

/// Coordinates on Hom(source, target): one per (entry, monomial of its bidegree),
/// entries row-major, monomials in basis order.
class MapSpace {
public:
    MapSpace(LineBundleSum source, LineBundleSum target);

    std::size_t dimension() const { return coords_.size(); }
    const LineBundleSum& source() const { return source_; }
    const LineBundleSum& target() const { return target_; }

    SheafMap from_coordinates(const std::vector<Rational>& x) const;
    std::vector<Rational> coordinates(const SheafMap& phi) const;
    /// The map with coordinate u equal to 1 and all others 0.
    SheafMap unit(std::size_t u) const;

private:
    LineBundleSum source_;
    LineBundleSum target_;
    std::vector<std::pair<std::size_t, Monomial>> coords_;
};

/// Columns of f are balanced (each has a nonzero entry of bidegree (1,0) and
/// one of bidegree (0,1)) and linearly independent as sections of B(1,1).
bool columns_balanced(const SheafMap& f);
bool columns_independent(const SheafMap& f, std::uint64_t prime = kDefaultPrime);

/// Random map source -> target with balanced, independent columns; redraws up
/// to cfg.max_retries times.
SheafMap random_balanced_map(const LineBundleSum& source, const LineBundleSum& target, const SearchConfig& cfg,
                             Rng& rng);

/// f : O(-1,-1)^{r(gamma-1)} -> O(0,-1)^{r gamma} + O(-1,0)^{r gamma}, balanced.
SheafMap random_balanced_f(const HilbertParams& p, const SearchConfig& cfg);

/// The linear space L = { g : target(f) -> C | g o f = 0 }.
struct AnnihilatorSpace {
    MapSpace space;
    /// One row per coefficient of g o f: f-column outer, g-row, then monomial.
    ExactMatrix conditions;
    std::vector<std::vector<Rational>> basis_coordinates;
    std::vector<SheafMap> basis;

    std::size_t dimension() const { return basis.size(); }
};

AnnihilatorSpace build_L(const SheafMap& f, const LineBundleSum& c);
/// C = O^{rows}, the shape used by the monads above.
AnnihilatorSpace build_L(const SheafMap& f);

/// Integer combination of the basis with coefficients in [-height, height]
/// (not all zero), rescaled to coprime integer coefficients.
SheafMap random_point(const AnnihilatorSpace& L, int height, Rng& rng);

/// Evaluates every rank condition for the monad (f, g) over Q. Kernel monads
/// (A empty) get the gamma <= 1 list, the others the gamma > 1 list.
ConditionReport check_conditions(const Monad& m, const HilbertParams& p, const SearchConfig& cfg);
ConditionReport check_conditions(const SheafMap& f, const SheafMap& g, const HilbertParams& p,
                                 const SearchConfig& cfg);

struct SearchResult {
    Monad monad;
    ConditionReport report;
};

/// gamma > 1. Throws RetriesExhausted with the last report.
SearchResult search_monad(const HilbertParams& p, const SearchConfig& cfg);

/// 0 < gamma <= 1. Throws RetriesExhausted with the last report.
SearchResult search_kernel_bundle(const HilbertParams& p, const SearchConfig& cfg);

/// Dispatches on gamma.
SearchResult search(const HilbertParams& p, const SearchConfig& cfg);

enum class Term { A, B, C };
std::string to_string(Term t);

struct ShapeEntry {
    /// One of O(-1,-1), O(0,-1), O(-1,0), O(0,0) for the shifted polynomial.
    Bidegree bundle;
    Term term = Term::B;
    long long exponent = 0;
};

struct MonadShape {
    /// Shape is computed for Q(x,y) = P(x + shift.a, y + shift.b), the Hilbert
    /// polynomial of E(shift); the terms below are twisted back by -shift.
    Bidegree shift;
    int r = 1;
    std::array<ShapeEntry, 4> entries;
    LineBundleSum A;
    LineBundleSum B;
    LineBundleSum C;
    /// "monad", "kernel" (A empty) or "cokernel" (C empty).
    std::string kind;
};

/// Reads placements and exponents off the signs of r*P at the corners
/// (-1,-1), (0,-1), (-1,0), (0,0); scans integral shifts |s|,|t| <= shift_bound
/// when the unshifted pattern is not valid. r is raised to the least multiple
/// of p.r making all exponents integral.
MonadShape monad_shape(const HilbertParams& p, int shift_bound = 3);

}  // namespace natcoh
