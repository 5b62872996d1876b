#pragma once

// Cohomology tables over a window of twists, the finite sets T_{E,+/-}, and
// the certificate that a searched monad has natural cohomology.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "natcoh/monad.hpp"
#include "natcoh/search.hpp"

namespace natcoh {

/// Rectangle [a0, a1] x [b0, b1] of twists.
struct Window {
    int a0 = -6;
    int a1 = 6;
    int b0 = -6;
    int b1 = 6;

    bool contains(Bidegree t) const { return t.a >= a0 && t.a <= a1 && t.b >= b0 && t.b <= b1; }
    friend bool operator==(const Window&, const Window&) = default;
};

/// Parses "a0:a1:b0:b1".
Window parse_window(const std::string& text);
std::string to_string(const Window& w);

enum class CohFlag { natural, zero, violation };
std::string to_string(CohFlag f);

struct CohTable {
    Window window;
    std::map<Bidegree, CohDims> entries;
    std::map<Bidegree, CohFlag> flags;

    bool all_natural() const;
    std::optional<Bidegree> first_violation() const;
    /// Twists sorted by b descending, then a ascending.
    std::vector<Bidegree> display_order() const;
};

CohFlag classify(const CohDims& h);

/// Throws MixedMonadCohomology naming the offending twist.
CohTable coh_table(const Monad& m, const Window& w, std::uint64_t prime = kDefaultPrime);

struct TSets {
    std::set<Bidegree> plus;
    std::set<Bidegree> minus;
};

/// Brute force over [1,bound]^2 and [-bound,-1]^2; bound < 0 means ceil(gamma) + 2.
TSets t_sets(const HilbertParams& p, int bound = -1);

struct TwistCheck {
    Bidegree twist;
    /// Why the twist is checked: "axis", "(1,1)", "dual (2,2)", "T+", "T-".
    std::string role;
    CohDims dims;
    long long chi = 0;
    bool pass = false;
    std::string detail;
};

struct Certificate {
    std::string digest;
    ConditionReport conditions;
    std::vector<TwistCheck> twist_checks;
    TSets t_sets;
    Window window;
    bool window_checked = false;
    bool window_pass = false;
    std::string window_detail;
    bool pass = false;
    std::vector<std::string> failures;
};

/// 16 hex digits of FNV-1a over the canonical text of the monad.
std::string monad_digest(const Monad& m);

/// Runs every search condition, checks naturality at the axes, (1,1), the
/// Serre-dual (2,2) twist (-2,-2) and every member of T_{E,+/-}, and then
/// cross-validates the whole window against coh_table.
Certificate theorem_certify(const Monad& m, const HilbertParams& p, const SearchConfig& cfg = {},
                            const Window& window = {});

enum class Axis { first, second };

struct SplitType {
    long long s = 0;
    long long t = 0;
};

/// (s, t) = (r*gamma, r*n - r*gamma) for the row E(., n) (axis first) or the
/// column E(n, .) (axis second), verified against every window entry of that
/// row under the O(-2)^s + O(-1)^t model. Throws SplitTypeMismatch.
SplitType pushforward_split_type(const CohTable& table, const HilbertParams& p, Axis axis, int n);
SplitType pushforward_split_type(const Monad& m, const HilbertParams& p, Axis axis, int n, const Window& window = {},
                                 std::uint64_t prime = kDefaultPrime);

}  // namespace natcoh
