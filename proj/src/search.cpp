#include "natcoh/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace natcoh {

bool ConditionReport::passed() const
{
    if (records.empty()) return false;
    return std::all_of(records.begin(), records.end(), [](const ConditionRecord& r) { return r.pass; });
}

const ConditionRecord* ConditionReport::find(const std::string& name) const
{
    for (const auto& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

const ConditionRecord* ConditionReport::first_failure() const
{
    for (const auto& r : records)
        if (!r.pass) return &r;
    return nullptr;
}

namespace {

long long to_ll(const Rational& q)
{
    if (q.get_den() != 1) throw InvalidParameters("expected an integer, got " + q.get_str());
    return q.get_num().get_si();
}

long long n_of(const HilbertParams& p)
{
    return to_ll(p.r * p.gamma);
}

}  // namespace

int minimal_rank_multiple(const Rational& gamma)
{
    if (gamma <= 0) throw InvalidParameters("gamma must be positive, got " + gamma.get_str());
    const long den = gamma.get_den().get_si();
    int r = static_cast<int>(den);
    // A rank-one E would be a line bundle, whose chi never has the form xy - gamma.
    if (r == 1) r = 2;
    return r;
}

LineBundleSum monad_term_a(const HilbertParams& p)
{
    if (p.gamma <= 1) return {};
    return LineBundleSum::repeated({-1, -1}, static_cast<int>(n_of(p) - p.r));
}

LineBundleSum monad_term_b(const HilbertParams& p)
{
    const int n = static_cast<int>(n_of(p));
    LineBundleSum b = LineBundleSum::repeated({0, -1}, n);
    b.append(LineBundleSum::repeated({-1, 0}, n));
    if (p.gamma < 1) b.append(LineBundleSum::repeated({-1, -1}, p.r - n));
    return b;
}

LineBundleSum monad_term_c(const HilbertParams& p)
{
    return LineBundleSum::repeated({0, 0}, static_cast<int>(n_of(p)));
}

MapSpace::MapSpace(LineBundleSum source, LineBundleSum target) : source_(std::move(source)), target_(std::move(target))
{
    for (std::size_t i = 0; i < target_.size(); ++i)
        for (std::size_t j = 0; j < source_.size(); ++j)
            for (const auto& m : monomial_basis(target_[i] - source_[j])) coords_.push_back({i * source_.size() + j, m});
}

SheafMap MapSpace::from_coordinates(const std::vector<Rational>& x) const
{
    if (x.size() != coords_.size()) throw ShapeMismatch("coordinate vector has the wrong length");
    std::vector<BiPoly> entries;
    entries.reserve(target_.size() * source_.size());
    for (std::size_t i = 0; i < target_.size(); ++i)
        for (std::size_t j = 0; j < source_.size(); ++j) {
            const Bidegree d = target_[i] - source_[j];
            entries.emplace_back(d.nonnegative() ? d : Bidegree{});
        }
    for (std::size_t u = 0; u < coords_.size(); ++u)
        if (x[u] != 0) entries[coords_[u].first].add_term(coords_[u].second, x[u]);
    return SheafMap(source_, target_, std::move(entries));
}

std::vector<Rational> MapSpace::coordinates(const SheafMap& phi) const
{
    if (phi.source() != source_ || phi.target() != target_) throw ShapeMismatch("map is not in this space");
    std::vector<Rational> x;
    x.reserve(coords_.size());
    for (const auto& [e, m] : coords_) x.push_back(phi.entries()[e].coefficient(m));
    return x;
}

SheafMap MapSpace::unit(std::size_t u) const
{
    std::vector<Rational> x(coords_.size());
    x.at(u) = 1;
    return from_coordinates(x);
}

bool columns_balanced(const SheafMap& f)
{
    for (std::size_t j = 0; j < f.cols(); ++j) {
        bool has_z = false;
        bool has_w = false;
        for (std::size_t i = 0; i < f.rows(); ++i) {
            const BiPoly& e = f(i, j);
            if (e.is_zero()) continue;
            if (e.bidegree() == Bidegree{1, 0}) has_z = true;
            if (e.bidegree() == Bidegree{0, 1}) has_w = true;
        }
        if (!has_z || !has_w) return false;
    }
    return true;
}

bool columns_independent(const SheafMap& f, std::uint64_t prime)
{
    // Columns are sections of target(1,1) once the source is O(-1,-1)^m.
    const auto h = induced_map(f, 0, {1, 1});
    if (h.matrix.cols() != f.cols()) return false;
    return certified_rank(h.matrix, std::min(h.matrix.rows(), h.matrix.cols()), prime) == f.cols();
}

namespace {

SheafMap random_map(const LineBundleSum& source, const LineBundleSum& target, int height, Rng& rng)
{
    std::vector<BiPoly> entries;
    for (std::size_t i = 0; i < target.size(); ++i)
        for (std::size_t j = 0; j < source.size(); ++j) {
            const Bidegree d = target[i] - source[j];
            entries.push_back(d.nonnegative() ? random_bipoly(d, height, rng) : BiPoly());
        }
    return SheafMap(source, target, std::move(entries));
}

}  // namespace

SheafMap random_balanced_map(const LineBundleSum& source, const LineBundleSum& target, const SearchConfig& cfg,
                             Rng& rng)
{
    for (int k = 0; k < cfg.max_retries; ++k) {
        SheafMap f = random_map(source, target, cfg.height, rng);
        if (columns_balanced(f) && columns_independent(f, cfg.prime)) return f;
    }
    throw RetriesExhausted("no balanced independent columns after " + std::to_string(cfg.max_retries) + " draws",
                           {});
}

SheafMap random_balanced_f(const HilbertParams& p, const SearchConfig& cfg)
{
    p.validate();
    if (p.gamma <= 1) throw InvalidParameters("random_balanced_f needs gamma > 1");
    Rng rng = Rng::derive(cfg.seed, 0);
    return random_balanced_map(monad_term_a(p), monad_term_b(p), cfg, rng);
}

AnnihilatorSpace build_L(const SheafMap& f, const LineBundleSum& c)
{
    const LineBundleSum& a = f.source();
    const LineBundleSum& b = f.target();
    MapSpace space(b, c);

    // Row blocks of the system: (column i of f, row k of g), each indexed by
    // the monomials of bidegree C[k] - A[i].
    std::vector<std::size_t> block(a.size() * c.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::size_t idx = i * c.size() + k;
            block[idx + 1] = block[idx] + monomial_basis(c[k] - a[i]).size();
        }

    ExactMatrix cond(block.back(), space.dimension());
    std::size_t u = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t j = 0; j < b.size(); ++j)
            for (const auto& mu : monomial_basis(c[k] - b[j])) {
                // Unit map with monomial mu at entry (k, j) composed with f.
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (const auto& [nu, coeff] : f(j, i).terms()) {
                        const auto row = coh_basis_index(0, c[k] - a[i], mu * nu);
                        if (row) cond(block[i * c.size() + k] + *row, u) += coeff;
                    }
                ++u;
            }

    AnnihilatorSpace out{space, std::move(cond), {}, {}};
    out.basis_coordinates = nullspace(out.conditions);
    for (const auto& x : out.basis_coordinates) out.basis.push_back(space.from_coordinates(x));
    return out;
}

AnnihilatorSpace build_L(const SheafMap& f)
{
    return build_L(f, LineBundleSum::repeated({0, 0}, static_cast<int>(f.target().size() / 2)));
}

SheafMap random_point(const AnnihilatorSpace& L, int height, Rng& rng)
{
    if (L.basis.empty()) throw InvalidParameters("the linear space is zero");
    std::vector<Integer> c(L.basis.size());
    bool nonzero = false;
    while (!nonzero) {
        for (auto& x : c) {
            x = static_cast<long>(rng.uniform(-height, height));
            if (x != 0) nonzero = true;
        }
    }
    std::vector<Rational> x(L.space.dimension());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        for (std::size_t u = 0; u < x.size(); ++u) x[u] += Rational(c[k]) * L.basis_coordinates[k][u];
    }
    return L.space.from_coordinates(primitive_integer(std::move(x)));
}

namespace {

using Dims = std::vector<std::pair<std::string, long long>>;

void add(ConditionReport& rep, std::string name, std::optional<Bidegree> twist, Dims required, Dims observed,
         std::string detail = {})
{
    ConditionRecord r{std::move(name), twist, std::move(required), std::move(observed), false, std::move(detail)};
    r.pass = true;
    for (const auto& [key, value] : r.required) {
        const auto it = std::find_if(r.observed.begin(), r.observed.end(), [&](const auto& o) { return o.first == key; });
        if (it == r.observed.end() || it->second != value) r.pass = false;
    }
    rep.records.push_back(std::move(r));
}

long long exact_rank(const ExactMatrix& m, std::uint64_t prime)
{
    return static_cast<long long>(certified_rank(m, std::min(m.rows(), m.cols()), prime));
}

// H^i(phi(t)) is injective: records rank against the source dimension.
void injectivity(ConditionReport& rep, const std::string& name, const SheafMap& phi, int i, Bidegree t,
                 std::uint64_t prime)
{
    const auto h = induced_map(phi, i, t);
    const long long cols = static_cast<long long>(h.matrix.cols());
    const long long rk = exact_rank(h.matrix, prime);
    add(rep, name, t, {{"ker", 0}}, {{"ker", cols - rk}, {"rank", rk}, {"source", cols}});
}

void bundle_map(ConditionReport& rep, const std::string& name, const std::string& key,
                const SurjectivityCertificate& cert)
{
    long long min_rank = -1;
    long long required = 0;
    for (const auto& fc : cert.fiber_checks) {
        required = static_cast<long long>(fc.required);
        const auto rk = static_cast<long long>(fc.rank);
        if (min_rank < 0 || rk < min_rank) min_rank = rk;
    }
    ConditionRecord r;
    r.name = name;
    r.required = {{"certified", 1}};
    r.observed = {{"certified", cert.verdict == Verdict::certified ? 1 : 0},
                  {"fiber_points", static_cast<long long>(cert.fiber_checks.size())},
                  {"min_fiber_rank", min_rank},
                  {"fiber_rank_required", required}};
    r.pass = cert.verdict == Verdict::certified;
    r.detail = to_string(cert.verdict) + ": " + cert.reason;
    rep.records.push_back(std::move(r));
    rep.bundle_maps.push_back({key, cert});
}

}  // namespace

ConditionReport check_conditions(const Monad& m, const HilbertParams& p, const SearchConfig& cfg)
{
    ConditionReport rep;
    const std::uint64_t prime = cfg.prime;
    const SheafMap gf = compose(m.g(), m.f());
    long long nonzero = 0;
    for (const auto& e : gf.entries()) nonzero += e.is_zero() ? 0 : 1;
    add(rep, "complex", std::nullopt, {{"nonzero_entries_of_g_o_f", 0}}, {{"nonzero_entries_of_g_o_f", nonzero}});
    if (nonzero != 0) return rep;

    const auto sc = cfg.surjectivity(p);
    const bool kernel_case = m.A().empty();
    const long long n = static_cast<long long>(m.C().size());

    bundle_map(rep, "V0_g_surjective", "g_surjective", certify_surjective(m.g(), sc));
    if (!kernel_case) {
        bundle_map(rep, "W0_f_injective", "f_injective", certify_injective(m.f(), sc));

        const auto L = build_L(m.f(), m.C());
        const Rational lower = 4 * p.r * p.r * p.gamma;
        const long long bound = to_ll(lower);
        const long long dim_l = static_cast<long long>(L.dimension());
        ConditionRecord r{"linear_space_L",
                          std::nullopt,
                          {{"dim_L_min", bound}},
                          {{"dim_V", static_cast<long long>(L.space.dimension())},
                           {"conditions", static_cast<long long>(L.conditions.rows())},
                           {"dim_L", dim_l}},
                          dim_l >= bound,
                          {}};
        rep.records.push_back(std::move(r));

        const auto k = monad_ranks(m, 0, {1, 1}, prime);
        const long long want = static_cast<long long>(m.A().size());
        add(rep, "H0_11_im_ker_coker", Bidegree{1, 1}, {{"im_f", want}, {"ker_g", want}, {"coker_g", want}},
            {{"im_f", k.rank_f}, {"ker_g", k.dim_b - k.rank_g}, {"coker_g", k.dim_c - k.rank_g}});

        const Monad d = serre_dual(m);
        const auto kd = monad_ranks(d, 0, {2, 2}, prime);
        const Dims observed{{"im_g_star", kd.rank_f},
                            {"ker_f_star", kd.dim_b - kd.rank_g},
                            {"coker_f_star", kd.dim_c - kd.rank_g}};
        if (p.gamma <= 4)
            add(rep, "dual_H0_22_surjective", Bidegree{2, 2}, {{"coker_f_star", 0}}, observed);
        else
            add(rep, "dual_H0_22_im_ker", Bidegree{2, 2}, {{"im_g_star", n}, {"ker_f_star", n}}, observed);
    } else {
        const auto h = induced_map(m.g(), 0, {1, 1});
        const long long rows = static_cast<long long>(h.matrix.rows());
        const long long rk = exact_rank(h.matrix, prime);
        add(rep, "H0_11_surjective", Bidegree{1, 1}, {{"coker_g", 0}}, {{"coker_g", rows - rk}, {"rank", rk}});
    }

    injectivity(rep, "axis_H0_g_10_injective", m.g(), 0, {1, 0}, prime);
    injectivity(rep, "axis_H0_g_01_injective", m.g(), 0, {0, 1}, prime);
    const SheafMap g_star = m.g().serre_dual();
    injectivity(rep, "dual_axis_H1_g_star_02_injective", g_star, 1, {0, 2}, prime);
    injectivity(rep, "dual_axis_H1_g_star_20_injective", g_star, 1, {2, 0}, prime);
    return rep;
}

ConditionReport check_conditions(const SheafMap& f, const SheafMap& g, const HilbertParams& p,
                                 const SearchConfig& cfg)
{
    return check_conditions(Monad(f.source(), f.target(), g.target(), f, g), p, cfg);
}

namespace {

// Number of balanced vectors imposed on the dual side when gamma > 4.
long long dual_kernel_vectors(const HilbertParams& p)
{
    return n_of(p) - 4LL * p.r;
}

SheafMap dual_side_f(const HilbertParams& p, const SearchConfig& cfg, Rng& rng)
{
    // Serre dual monad twisted by (1,1): O(-1,-1)^n -> O(-1,0)^n + O(0,-1)^n -> O^m.
    const Bidegree one{1, 1};
    const LineBundleSum b_dual = monad_term_b(p).serre_dual().twisted(one);
    const LineBundleSum c_dual = monad_term_a(p).serre_dual().twisted(one);
    const LineBundleSum x_source = LineBundleSum::repeated({-1, -1}, static_cast<int>(dual_kernel_vectors(p)));
    const SheafMap x = random_balanced_map(x_source, b_dual, cfg, rng);
    const auto L = build_L(x, c_dual);
    const SheafMap f_star = random_point(L, cfg.height, rng).twisted({-1, -1});
    return f_star.serre_dual();
}

std::string attempt_failure(const ConditionReport& rep)
{
    const auto* bad = rep.first_failure();
    return bad ? bad->name : std::string("none");
}

}  // namespace

SearchResult search_monad(const HilbertParams& p, const SearchConfig& cfg)
{
    p.validate();
    if (p.gamma <= 1) throw InvalidParameters("search_monad needs gamma > 1");
    const LineBundleSum a = monad_term_a(p);
    const LineBundleSum b = monad_term_b(p);
    const LineBundleSum c = monad_term_c(p);

    ConditionReport last;
    std::string why = "no attempts";
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(attempt));
        SheafMap f;
        try {
            f = p.gamma > 4 ? dual_side_f(p, cfg, rng) : random_balanced_map(a, b, cfg, rng);
        } catch (const RetriesExhausted& e) {
            why = e.what();
            continue;
        }
        if (!columns_balanced(f) || !columns_independent(f, cfg.prime)) {
            why = "f columns not balanced and independent";
            continue;
        }
        const auto L = build_L(f, c);
        if (L.dimension() == 0) {
            why = "L is zero";
            continue;
        }
        const SheafMap g = random_point(L, cfg.height, rng);
        Monad m(a, b, c, f, g);
        ConditionReport rep = check_conditions(m, p, cfg);
        rep.attempt = attempt;
        if (rep.passed()) return {std::move(m), std::move(rep)};
        why = "condition " + attempt_failure(rep) + " failed";
        last = std::move(rep);
    }
    throw RetriesExhausted("search exhausted " + std::to_string(cfg.max_retries) + " attempts; last: " + why,
                           std::move(last));
}

SearchResult search_kernel_bundle(const HilbertParams& p, const SearchConfig& cfg)
{
    p.validate();
    if (p.gamma > 1) throw InvalidParameters("search_kernel_bundle needs gamma <= 1");
    if (p.r < 2) throw InvalidParameters("the kernel construction needs r >= 2");
    const LineBundleSum b = monad_term_b(p);
    const LineBundleSum c = monad_term_c(p);

    ConditionReport last;
    std::string why = "no attempts";
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(attempt));
        const SheafMap g = random_map(b, c, cfg.height, rng);
        Monad m({}, b, c, SheafMap({}, b), g);
        ConditionReport rep = check_conditions(m, p, cfg);
        rep.attempt = attempt;
        if (rep.passed()) return {std::move(m), std::move(rep)};
        why = "condition " + attempt_failure(rep) + " failed";
        last = std::move(rep);
    }
    throw RetriesExhausted("search exhausted " + std::to_string(cfg.max_retries) + " attempts; last: " + why,
                           std::move(last));
}

SearchResult search(const HilbertParams& p, const SearchConfig& cfg)
{
    return p.gamma > 1 ? search_monad(p, cfg) : search_kernel_bundle(p, cfg);
}

std::string to_string(Term t)
{
    switch (t) {
    case Term::A: return "A";
    case Term::B: return "B";
    default: return "C";
    }
}

namespace {

struct Corner {
    Bidegree bundle;
    int sign;
};

// Block order of B: O(0,-1), O(-1,0), O(-1,-1), O.
constexpr std::array<Corner, 4> kCorners{{{{0, -1}, -1}, {{-1, 0}, -1}, {{-1, -1}, 1}, {{0, 0}, 1}}};

std::optional<MonadShape> shape_at(const HilbertParams& p, Bidegree shift)
{
    std::array<Rational, 4> value;
    for (std::size_t c = 0; c < 4; ++c) {
        const Bidegree d = kCorners[c].bundle + shift;
        value[c] = kCorners[c].sign * p.poly(d.a, d.b);
    }
    if (value[0] < 0 || value[1] < 0) return std::nullopt;
    if (value[2] >= 0 && value[3] >= 0) return std::nullopt;

    Integer k = 1;
    for (const auto& v : value) {
        const Integer den = v.get_den();
        k = lcm(k, Integer(den / gcd(den, Integer(p.r))));
    }
    MonadShape s;
    s.shift = shift;
    s.r = static_cast<int>(Integer(k * p.r).get_si());
    for (std::size_t c = 0; c < 4; ++c) {
        const long long e = to_ll(value[c] * s.r);
        ShapeEntry entry{kCorners[c].bundle, Term::B, e};
        if (e < 0) {
            entry.term = kCorners[c].bundle == Bidegree{0, 0} ? Term::C : Term::A;
            entry.exponent = -e;
        }
        s.entries[c] = entry;
    }
    const Bidegree back = -shift;
    for (const auto& e : s.entries) {
        const auto block = LineBundleSum::repeated(e.bundle + back, static_cast<int>(e.exponent));
        (e.term == Term::A ? s.A : e.term == Term::B ? s.B : s.C).append(block);
    }
    s.kind = s.A.empty() ? "kernel" : (s.C.empty() ? "cokernel" : "monad");
    return s;
}

}  // namespace

MonadShape monad_shape(const HilbertParams& p, int shift_bound)
{
    if (p.gamma <= 0) throw InvalidParameters("gamma must be positive, got " + p.gamma.get_str());
    if (p.r < 1) throw InvalidParameters("rank multiple must be positive");
    std::vector<Bidegree> shifts;
    for (int s = -shift_bound; s <= shift_bound; ++s)
        for (int t = -shift_bound; t <= shift_bound; ++t) shifts.push_back({s, t});
    std::stable_sort(shifts.begin(), shifts.end(), [](Bidegree x, Bidegree y) {
        return std::make_tuple(std::abs(x.a) + std::abs(x.b), -x.a, -x.b) <
               std::make_tuple(std::abs(y.a) + std::abs(y.b), -y.a, -y.b);
    });
    for (const auto& sh : shifts)
        if (auto s = shape_at(p, sh)) return *s;
    throw NoValidShapeWithinShiftBound("no valid monad shape for shifts within " + std::to_string(shift_bound));
}

}  // namespace natcoh
