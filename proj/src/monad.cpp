#include "natcoh/monad.hpp"

#include <algorithm>

namespace natcoh {

void HilbertParams::validate() const
{
    if (r < 1) throw InvalidParameters("rank multiple must be positive, got " + std::to_string(r));
    if (gamma <= 0) throw InvalidParameters("gamma must be positive, got " + gamma.get_str());
    const Rational rg = r * gamma;
    if (rg.get_den() != 1)
        throw InvalidParameters("r*gamma = " + rg.get_str() + " is not an integer for r = " + std::to_string(r));
}

Monad::Monad(LineBundleSum a, LineBundleSum b, LineBundleSum c, SheafMap f, SheafMap g)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), f_(std::move(f)), g_(std::move(g))
{
    if (f_.source() != a_ || f_.target() != b_) throw ShapeMismatch("f must map A to B");
    if (g_.source() != b_ || g_.target() != c_) throw ShapeMismatch("g must map B to C");
    complex_ = compose(g_, f_).is_zero();
}

Monad twist(const Monad& m, Bidegree t)
{
    return Monad(m.A().twisted(t), m.B().twisted(t), m.C().twisted(t), m.f().twisted(t), m.g().twisted(t));
}

Monad serre_dual(const Monad& m)
{
    return Monad(m.C().serre_dual(), m.B().serre_dual(), m.A().serre_dual(), m.g().serre_dual(), m.f().serre_dual());
}

namespace {

long long line_chi(Bidegree d)
{
    return static_cast<long long>(d.a + 1) * static_cast<long long>(d.b + 1);
}

long long sum_chi(const LineBundleSum& s, Bidegree t)
{
    long long total = 0;
    for (const auto& d : s.summands) total += line_chi(d + t);
    return total;
}

}  // namespace

long long euler_char(const Monad& m, Bidegree t)
{
    return sum_chi(m.B(), t) - sum_chi(m.A(), t) - sum_chi(m.C(), t);
}

std::set<int> monad_coh_degrees(const Monad& m, Bidegree t)
{
    std::set<int> out;
    for (int i = 0; i <= 2; ++i)
        for (const auto* term : {&m.A(), &m.B(), &m.C()})
            if (coh_dim(i, term->twisted(t)) != 0) out.insert(i);
    return out;
}

std::string to_string(const CohDims& h)
{
    return "(" + std::to_string(h.h0) + "," + std::to_string(h.h1) + "," + std::to_string(h.h2) + ")";
}

MonadRanks monad_ranks(const Monad& m, int i, Bidegree t, std::uint64_t prime)
{
    if (!m.is_complex()) throw NotAComplex("g o f is not zero");
    MonadRanks out;
    out.degree = i;
    out.dim_a = coh_dim(i, m.A().twisted(t));
    out.dim_b = coh_dim(i, m.B().twisted(t));
    out.dim_c = coh_dim(i, m.C().twisted(t));
    if (out.dim_a > 0 && out.dim_b > 0) {
        const auto hf = induced_map(m.f(), i, t);
        out.rank_f = static_cast<long long>(certified_rank(hf.matrix, static_cast<std::size_t>(std::min(out.dim_a, out.dim_b)), prime));
    }
    if (out.dim_b > 0 && out.dim_c > 0) {
        const auto hg = induced_map(m.g(), i, t);
        // im H^i(f) lies in ker H^i(g) because g o f = 0.
        const long long bound = std::min(out.dim_c, out.dim_b - out.rank_f);
        out.rank_g = static_cast<long long>(certified_rank(hg.matrix, static_cast<std::size_t>(bound), prime));
    }
    return out;
}

CohDims bundle_coh(const Monad& m, Bidegree t, std::uint64_t prime)
{
    const auto degrees = monad_coh_degrees(m, t);
    if (degrees.size() > 1)
        throw MixedMonadCohomology("monad has cohomology in several degrees at twist " + to_string(t));
    if (degrees.empty()) return {};
    const int i = *degrees.begin();
    const MonadRanks k = monad_ranks(m, i, t, prime);
    const long long ker_g = k.dim_b - k.rank_g;
    switch (i) {
    case 0: return {ker_g - k.rank_f, k.dim_c - k.rank_g, 0};
    case 1: return {k.dim_a - k.rank_f, ker_g - k.rank_f, k.dim_c - k.rank_g};
    default: return {0, k.dim_a - k.rank_f, ker_g - k.rank_f};
    }
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::probable: return "probable";
    default: return "failed";
    }
}

Verdict parse_verdict(const std::string& s)
{
    if (s == "certified") return Verdict::certified;
    if (s == "probable") return Verdict::probable;
    if (s == "failed") return Verdict::failed;
    throw ParseError("unknown verdict '" + s + "'");
}

namespace {

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
}

std::uint64_t powmod(std::uint64_t b, long e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
    }
    return r;
}

std::uint64_t evaluate(const BiPoly& poly, const std::array<std::uint64_t, 4>& pt, std::uint64_t p)
{
    std::uint64_t acc = 0;
    for (const auto& [m, c] : poly.terms()) {
        std::uint64_t v = reduce_mod(c, p);
        v = mulmod(v, powmod(pt[0], m.za, p), p);
        v = mulmod(v, powmod(pt[1], m.zb, p), p);
        v = mulmod(v, powmod(pt[2], m.wa, p), p);
        v = mulmod(v, powmod(pt[3], m.wb, p), p);
        acc = (acc + v) % p;
    }
    return acc;
}

std::array<std::uint64_t, 2> random_p1_point(Rng& rng, std::uint64_t p)
{
    for (;;) {
        const auto x = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p - 1)));
        const auto y = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p - 1)));
        if (x != 0 || y != 0) return {x, y};
    }
}

// Zeros of the nonzero entries that are linear forms in one factor only. A
// square map like l*I drops rank exactly there, which random points miss.
std::vector<std::array<std::uint64_t, 4>> linear_entry_zeros(const SheafMap& g, Rng& rng, std::uint64_t p)
{
    std::set<std::array<std::uint64_t, 2>> z_roots;
    std::set<std::array<std::uint64_t, 2>> w_roots;
    for (const auto& e : g.entries()) {
        if (e.is_zero()) continue;
        const Bidegree d = e.bidegree();
        if (d == Bidegree{1, 0}) {
            const auto c0 = reduce_mod(e.coefficient({1, 0, 0, 0}), p);
            const auto c1 = reduce_mod(e.coefficient({0, 1, 0, 0}), p);
            if (c0 != 0 || c1 != 0) z_roots.insert({(p - c1) % p, c0});
        } else if (d == Bidegree{0, 1}) {
            const auto c0 = reduce_mod(e.coefficient({0, 0, 1, 0}), p);
            const auto c1 = reduce_mod(e.coefficient({0, 0, 0, 1}), p);
            if (c0 != 0 || c1 != 0) w_roots.insert({(p - c1) % p, c0});
        }
    }
    std::vector<std::array<std::uint64_t, 4>> out;
    for (const auto& z : z_roots) {
        const auto w = random_p1_point(rng, p);
        out.push_back({z[0], z[1], w[0], w[1]});
    }
    for (const auto& w : w_roots) {
        const auto z = random_p1_point(rng, p);
        out.push_back({z[0], z[1], w[0], w[1]});
    }
    return out;
}

}  // namespace

SurjectivityCertificate certify_surjective(const SheafMap& g, const SurjectivityConfig& config)
{
    SurjectivityCertificate cert;
    cert.window = config.window;
    cert.prime = config.prime;
    const std::size_t required = g.rows();
    if (required == 0) {
        cert.verdict = Verdict::certified;
        cert.reason = "target is zero";
        return cert;
    }
    if (g.cols() < required) {
        cert.verdict = Verdict::failed;
        cert.reason = "fewer source summands than target summands";
        return cert;
    }

    const std::uint64_t p = config.prime;
    Rng rng = Rng::derive(config.seed, 0x66696265ULL);
    std::vector<std::array<std::uint64_t, 4>> points;
    for (int s = 0; s < config.fiber_samples; ++s) {
        const auto z = random_p1_point(rng, p);
        const auto w = random_p1_point(rng, p);
        points.push_back({z[0], z[1], w[0], w[1]});
    }
    const auto special = linear_entry_zeros(g, rng, p);
    points.insert(points.end(), special.begin(), special.end());

    bool fibers_ok = true;
    for (const auto& pt : points) {
        ModMatrix fiber(g.rows(), g.cols(), p);
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) fiber.set(i, j, evaluate(g(i, j), pt, p));
        const std::size_t rk = fiber.rank();
        cert.fiber_checks.push_back({pt, rk, required});
        if (rk < required) fibers_ok = false;
    }
    if (!fibers_ok) {
        cert.verdict = Verdict::failed;
        cert.reason = "fiber rank drops";
        return cert;
    }

    // H^0(g(t)) onto a globally generated C(t) forces g to be onto as a sheaf map.
    Bidegree base{0, 0};
    for (const auto& d : g.target().summands) {
        base.a = std::max(base.a, -d.a);
        base.b = std::max(base.b, -d.b);
    }
    cert.verdict = Verdict::probable;
    cert.reason = "no twist in the window with surjective H^0";
    for (int k = 0; k <= config.window; ++k) {
        const Bidegree t = base + Bidegree{k, k};
        const auto h = induced_map(g, 0, t);
        const auto rows = h.matrix.rows();
        const long long coker = static_cast<long long>(rows - certified_rank(h.matrix, rows, p));
        cert.window_checks.push_back({t, coker});
        if (coker == 0) {
            cert.verdict = Verdict::certified;
            cert.reason = "H^0 surjective at " + to_string(t);
            break;
        }
    }
    return cert;
}

SurjectivityCertificate certify_injective(const SheafMap& f, const SurjectivityConfig& config)
{
    return certify_surjective(f.dual(), config);
}

int default_surjectivity_window(const HilbertParams& p)
{
    const Rational rg = p.r * p.gamma;
    Integer c = rg.get_num() / rg.get_den();
    if (c * rg.get_den() != rg.get_num()) c += 1;
    return static_cast<int>(c.get_si()) + 2;
}

}  // namespace natcoh
