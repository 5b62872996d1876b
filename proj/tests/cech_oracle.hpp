#pragma once

// Brute-force cohomology of O(a,b) on P1 x P1 straight from the Cech complex
// of the cover U_pq = {z_p != 0, w_q != 0}. Every Laurent monomial spans its
// own subcomplex: the faces S of the 3-simplex on the four opens such that the
// monomial is regular on the intersection U_S. Nothing here uses the closed
// formulas of the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "natcoh/bigraded.hpp"
#include "natcoh/cohomology.hpp"
#include "natcoh/sheaf_map.hpp"

namespace oracle {

using Q = mpq_class;
using natcoh::Bidegree;
using natcoh::Monomial;

inline constexpr int kBox = 14;

// Opens are numbered o = 2p + q and invert z_p and w_q.
inline bool regular_on(const Monomial& m, unsigned face)
{
    bool z_inv[2] = {false, false};
    bool w_inv[2] = {false, false};
    for (int o = 0; o < 4; ++o)
        if (face & (1u << o)) {
            z_inv[o / 2] = true;
            w_inv[o % 2] = true;
        }
    return (m.za >= 0 || z_inv[0]) && (m.zb >= 0 || z_inv[1]) && (m.wa >= 0 || w_inv[0]) && (m.wb >= 0 || w_inv[1]);
}

struct Complex {
    // faces[k] = supported faces with k+1 opens, in increasing bitmask order.
    std::array<std::vector<unsigned>, 4> faces;
    // d[k] : C^k -> C^{k+1}, rows indexed by faces[k+1].
    std::array<std::vector<std::vector<Q>>, 3> d;
};

inline Complex build_complex(const Monomial& m)
{
    Complex c;
    for (unsigned face = 1; face < 16; ++face)
        if (regular_on(m, face)) c.faces[__builtin_popcount(face) - 1].push_back(face);
    for (int k = 0; k < 3; ++k) {
        auto& dk = c.d[k];
        dk.assign(c.faces[k + 1].size(), std::vector<Q>(c.faces[k].size()));
        for (std::size_t r = 0; r < c.faces[k + 1].size(); ++r) {
            const unsigned big = c.faces[k + 1][r];
            int j = 0;
            for (int o = 0; o < 4; ++o) {
                if (!(big & (1u << o))) continue;
                const unsigned small = big & ~(1u << o);
                for (std::size_t s = 0; s < c.faces[k].size(); ++s)
                    if (c.faces[k][s] == small) dk[r][s] = (j % 2 == 0) ? 1 : -1;
                ++j;
            }
        }
    }
    return c;
}

// Row echelon by plain Gaussian elimination; returns rank.
inline std::size_t naive_rank(std::vector<std::vector<Q>> a)
{
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const Q f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline unsigned support_mask(const Monomial& m)
{
    unsigned mask = 0;
    for (unsigned face = 1; face < 16; ++face)
        if (regular_on(m, face)) mask |= 1u << face;
    return mask;
}

// Cech degree k counts faces with k+1 opens; H^k for k = 0..3. The complex
// only depends on the support, so results are cached per support mask.
inline long long monomial_h(const Monomial& m, int i)
{
    if (i < 0 || i > 3) return 0;
    static std::map<unsigned, std::array<long long, 4>> cache;
    const unsigned mask = support_mask(m);
    auto it = cache.find(mask);
    if (it == cache.end()) {
        const Complex c = build_complex(m);
        std::array<long long, 4> h{};
        for (int k = 0; k < 4; ++k) {
            const long long dim = static_cast<long long>(c.faces[k].size());
            const long long out = k < 3 ? static_cast<long long>(naive_rank(c.d[k])) : 0;
            const long long in = k > 0 ? static_cast<long long>(naive_rank(c.d[k - 1])) : 0;
            h[k] = dim - out - in;
        }
        it = cache.emplace(mask, h).first;
    }
    return it->second[i];
}

// All Laurent monomials of bidegree d in the box, in (za, wa) descending order.
inline std::vector<Monomial> box_monomials(Bidegree d)
{
    std::vector<Monomial> out;
    for (int za = kBox; za >= -kBox; --za)
        for (int wa = kBox; wa >= -kBox; --wa) {
            const Monomial m{za, d.a - za, wa, d.b - wa};
            if (m.zb < -kBox || m.zb > kBox || m.wb < -kBox || m.wb > kBox) continue;
            out.push_back(m);
        }
    return out;
}

inline long long h(int i, Bidegree d)
{
    long long total = 0;
    for (const auto& m : box_monomials(d)) total += monomial_h(m, i);
    return total;
}

// Monomials carrying H^i(O(d)).
inline std::vector<Monomial> h_monomials(int i, Bidegree d)
{
    std::vector<Monomial> out;
    for (const auto& m : box_monomials(d))
        if (monomial_h(m, i) > 0) out.push_back(m);
    return out;
}

// Solves a x = b for some x (least-index pivots); nullopt if inconsistent.
inline std::optional<std::vector<Q>> solve(std::vector<std::vector<Q>> a, std::vector<Q> b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        std::swap(b[p], b[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const Q f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;
    std::vector<Q> x(cols);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return x;
}

// Kernel basis of a (rows x n) matrix by reduced row echelon form.
inline std::vector<std::vector<Q>> kernel(std::vector<std::vector<Q>> a, std::size_t n)
{
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        const Q lead = a[rank][c];
        for (auto& x : a[rank]) x /= lead;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const Q f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[rank][k];
        }
        pivots.push_back(c);
        ++rank;
    }
    std::vector<std::vector<Q>> out;
    for (std::size_t free = 0; free < n; ++free) {
        bool is_pivot = false;
        for (auto p : pivots) is_pivot = is_pivot || p == free;
        if (is_pivot) continue;
        std::vector<Q> v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        out.push_back(v);
    }
    return out;
}

// A cocycle representing the generator of the (one-dimensional) H^i of the
// monomial's complex: the first kernel vector of d_i outside the image of
// d_{i-1}. It depends on the face set only, so monomials with the same
// support share the generator.
inline std::vector<Q> generator(const Complex& c, int i)
{
    const std::size_t n = c.faces[i].size();
    const auto cocycles = i < 3 ? kernel(c.d[i], n) : kernel({}, n);
    for (const auto& v : cocycles) {
        if (i == 0) return v;
        if (!solve(c.d[i - 1], v)) return v;
    }
    return {};
}

// Coefficient of the image of gen(m) * mu in terms of gen(m * mu), via the
// inclusion of Cech cochains (faces of m are faces of m * mu).
inline Q multiply_class(const Monomial& m, const Monomial& mu, int i)
{
    const Monomial t = m * mu;
    if (monomial_h(m, i) == 0 || monomial_h(t, i) == 0) return 0;
    static std::map<std::array<unsigned, 3>, Q> cache;
    const std::array<unsigned, 3> key{support_mask(m), support_mask(t), static_cast<unsigned>(i)};
    if (const auto hit = cache.find(key); hit != cache.end()) return hit->second;
    const Complex cs = build_complex(m);
    const Complex ct = build_complex(t);
    const std::vector<Q> gs = generator(cs, i);
    const std::vector<Q> gt = generator(ct, i);
    std::vector<Q> image(ct.faces[i].size());
    for (std::size_t k = 0; k < cs.faces[i].size(); ++k)
        for (std::size_t l = 0; l < ct.faces[i].size(); ++l)
            if (ct.faces[i][l] == cs.faces[i][k]) image[l] = gs[k];
    // image = lambda * gt + d(x): unknowns (lambda, x).
    const std::size_t n = ct.faces[i].size();
    const std::size_t prev = i > 0 ? ct.faces[i - 1].size() : 0;
    std::vector<std::vector<Q>> a(n, std::vector<Q>(1 + prev));
    for (std::size_t r = 0; r < n; ++r) {
        a[r][0] = gt[r];
        for (std::size_t k = 0; k < prev; ++k) a[r][1 + k] = ct.d[i - 1][r][k];
    }
    const auto x = solve(a, image);
    const Q value = x ? (*x)[0] : Q(0);
    cache.emplace(key, value);
    return value;
}

inline bool same(const Monomial& x, const Monomial& y)
{
    return x.za == y.za && x.zb == y.zb && x.wa == y.wa && x.wb == y.wb;
}

/// Matrix of H^i(phi(t)) in the oracle's own basis: rows = target monomials
/// block by block, columns = source monomials.
struct OracleMap {
    std::vector<std::pair<std::size_t, Monomial>> rows;
    std::vector<std::pair<std::size_t, Monomial>> cols;
    std::vector<std::vector<Q>> entries;
};

inline OracleMap induced(const natcoh::SheafMap& phi, int i, Bidegree t)
{
    OracleMap out;
    const auto src = phi.source().twisted(t);
    const auto tgt = phi.target().twisted(t);
    for (std::size_t k = 0; k < tgt.size(); ++k)
        for (const auto& m : h_monomials(i, tgt[k])) out.rows.push_back({k, m});
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& m : h_monomials(i, src[j])) out.cols.push_back({j, m});
    out.entries.assign(out.rows.size(), std::vector<Q>(out.cols.size()));
    for (std::size_t c = 0; c < out.cols.size(); ++c) {
        const auto& [j, m] = out.cols[c];
        for (std::size_t r = 0; r < out.rows.size(); ++r) {
            const auto& [k, target_m] = out.rows[r];
            for (const auto& [mu, coeff] : phi(k, j).terms())
                if (same(m * mu, target_m)) out.entries[r][c] += coeff * multiply_class(m, mu, i);
        }
    }
    return out;
}

// Compares the library against the oracle for one bundle. Empty string on
// agreement, otherwise a description of the first difference.
inline std::string compare_bundle(Bidegree d)
{
    for (int i = 0; i <= 2; ++i) {
        const auto mons = h_monomials(i, d);
        if (natcoh::coh_dim(i, d) != static_cast<long long>(mons.size()))
            return "h" + std::to_string(i) + " of " + natcoh::to_string(d);
        const auto basis = natcoh::coh_basis(i, d).basis;
        if (basis.size() != mons.size()) return "basis size of " + natcoh::to_string(d);
        for (const auto& m : mons)
            if (!natcoh::coh_basis_index(i, d, m)) return "basis of H" + std::to_string(i) + natcoh::to_string(d);
    }
    if (h(3, d) != 0) return "nonzero Cech H3";
    return {};
}

inline std::string compare_map(const natcoh::SheafMap& phi, int i, Bidegree t)
{
    const OracleMap o = induced(phi, i, t);
    const natcoh::InducedMap lib = natcoh::induced_map(phi, i, t);
    if (lib.matrix.rows() != o.rows.size() || lib.matrix.cols() != o.cols.size()) return "shape";
    const auto src = phi.source().twisted(t);
    const auto tgt = phi.target().twisted(t);
    const auto position = [&](const natcoh::LineBundleSum& s, std::size_t block, const Monomial& m) {
        long long offset = 0;
        for (std::size_t k = 0; k < block; ++k) offset += natcoh::coh_dim(i, s[k]);
        const auto idx = natcoh::coh_basis_index(i, s[block], m);
        return idx ? offset + static_cast<long long>(*idx) : -1LL;
    };
    for (std::size_t r = 0; r < o.rows.size(); ++r) {
        const long long lr = position(tgt, o.rows[r].first, o.rows[r].second);
        if (lr < 0) return "row monomial missing";
        for (std::size_t c = 0; c < o.cols.size(); ++c) {
            const long long lc = position(src, o.cols[c].first, o.cols[c].second);
            if (lc < 0) return "column monomial missing";
            if (lib.matrix(lr, lc) != o.entries[r][c])
                return "entry (" + natcoh::to_string(o.rows[r].second) + ", " + natcoh::to_string(o.cols[c].second) +
                       ")";
        }
    }
    return {};
}

// A random map between sums of one to three line bundles with |a|,|b| <= 4;
// targets are mostly small nonnegative offsets of sources so entries are nonzero.
struct RandomMapCase {
    natcoh::SheafMap phi;
    int degree = 0;
    Bidegree twist;
};

inline RandomMapCase random_map_case(natcoh::Rng& rng)
{
    const auto pick = [&](int lo, int hi) { return static_cast<int>(rng.uniform(lo, hi)); };
    std::vector<Bidegree> src, tgt;
    const int ns = pick(1, 3);
    const int nt = pick(1, 3);
    for (int k = 0; k < ns; ++k) src.push_back({pick(-4, 4), pick(-4, 4)});
    for (int k = 0; k < nt; ++k) {
        const Bidegree base = src[pick(0, ns - 1)];
        Bidegree d{base.a + pick(0, 2), base.b + pick(0, 2)};
        if (pick(0, 4) == 0) d = {pick(-4, 4), pick(-4, 4)};
        d.a = std::clamp(d.a, -4, 4);
        d.b = std::clamp(d.b, -4, 4);
        tgt.push_back(d);
    }
    const natcoh::LineBundleSum source(src), target(tgt);
    std::vector<natcoh::BiPoly> entries;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Bidegree d = tgt[i] - src[j];
            entries.push_back(d.nonnegative() ? natcoh::random_bipoly(d, 5, rng) : natcoh::BiPoly(d));
        }
    return {natcoh::SheafMap(source, target, std::move(entries)), pick(0, 2), {pick(-3, 3), pick(-3, 3)}};
}

}  // namespace oracle
