#include "natcoh/cohomology.hpp"

namespace natcoh {

namespace {

// One P1 factor: H^0(O(d)) has exponents (e, d-e) with 0 <= e <= d;
// H^1(O(d)) has d+1 <= e <= -1. Listed with e descending.
long long p1_dim(int h, int d)
{
    if (h == 0) return d >= 0 ? d + 1 : 0;
    return d <= -2 ? -d - 1 : 0;
}

std::vector<int> p1_first_exponents(int h, int d)
{
    std::vector<int> out;
    if (h == 0)
        for (int e = d; e >= 0; --e) out.push_back(e);
    else
        for (int e = -1; e >= d + 1; --e) out.push_back(e);
    return out;
}

std::optional<long long> p1_index(int h, int d, int e0, int e1)
{
    if (e0 + e1 != d) return std::nullopt;
    if (h == 0) {
        if (e0 < 0 || e1 < 0) return std::nullopt;
        return d - e0;
    }
    if (e0 > -1 || e1 > -1) return std::nullopt;
    return -1 - e0;
}

// (z-part degree, w-part degree) pairs making up H^i, in block order.
std::vector<std::pair<int, int>> kunneth_blocks(int i)
{
    switch (i) {
    case 0: return {{0, 0}};
    case 1: return {{0, 1}, {1, 0}};
    case 2: return {{1, 1}};
    default: return {};
    }
}

}  // namespace

long long coh_dim(int i, Bidegree d)
{
    long long total = 0;
    for (auto [hz, hw] : kunneth_blocks(i)) total += p1_dim(hz, d.a) * p1_dim(hw, d.b);
    return total;
}

long long coh_dim(int i, const LineBundleSum& s)
{
    long long total = 0;
    for (const auto& d : s.summands) total += coh_dim(i, d);
    return total;
}

CohBasis coh_basis(int i, Bidegree d)
{
    CohBasis out{d, i, {}};
    for (auto [hz, hw] : kunneth_blocks(i))
        for (int ez : p1_first_exponents(hz, d.a))
            for (int ew : p1_first_exponents(hw, d.b)) out.basis.push_back({ez, d.a - ez, ew, d.b - ew});
    return out;
}

std::optional<std::size_t> coh_basis_index(int i, Bidegree d, const Monomial& m)
{
    long long offset = 0;
    for (auto [hz, hw] : kunneth_blocks(i)) {
        const auto iz = p1_index(hz, d.a, m.za, m.zb);
        const auto iw = p1_index(hw, d.b, m.wa, m.wb);
        if (iz && iw) return static_cast<std::size_t>(offset + *iz * p1_dim(hw, d.b) + *iw);
        offset += p1_dim(hz, d.a) * p1_dim(hw, d.b);
    }
    return std::nullopt;
}

InducedMap induced_map(const SheafMap& phi, int i, Bidegree t)
{
    const LineBundleSum source = phi.source().twisted(t);
    const LineBundleSum target = phi.target().twisted(t);

    std::vector<std::size_t> col_offset(source.size() + 1, 0);
    for (std::size_t j = 0; j < source.size(); ++j)
        col_offset[j + 1] = col_offset[j] + static_cast<std::size_t>(coh_dim(i, source[j]));
    std::vector<std::size_t> row_offset(target.size() + 1, 0);
    for (std::size_t k = 0; k < target.size(); ++k)
        row_offset[k + 1] = row_offset[k] + static_cast<std::size_t>(coh_dim(i, target[k]));

    InducedMap out{i, t, ExactMatrix(row_offset.back(), col_offset.back())};
    for (std::size_t j = 0; j < source.size(); ++j) {
        if (col_offset[j + 1] == col_offset[j]) continue;
        const CohBasis src = coh_basis(i, source[j]);
        for (std::size_t k = 0; k < target.size(); ++k) {
            if (row_offset[k + 1] == row_offset[k]) continue;
            const BiPoly& entry = phi(k, j);
            if (entry.is_zero()) continue;
            for (std::size_t s = 0; s < src.basis.size(); ++s)
                for (const auto& [mono, coeff] : entry.terms()) {
                    const auto row = coh_basis_index(i, target[k], src.basis[s] * mono);
                    if (row) out.matrix(row_offset[k] + *row, col_offset[j] + s) += coeff;
                }
        }
    }
    return out;
}

}  // namespace natcoh
