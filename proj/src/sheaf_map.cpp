#include "natcoh/sheaf_map.hpp"

#include <algorithm>

#include "natcoh/errors.hpp"

namespace natcoh {

SheafMap::SheafMap(LineBundleSum source, LineBundleSum target) : source_(std::move(source)), target_(std::move(target))
{
    entries_.reserve(rows() * cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) entries_.emplace_back(entry_bidegree(i, j));
}

SheafMap::SheafMap(LineBundleSum source, LineBundleSum target, std::vector<BiPoly> entries)
    : source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries))
{
    normalize_entries();
}

void SheafMap::normalize_entries()
{
    if (entries_.size() != rows() * cols())
        throw ShapeMismatch("expected " + std::to_string(rows() * cols()) + " entries, got " +
                            std::to_string(entries_.size()));
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) {
            BiPoly& p = entries_[i * cols() + j];
            const Bidegree want = entry_bidegree(i, j);
            if (p.is_zero()) p = BiPoly::zero(want);
            if (p.bidegree() != want)
                throw BidegreeMismatch("entry (" + std::to_string(i) + "," + std::to_string(j) + ") has bidegree " +
                                       to_string(p.bidegree()) + ", expected " + to_string(want));
        }
}

SheafMap SheafMap::identity(const LineBundleSum& source)
{
    SheafMap m(source, source);
    for (std::size_t i = 0; i < source.size(); ++i) m.entries_[i * source.size() + i] = BiPoly::constant(1);
    return m;
}

void SheafMap::set(std::size_t i, std::size_t j, BiPoly p)
{
    if (i >= rows() || j >= cols()) throw ShapeMismatch("entry index out of range");
    const Bidegree want = entry_bidegree(i, j);
    if (p.bidegree() != want) {
        if (!p.is_zero())
            throw BidegreeMismatch("entry of bidegree " + to_string(p.bidegree()) + " where " + to_string(want) +
                                   " is required");
        p = BiPoly::zero(want);
    }
    entries_[i * cols() + j] = std::move(p);
}

bool SheafMap::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const BiPoly& p) { return p.is_zero(); });
}

SheafMap SheafMap::twisted(Bidegree t) const
{
    return SheafMap(source_.twisted(t), target_.twisted(t), entries_);
}

namespace {

SheafMap transpose_between(const SheafMap& phi, LineBundleSum source, LineBundleSum target)
{
    std::vector<BiPoly> entries;
    entries.reserve(phi.rows() * phi.cols());
    for (std::size_t j = 0; j < phi.cols(); ++j)
        for (std::size_t i = 0; i < phi.rows(); ++i) entries.push_back(phi(i, j));
    return SheafMap(std::move(source), std::move(target), std::move(entries));
}

}  // namespace

SheafMap SheafMap::serre_dual() const
{
    return transpose_between(*this, target_.serre_dual(), source_.serre_dual());
}

SheafMap SheafMap::dual() const
{
    return transpose_between(*this, target_.dual(), source_.dual());
}

SheafMap compose(const SheafMap& g, const SheafMap& f)
{
    if (f.target() != g.source())
        throw ShapeMismatch("cannot compose: " + to_string(f.target()) + " vs " + to_string(g.source()));
    std::vector<BiPoly> entries;
    entries.reserve(g.rows() * f.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) {
            BiPoly acc(g.target()[i] - f.source()[j]);
            for (std::size_t k = 0; k < g.cols(); ++k) {
                const BiPoly& a = g(i, k);
                const BiPoly& b = f(k, j);
                if (a.is_zero() || b.is_zero()) continue;
                acc += a * b;
            }
            entries.push_back(std::move(acc));
        }
    return SheafMap(f.source(), g.target(), std::move(entries));
}

}  // namespace natcoh
