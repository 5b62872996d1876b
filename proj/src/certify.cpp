#include "natcoh/certify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace natcoh {

Window parse_window(const std::string& text)
{
    int v[4];
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d:%d:%d:%d%c", &v[0], &v[1], &v[2], &v[3], &tail) != 4)
        throw ParseError("window must look like a0:a1:b0:b1, got '" + text + "'");
    Window w{v[0], v[1], v[2], v[3]};
    if (w.a0 > w.a1 || w.b0 > w.b1) throw ParseError("empty window '" + text + "'");
    return w;
}

std::string to_string(const Window& w)
{
    return std::to_string(w.a0) + ":" + std::to_string(w.a1) + ":" + std::to_string(w.b0) + ":" + std::to_string(w.b1);
}

std::string to_string(CohFlag f)
{
    switch (f) {
    case CohFlag::natural: return "natural";
    case CohFlag::zero: return "zero";
    default: return "violation";
    }
}

CohFlag classify(const CohDims& h)
{
    if (h.h0 == 0 && h.h1 == 0 && h.h2 == 0) return CohFlag::zero;
    return h.natural() ? CohFlag::natural : CohFlag::violation;
}

bool CohTable::all_natural() const
{
    return !first_violation().has_value();
}

std::optional<Bidegree> CohTable::first_violation() const
{
    for (const auto& t : display_order())
        if (flags.at(t) == CohFlag::violation) return t;
    return std::nullopt;
}

std::vector<Bidegree> CohTable::display_order() const
{
    std::vector<Bidegree> out;
    for (const auto& [t, h] : entries) out.push_back(t);
    std::sort(out.begin(), out.end(), [](Bidegree x, Bidegree y) { return x.b != y.b ? x.b > y.b : x.a < y.a; });
    return out;
}

CohTable coh_table(const Monad& m, const Window& w, std::uint64_t prime)
{
    CohTable table;
    table.window = w;
    for (int b = w.b0; b <= w.b1; ++b)
        for (int a = w.a0; a <= w.a1; ++a) {
            const Bidegree t{a, b};
            const CohDims h = bundle_coh(m, t, prime);
            table.entries[t] = h;
            table.flags[t] = classify(h);
        }
    return table;
}

TSets t_sets(const HilbertParams& p, int bound)
{
    if (bound < 0) {
        Integer c = p.gamma.get_num() / p.gamma.get_den();
        if (c * p.gamma.get_den() != p.gamma.get_num()) c += 1;
        bound = static_cast<int>(c.get_si()) + 2;
    }
    TSets out;
    for (int a = 1; a <= bound; ++a)
        for (int b = 1; b <= bound; ++b)
            if (p.chi(a, b) <= 0 && (p.chi(a + 1, b) > 0 || p.chi(a, b + 1) > 0)) out.plus.insert({a, b});
    for (int a = -bound; a <= -1; ++a)
        for (int b = -bound; b <= -1; ++b)
            if (p.chi(a, b) <= 0 && (p.chi(a - 1, b) > 0 || p.chi(a, b - 1) > 0)) out.minus.insert({a, b});
    return out;
}

std::string monad_digest(const Monad& m)
{
    std::ostringstream text;
    text << to_string(m.A()) << '|' << to_string(m.B()) << '|' << to_string(m.C());
    for (const auto* phi : {&m.f(), &m.g()})
        for (const auto& e : phi->entries()) text << '|' << to_string(e);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

long long chi_ll(const HilbertParams& p, Bidegree t)
{
    const Rational c = p.chi(t.a, t.b);
    if (c.get_den() != 1) throw InvalidParameters("non-integral Euler characteristic at " + to_string(t));
    return c.get_num().get_si();
}

TwistCheck check_twist(const Monad& m, const HilbertParams& p, Bidegree t, std::string role, std::uint64_t prime)
{
    TwistCheck c;
    c.twist = t;
    c.role = std::move(role);
    c.chi = chi_ll(p, t);
    try {
        c.dims = bundle_coh(m, t, prime);
        c.pass = c.dims.natural() && c.dims.chi() == c.chi;
        if (!c.dims.natural())
            c.detail = "not natural: " + to_string(c.dims);
        else if (!c.pass)
            c.detail = "chi " + std::to_string(c.dims.chi()) + " differs from " + std::to_string(c.chi);
    } catch (const MixedMonadCohomology& e) {
        c.detail = e.what();
    }
    return c;
}

}  // namespace

Certificate theorem_certify(const Monad& m, const HilbertParams& p, const SearchConfig& cfg, const Window& window)
{
    Certificate cert;
    cert.digest = monad_digest(m);
    cert.window = window;
    cert.conditions = check_conditions(m, p, cfg);
    for (const auto& r : cert.conditions.records)
        if (!r.pass) cert.failures.push_back("condition " + r.name);

    if (m.is_complex()) {
        std::vector<std::pair<Bidegree, std::string>> twists{{{0, 0}, "axis"},  {{1, 0}, "axis"},
                                                              {{-1, 0}, "axis"}, {{0, 1}, "axis"},
                                                              {{0, -1}, "axis"}, {{1, 1}, "(1,1)"}};
        if (!m.A().empty()) twists.push_back({{-2, -2}, "dual (2,2)"});
        cert.t_sets = t_sets(p);
        for (const auto& t : cert.t_sets.plus) twists.push_back({t, "T+"});
        for (const auto& t : cert.t_sets.minus) twists.push_back({t, "T-"});
        for (const auto& [t, role] : twists) {
            cert.twist_checks.push_back(check_twist(m, p, t, role, cfg.prime));
            if (!cert.twist_checks.back().pass) cert.failures.push_back("twist " + to_string(t) + " (" + role + ")");
        }
    }

    if (cert.failures.empty()) {
        cert.window_checked = true;
        try {
            const CohTable table = coh_table(m, window, cfg.prime);
            cert.window_pass = true;
            for (const auto& t : table.display_order()) {
                const CohDims& h = table.entries.at(t);
                if (table.flags.at(t) == CohFlag::violation || h.chi() != chi_ll(p, t)) {
                    cert.window_pass = false;
                    cert.window_detail = "twist " + to_string(t) + " has " + to_string(h);
                    break;
                }
            }
        } catch (const MixedMonadCohomology& e) {
            cert.window_detail = e.what();
        }
        if (cert.window_pass)
            cert.window_detail = "all twists in " + to_string(window) + " natural";
        else
            cert.failures.push_back("window: " + cert.window_detail);
    } else {
        cert.window_detail = "skipped: finite checks failed";
    }
    cert.pass = cert.failures.empty();
    return cert;
}

SplitType pushforward_split_type(const CohTable& table, const HilbertParams& p, Axis axis, int n)
{
    if (n < p.gamma) throw InvalidParameters("split type needs n >= gamma, got n = " + std::to_string(n));
    const Rational s_q = p.r * p.gamma;
    if (s_q.get_den() != 1) throw InvalidParameters("r*gamma is not an integer");
    SplitType st;
    st.s = s_q.get_num().get_si();
    st.t = static_cast<long long>(p.r) * n - st.s;

    std::vector<int> bad;
    const Window& w = table.window;
    const int lo = axis == Axis::first ? w.a0 : w.b0;
    const int hi = axis == Axis::first ? w.a1 : w.b1;
    bool row_present = false;
    for (int k = lo; k <= hi; ++k) {
        const Bidegree t = axis == Axis::first ? Bidegree{k, n} : Bidegree{n, k};
        const auto it = table.entries.find(t);
        if (it == table.entries.end()) continue;
        row_present = true;
        const long long h0 = st.s * std::max(0, k - 1) + st.t * std::max(0, k);
        const long long h1 = st.s * std::max(0, 1 - k) + st.t * std::max(0, -k);
        if (it->second != CohDims{h0, h1, 0}) bad.push_back(k);
    }
    if (!row_present) throw InvalidParameters("row " + std::to_string(n) + " is outside the table window");
    if (!bad.empty()) {
        std::string list;
        for (int k : bad) list += (list.empty() ? "" : ",") + std::to_string(k);
        throw SplitTypeMismatch("split type (" + std::to_string(st.s) + "," + std::to_string(st.t) +
                                ") does not fit at " + list);
    }
    return st;
}

SplitType pushforward_split_type(const Monad& m, const HilbertParams& p, Axis axis, int n, const Window& window,
                                 std::uint64_t prime)
{
    CohTable row;
    row.window = axis == Axis::first ? Window{window.a0, window.a1, n, n} : Window{n, n, window.b0, window.b1};
    row = coh_table(m, row.window, prime);
    return pushforward_split_type(row, p, axis, n);
}

}  // namespace natcoh
