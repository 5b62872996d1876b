#include "natcoh/bigraded.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "natcoh/errors.hpp"

namespace natcoh {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ParseError("empty rational");
    if (s.front() == '+') s.erase(0, 1);
    const auto slash = s.find('/');
    auto valid_integer = [](std::string_view t) {
        if (!t.empty() && t.front() == '-') t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!valid_integer(s)) throw ParseError("invalid rational '" + std::string(text) + "'");
        return Rational(Integer(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-')
        throw ParseError("invalid rational '" + std::string(text) + "'");
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

std::string to_string(Bidegree d)
{
    return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

std::string to_string(const Monomial& m)
{
    std::string out;
    auto factor = [&out](const char* var, int e) {
        if (e == 0) return;
        if (!out.empty()) out += '*';
        out += var;
        if (e != 1) out += "^" + std::to_string(e);
    };
    factor("z0", m.za);
    factor("z1", m.zb);
    factor("w0", m.wa);
    factor("w1", m.wb);
    return out.empty() ? "1" : out;
}

std::vector<Monomial> monomial_basis(Bidegree d)
{
    std::vector<Monomial> out;
    if (!d.nonnegative()) return out;
    out.reserve(static_cast<std::size_t>(d.a + 1) * static_cast<std::size_t>(d.b + 1));
    for (int za = d.a; za >= 0; --za)
        for (int wa = d.b; wa >= 0; --wa) out.push_back({za, d.a - za, wa, d.b - wa});
    return out;
}

BiPoly BiPoly::constant(const Rational& c)
{
    BiPoly p(Bidegree{0, 0});
    p.add_term({}, c);
    return p;
}

BiPoly BiPoly::monomial(const Monomial& m, const Rational& c)
{
    BiPoly p(m.bidegree());
    p.add_term(m, c);
    return p;
}

BiPoly BiPoly::linear_z(const Rational& c0, const Rational& c1)
{
    BiPoly p(Bidegree{1, 0});
    p.add_term({1, 0, 0, 0}, c0);
    p.add_term({0, 1, 0, 0}, c1);
    return p;
}

BiPoly BiPoly::linear_w(const Rational& c0, const Rational& c1)
{
    BiPoly p(Bidegree{0, 1});
    p.add_term({0, 0, 1, 0}, c0);
    p.add_term({0, 0, 0, 1}, c1);
    return p;
}

Rational BiPoly::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void BiPoly::add_term(const Monomial& m, const Rational& c)
{
    if (!m.polynomial()) throw NegativeBidegree("negative exponent in polynomial term " + to_string(m));
    if (m.bidegree() != degree_)
        throw BidegreeMismatch("term " + to_string(m) + " is not of bidegree " + to_string(degree_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BiPoly& BiPoly::operator+=(const BiPoly& other)
{
    if (other.degree_ != degree_)
        throw BidegreeMismatch("cannot add polynomials of bidegree " + to_string(degree_) + " and " +
                               to_string(other.degree_));
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& other)
{
    if (other.degree_ != degree_)
        throw BidegreeMismatch("cannot subtract polynomials of bidegree " + to_string(degree_) + " and " +
                               to_string(other.degree_));
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

BiPoly& BiPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

BiPoly operator*(const BiPoly& p, const BiPoly& q)
{
    BiPoly out(p.degree_ + q.degree_);
    for (const auto& [m1, c1] : p.terms_)
        for (const auto& [m2, c2] : q.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

std::string to_string(const BiPoly& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        out += mag.get_str();
        if (m != Monomial{}) out += "*" + to_string(m);
    }
    return out;
}

namespace {

// Parses one signless term "c*z0^i*w1" (coefficient optional) into (monomial, coefficient).
std::pair<Monomial, Rational> parse_term(std::string_view term, std::string_view whole)
{
    Monomial m;
    Rational coeff(1);
    bool seen_coeff = false;
    std::size_t pos = 0;
    auto fail = [&whole](const std::string& why) {
        throw ParseError("bad polynomial '" + std::string(whole) + "': " + why);
    };
    while (pos <= term.size()) {
        auto next = term.find('*', pos);
        if (next == std::string_view::npos) next = term.size();
        std::string factor(term.substr(pos, next - pos));
        while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.back()))) factor.pop_back();
        while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.front()))) factor.erase(0, 1);
        if (factor.empty()) fail("empty factor");
        if (std::isdigit(static_cast<unsigned char>(factor.front()))) {
            if (seen_coeff || pos != 0) fail("coefficient must lead the term");
            coeff = parse_rational(factor);
            seen_coeff = true;
        } else {
            if (factor.size() < 2 || (factor[0] != 'z' && factor[0] != 'w') || (factor[1] != '0' && factor[1] != '1'))
                fail("unknown variable in '" + factor + "'");
            int e = 1;
            if (factor.size() > 2) {
                if (factor[2] != '^') fail("expected '^' in '" + factor + "'");
                const std::string exp = factor.substr(3);
                if (exp.empty()) fail("missing exponent");
                for (char c : exp)
                    if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad exponent in '" + factor + "'");
                e = std::stoi(exp);
            }
            int* slot = factor[0] == 'z' ? (factor[1] == '0' ? &m.za : &m.zb) : (factor[1] == '0' ? &m.wa : &m.wb);
            *slot += e;
        }
        pos = next + 1;
    }
    return {m, coeff};
}

}  // namespace

BiPoly parse_bipoly(std::string_view text, Bidegree expected)
{
    BiPoly out(expected);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty polynomial");
    if (s == "0") return out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ParseError("bad polynomial '" + std::string(text) + "'");
        }
        auto end = s.find_first_of("+-", pos);
        if (end == std::string::npos) end = s.size();
        if (end == pos) throw ParseError("bad polynomial '" + std::string(text) + "': empty term");
        auto [m, c] = parse_term(std::string_view(s).substr(pos, end - pos), text);
        try {
            out.add_term(m, sign * c);
        } catch (const BidegreeMismatch& e) {
            throw BidegreeMismatch("bad polynomial '" + std::string(text) + "': " + e.what());
        } catch (const Error& e) {
            throw ParseError("bad polynomial '" + std::string(text) + "': " + e.what());
        }
        pos = end;
    }
    return out;
}

LineBundleSum LineBundleSum::repeated(Bidegree d, int count)
{
    if (count < 0) throw InvalidParameters("negative multiplicity " + std::to_string(count));
    return LineBundleSum(std::vector<Bidegree>(static_cast<std::size_t>(count), d));
}

LineBundleSum LineBundleSum::twisted(Bidegree t) const
{
    LineBundleSum out = *this;
    for (auto& d : out.summands) d = d + t;
    return out;
}

LineBundleSum LineBundleSum::serre_dual() const
{
    LineBundleSum out = *this;
    for (auto& d : out.summands) d = Bidegree{-2 - d.a, -2 - d.b};
    return out;
}

LineBundleSum LineBundleSum::dual() const
{
    LineBundleSum out = *this;
    for (auto& d : out.summands) d = -d;
    return out;
}

LineBundleSum& LineBundleSum::append(const LineBundleSum& other)
{
    summands.insert(summands.end(), other.summands.begin(), other.summands.end());
    return *this;
}

std::string to_string(const LineBundleSum& s)
{
    if (s.empty()) return "0";
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        if (!out.empty()) out += " + ";
        out += "O" + to_string(s[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x6e6174u};
    std::mt19937_64 engine(seq);
    Rng r(0);
    r.engine_ = engine;
    return r;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi)
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

BiPoly random_bipoly(Bidegree d, int height, Rng& rng)
{
    if (!d.nonnegative()) throw NegativeBidegree("random polynomial of negative bidegree " + to_string(d));
    BiPoly p(d);
    for (const auto& m : monomial_basis(d)) p.add_term(m, Rational(rng.uniform(-height, height)));
    return p;
}

}  // namespace natcoh
