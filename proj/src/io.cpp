#include "natcoh/io.hpp"

#include <iomanip>
#include <sstream>

namespace natcoh {

namespace {

Json twist_json(Bidegree t)
{
    return Json::array({t.a, t.b});
}

Json dims_json(const std::vector<std::pair<std::string, long long>>& dims)
{
    Json out = Json::object();
    for (const auto& [k, v] : dims) out[k] = v;
    return out;
}

LineBundleSum parse_sum(const Json& j, const char* key)
{
    if (!j.is_array()) throw ParseError(std::string("'") + key + "' must be an array of [a,b] pairs");
    LineBundleSum s;
    for (const auto& d : j) {
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
            throw ParseError(std::string("'") + key + "' entries must be [a,b] integer pairs");
        s.summands.push_back({d[0].get<int>(), d[1].get<int>()});
    }
    return s;
}

SheafMap parse_map(const Json& j, const LineBundleSum& source, const LineBundleSum& target, const char* key)
{
    if (!j.is_array() || j.size() != target.size())
        throw ParseError(std::string("'") + key + "' must have one row per target summand");
    std::vector<BiPoly> entries;
    for (std::size_t i = 0; i < target.size(); ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != source.size())
            throw ParseError(std::string("'") + key + "' rows must have one entry per source summand");
        for (std::size_t k = 0; k < source.size(); ++k) {
            if (!row[k].is_string()) throw ParseError(std::string("'") + key + "' entries must be strings");
            const Bidegree d = target[i] - source[k];
            const std::string text = row[k].get<std::string>();
            if (!d.nonnegative()) {
                if (parse_bipoly(text, {}).is_zero()) {
                    entries.emplace_back();
                    continue;
                }
                throw BidegreeMismatch(std::string(key) + " entry (" + std::to_string(i) + "," +
                                       std::to_string(k) + ") must be zero");
            }
            entries.push_back(parse_bipoly(text, d));
        }
    }
    return SheafMap(source, target, std::move(entries));
}

const Json& field(const Json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

Rational rational_field(const Json& j, const char* key, const char* fallback)
{
    const auto it = j.find(key);
    if (it == j.end()) return parse_rational(fallback);
    if (it->is_number_integer()) return Rational(it->get<long>());
    if (!it->is_string()) throw ParseError(std::string("'") + key + "' must be a string like \"p/q\"");
    return parse_rational(it->get<std::string>());
}

}  // namespace

Json to_json(const LineBundleSum& s)
{
    Json out = Json::array();
    for (const auto& d : s.summands) out.push_back(twist_json(d));
    return out;
}

Json to_json(const SheafMap& phi)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < phi.cols(); ++j) row.push_back(to_string(phi(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const SurjectivityCertificate& c)
{
    Json out;
    out["verdict"] = to_string(c.verdict);
    out["reason"] = c.reason;
    out["prime"] = c.prime;
    out["window"] = c.window;
    long long min_rank = -1;
    for (const auto& f : c.fiber_checks)
        if (min_rank < 0 || static_cast<long long>(f.rank) < min_rank) min_rank = static_cast<long long>(f.rank);
    out["fiber_points"] = c.fiber_checks.size();
    out["min_fiber_rank"] = min_rank;
    out["fiber_rank_required"] = c.fiber_checks.empty() ? 0 : c.fiber_checks.front().required;
    Json w = Json::array();
    for (const auto& wc : c.window_checks) w.push_back({{"twist", twist_json(wc.twist)}, {"cokernel", wc.cokernel}});
    out["window_checks"] = std::move(w);
    return out;
}

Json to_json(const ConditionReport& rep)
{
    Json out;
    out["attempt"] = rep.attempt;
    out["passed"] = rep.passed();
    Json records = Json::array();
    for (const auto& r : rep.records) {
        Json j;
        j["name"] = r.name;
        j["twist"] = r.twist ? twist_json(*r.twist) : Json();
        j["required"] = dims_json(r.required);
        j["observed"] = dims_json(r.observed);
        j["pass"] = r.pass;
        if (!r.detail.empty()) j["detail"] = r.detail;
        records.push_back(std::move(j));
    }
    out["records"] = std::move(records);
    Json maps = Json::object();
    for (const auto& [k, c] : rep.bundle_maps) maps[k] = to_json(c);
    out["bundle_maps"] = std::move(maps);
    return out;
}

Json to_json(const Certificate& c)
{
    Json out;
    out["digest"] = c.digest;
    out["conditions"] = to_json(c.conditions);
    Json checks = Json::array();
    for (const auto& t : c.twist_checks) {
        Json j{{"twist", twist_json(t.twist)},
               {"role", t.role},
               {"h", Json::array({t.dims.h0, t.dims.h1, t.dims.h2})},
               {"chi", t.chi},
               {"pass", t.pass}};
        if (!t.detail.empty()) j["detail"] = t.detail;
        checks.push_back(std::move(j));
    }
    out["twist_checks"] = std::move(checks);
    Json tp = Json::array();
    for (const auto& t : c.t_sets.plus) tp.push_back(twist_json(t));
    Json tm = Json::array();
    for (const auto& t : c.t_sets.minus) tm.push_back(twist_json(t));
    out["t_plus"] = std::move(tp);
    out["t_minus"] = std::move(tm);
    out["window"] = to_string(c.window);
    out["window_checked"] = c.window_checked;
    out["window_pass"] = c.window_pass;
    out["window_detail"] = c.window_detail;
    out["failures"] = c.failures;
    out["verdict"] = c.pass ? "pass" : "fail";
    return out;
}

Json to_json(const CohTable& t)
{
    Json out;
    out["window"] = to_string(t.window);
    Json entries = Json::array();
    for (const auto& tw : t.display_order()) {
        const CohDims& h = t.entries.at(tw);
        entries.push_back({{"a", tw.a},
                           {"b", tw.b},
                           {"h", Json::array({h.h0, h.h1, h.h2})},
                           {"chi", h.chi()},
                           {"flag", to_string(t.flags.at(tw))}});
    }
    out["entries"] = std::move(entries);
    return out;
}

Json to_json(const MonadDocument& doc)
{
    Json out;
    out["A"] = to_json(doc.monad.A());
    out["B"] = to_json(doc.monad.B());
    out["C"] = to_json(doc.monad.C());
    out["f"] = to_json(doc.monad.f());
    out["g"] = to_json(doc.monad.g());
    Json params;
    params["r"] = doc.params.r;
    params["gamma"] = to_string(doc.params.gamma);
    params["alpha"] = to_string(doc.params.alpha);
    params["beta"] = to_string(doc.params.beta);
    params["seed"] = doc.seed ? Json(*doc.seed) : Json();
    out["params"] = std::move(params);
    if (!doc.certificate.is_null()) out["certificate"] = doc.certificate;
    return out;
}

std::string emit_document(const MonadDocument& doc)
{
    return to_json(doc).dump(2) + "\n";
}

MonadDocument parse_document(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("document must be a JSON object");

    MonadDocument doc;
    try {
        const LineBundleSum a = parse_sum(field(j, "A"), "A");
        const LineBundleSum b = parse_sum(field(j, "B"), "B");
        const LineBundleSum c = parse_sum(field(j, "C"), "C");
        SheafMap f = parse_map(field(j, "f"), a, b, "f");
        SheafMap g = parse_map(field(j, "g"), b, c, "g");
        doc.monad = Monad(a, b, c, std::move(f), std::move(g));

        const Json& params = field(j, "params");
        if (!params.is_object()) throw ParseError("'params' must be an object");
        const Json& r = field(params, "r");
        if (!r.is_number_integer()) throw ParseError("'params.r' must be an integer");
        doc.params.r = r.get<int>();
        doc.params.gamma = rational_field(params, "gamma", "1");
        doc.params.alpha = rational_field(params, "alpha", "0");
        doc.params.beta = rational_field(params, "beta", "0");
        const auto seed = params.find("seed");
        if (seed != params.end() && !seed->is_null()) {
            if (!seed->is_number_unsigned() && !seed->is_number_integer())
                throw ParseError("'params.seed' must be a nonnegative integer");
            doc.seed = seed->get<std::uint64_t>();
        }
        const auto cert = j.find("certificate");
        if (cert != j.end()) doc.certificate = *cert;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad document: ") + e.what());
    }
    return doc;
}

MonadDocument dual_document(const MonadDocument& doc)
{
    MonadDocument out;
    out.monad = serre_dual(doc.monad);
    out.params = doc.params;
    out.params.alpha = -doc.params.alpha;
    out.params.beta = -doc.params.beta;
    out.seed = doc.seed;
    return out;
}

std::string table_csv(const CohTable& t)
{
    std::ostringstream out;
    out << "a,b,h0,h1,h2,chi,flag\n";
    for (const auto& tw : t.display_order()) {
        const CohDims& h = t.entries.at(tw);
        out << tw.a << ',' << tw.b << ',' << h.h0 << ',' << h.h1 << ',' << h.h2 << ',' << h.chi() << ','
            << to_string(t.flags.at(tw)) << '\n';
    }
    return out.str();
}

std::string table_text(const CohTable& t)
{
    std::ostringstream out;
    out << std::setw(4) << "a" << std::setw(4) << "b" << std::setw(8) << "h0" << std::setw(8) << "h1"
        << std::setw(8) << "h2" << std::setw(8) << "chi" << "  flag\n";
    for (const auto& tw : t.display_order()) {
        const CohDims& h = t.entries.at(tw);
        out << std::setw(4) << tw.a << std::setw(4) << tw.b << std::setw(8) << h.h0 << std::setw(8) << h.h1
            << std::setw(8) << h.h2 << std::setw(8) << h.chi() << "  " << to_string(t.flags.at(tw)) << '\n';
    }
    return out.str();
}

}  // namespace natcoh
