#include "commands.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "natcoh/certify.hpp"
#include "natcoh/fixtures.hpp"
#include "natcoh/io.hpp"
#include "natcoh/search.hpp"

namespace natcoh::cli {

namespace {

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    int height = 100;
    int retries = 10;
    std::uint64_t prime = kDefaultPrime;
    std::string window = "-6:6:-6:6";
    std::string format = "text";
    std::string out;
};

class InputError : public Error {
public:
    using Error::Error;
};

std::uint64_t env_seed(std::uint64_t fallback)
{
    const char* s = std::getenv("NATCOH_SEED");
    if (s == nullptr || *s == '\0') return fallback;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (errno != 0 || *end != '\0' || *s == '-') throw InputError(std::string("NATCOH_SEED is not a seed: '") + s + "'");
    return v;
}

SearchConfig config_from(const CommonFlags& f, std::uint64_t seed)
{
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.height = f.height;
    cfg.max_retries = f.retries;
    cfg.prime = f.prime;
    return cfg;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
    if (!f) throw InputError("failed writing '" + path + "'");
}

std::string dims_text(const std::vector<std::pair<std::string, long long>>& dims)
{
    std::string s;
    for (const auto& [k, v] : dims) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
    return s;
}

void print_certificate(const Certificate& cert, std::ostream& out)
{
    for (const auto& r : cert.conditions.records) {
        out << (r.pass ? "[pass] " : "[FAIL] ") << r.name;
        if (r.twist) out << " at " << to_string(*r.twist);
        out << ": " << dims_text(r.observed);
        if (!r.pass) out << " (required " << dims_text(r.required) << ")";
        if (!r.detail.empty()) out << " -- " << r.detail;
        out << '\n';
    }
    for (const auto& t : cert.twist_checks) {
        out << (t.pass ? "[pass] " : "[FAIL] ") << "natural at " << to_string(t.twist) << " (" << t.role
            << "): h = " << to_string(t.dims) << ", chi = " << t.chi;
        if (!t.detail.empty()) out << " -- " << t.detail;
        out << '\n';
    }
    out << (cert.window_pass ? "[pass] " : (cert.window_checked ? "[FAIL] " : "[skip] ")) << "window "
        << to_string(cert.window) << ": " << cert.window_detail << '\n';
    out << "certificate " << (cert.pass ? "pass" : "fail") << " (digest " << cert.digest << ")\n";
    if (!cert.failures.empty()) out << "first violation: " << cert.failures.front() << '\n';
}

std::string table_in_format(const CohTable& t, const std::string& format)
{
    if (format == "csv") return table_csv(t);
    if (format == "json") return to_json(t).dump(2) + "\n";
    return table_text(t);
}

// Coordinate names of g : O(0,-1)^n + O(-1,0)^n -> O^n: a^e_{ij} multiplies w_e
// in the first block, b^e_{ij} multiplies z_e in the second.
std::string coordinate_name(const LineBundleSum& b, std::size_t row, std::size_t col, const Monomial& m)
{
    const std::size_t n = b.size() / 2;
    const bool first = col < n;
    const int e = first ? (m.wa == 1 ? 0 : 1) : (m.za == 1 ? 0 : 1);
    return std::string(first ? "a" : "b") + std::to_string(e) + "_" + std::to_string(row + 1) +
           std::to_string((first ? col : col - n) + 1);
}

std::string condition_text(const AnnihilatorSpace& L, std::size_t row)
{
    const auto& b = L.space.source();
    const auto& c = L.space.target();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            for (const auto& m : monomial_basis(c[i] - b[j])) names.push_back(coordinate_name(b, i, j, m));
    std::string s;
    for (std::size_t u = 0; u < L.conditions.cols(); ++u) {
        const Rational& q = L.conditions(row, u);
        if (q == 0) continue;
        const bool neg = q < 0;
        const Rational mag = neg ? Rational(-q) : q;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (mag != 1) s += to_string(mag) + "*";
        s += names[u];
    }
    return (s.empty() ? "0" : s) + " = 0";
}

int verify_document(const MonadDocument& doc, const CommonFlags& f, std::ostream& out)
{
    std::uint64_t seed = doc.seed ? *doc.seed : env_seed(0);
    if (f.seed) seed = *f.seed;
    const SearchConfig cfg = config_from(f, seed);
    const Window w = parse_window(f.window);
    const Certificate cert = theorem_certify(doc.monad, doc.params, cfg, w);

    std::optional<CohTable> table;
    if (cert.window_checked) {
        try {
            table = coh_table(doc.monad, w, cfg.prime);
        } catch (const Error&) {
        }
    }
    if (f.format == "json") {
        Json j;
        j["certificate"] = to_json(cert);
        j["table"] = table ? to_json(*table) : Json();
        out << j.dump(2) << '\n';
    } else if (f.format == "csv") {
        if (table) out << table_csv(*table);
    } else {
        print_certificate(cert, out);
        if (table) out << table_text(*table);
    }
    return cert.pass ? kOk : kCheckFailed;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool search_flags)
{
    cmd->add_option("--seed", f.seed, "random seed (default: NATCOH_SEED, else 0)");
    cmd->add_option("--prime", f.prime, "screening prime");
    cmd->add_option("--window", f.window, "twist window a0:a1:b0:b1");
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
    if (search_flags) {
        cmd->add_option("--height", f.height, "coefficient height of random draws")->check(CLI::PositiveNumber);
        cmd->add_option("--retries", f.retries, "retry budget")->check(CLI::PositiveNumber);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Search for and certify bundles with natural cohomology on P1 x P1"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    CommonFlags flags;
    std::string gamma_text;
    std::string alpha_text = "0";
    std::string beta_text = "0";
    std::optional<int> rank_multiple;
    std::string path;
    std::string example_name;

    auto* search_cmd = app.add_subcommand("search", "search for a monad and certify it");
    search_cmd->add_option("--gamma", gamma_text, "gamma as p/q")->required();
    search_cmd->add_option("--rank-multiple", rank_multiple, "r (default: least r with r*gamma integral, at least 2)");
    search_cmd->add_option("--out", flags.out, "output document (default stdout)");
    add_common(search_cmd, flags, true);

    auto* verify_cmd = app.add_subcommand("verify", "recompute every check for a monad document");
    verify_cmd->add_option("path", path, "monad document")->required();
    add_common(verify_cmd, flags, false);

    auto* table_cmd = app.add_subcommand("table", "cohomology table of a monad document");
    table_cmd->add_option("path", path, "monad document")->required();
    table_cmd->add_option("--out", flags.out, "output file (default stdout)");
    add_common(table_cmd, flags, false);

    auto* dual_cmd = app.add_subcommand("dual", "write the Serre dual monad document");
    dual_cmd->add_option("path", path, "monad document")->required();
    dual_cmd->add_option("--out", flags.out, "output document (default stdout)");

    auto* shape_cmd = app.add_subcommand("shape", "monad shape for r((x-alpha)(y-beta)-gamma)");
    shape_cmd->add_option("--gamma", gamma_text, "gamma as p/q")->required();
    shape_cmd->add_option("--alpha", alpha_text, "alpha as p/q");
    shape_cmd->add_option("--beta", beta_text, "beta as p/q");
    shape_cmd->add_option("--rank-multiple", rank_multiple, "starting r (default 1)");
    shape_cmd->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"json", "text"}));

    auto* example_cmd = app.add_subcommand("example", "emit and verify a built-in monad");
    example_cmd->add_option("name", example_name, "example name")->required()->check(CLI::IsMember(example_names()));
    example_cmd->add_option("--out", flags.out, "write the document here");
    add_common(example_cmd, flags, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*search_cmd) {
            HilbertParams p;
            p.gamma = parse_rational(gamma_text);
            p.r = rank_multiple ? *rank_multiple : minimal_rank_multiple(p.gamma);
            p.validate();
            const std::uint64_t seed = flags.seed ? *flags.seed : env_seed(0);
            const SearchConfig cfg = config_from(flags, seed);
            const Window w = parse_window(flags.window);
            SearchResult res = search(p, cfg);
            const Certificate cert = theorem_certify(res.monad, p, cfg, w);
            MonadDocument doc{res.monad, p, seed, to_json(cert)};
            write_output(flags.out, emit_document(doc), out);
            if (!flags.out.empty() && flags.out != "-") {
                out << "r = " << p.r << ", gamma = " << to_string(p.gamma) << ", seed = " << seed << ", attempt "
                    << res.report.attempt << '\n';
                out << "A = " << to_string(doc.monad.A()) << "\nB = " << to_string(doc.monad.B())
                    << "\nC = " << to_string(doc.monad.C()) << '\n';
                out << "certificate " << (cert.pass ? "pass" : "fail") << " (digest " << cert.digest << ")\n";
            }
            if (!cert.pass) err << "certificate failed: " << cert.failures.front() << '\n';
            return cert.pass ? kOk : kCheckFailed;
        }
        if (*verify_cmd) {
            const MonadDocument doc = parse_document(read_file(path));
            const int code = verify_document(doc, flags, out);
            return code;
        }
        if (*table_cmd) {
            const MonadDocument doc = parse_document(read_file(path));
            const Window w = parse_window(flags.window);
            try {
                const CohTable t = coh_table(doc.monad, w, flags.prime);
                write_output(flags.out, table_in_format(t, flags.format), out);
                if (auto v = t.first_violation()) {
                    err << "natural cohomology fails at " << to_string(*v) << '\n';
                    return kCheckFailed;
                }
                return kOk;
            } catch (const MixedMonadCohomology& e) {
                err << e.what() << '\n';
                return kCheckFailed;
            } catch (const NotAComplex& e) {
                err << e.what() << '\n';
                return kCheckFailed;
            }
        }
        if (*dual_cmd) {
            const MonadDocument doc = parse_document(read_file(path));
            write_output(flags.out, emit_document(dual_document(doc)), out);
            return kOk;
        }
        if (*shape_cmd) {
            HilbertParams p;
            p.gamma = parse_rational(gamma_text);
            p.alpha = parse_rational(alpha_text);
            p.beta = parse_rational(beta_text);
            p.r = rank_multiple ? *rank_multiple : 1;
            const MonadShape s = monad_shape(p);
            if (flags.format == "json") {
                Json j;
                j["shift"] = Json::array({s.shift.a, s.shift.b});
                j["r"] = s.r;
                j["kind"] = s.kind;
                j["A"] = to_json(s.A);
                j["B"] = to_json(s.B);
                j["C"] = to_json(s.C);
                Json e = Json::array();
                for (const auto& x : s.entries)
                    e.push_back({{"bundle", Json::array({x.bundle.a, x.bundle.b})},
                                 {"term", to_string(x.term)},
                                 {"exponent", x.exponent}});
                j["entries"] = std::move(e);
                out << j.dump(2) << '\n';
            } else {
                out << "shift " << to_string(s.shift) << (s.shift == Bidegree{} ? " (none)" : "") << '\n';
                out << "r " << s.r << '\n';
                for (const auto& x : s.entries)
                    out << "  O" << to_string(x.bundle) << " -> " << to_string(x.term) << "^" << x.exponent << '\n';
                out << "kind " << s.kind << '\n';
                out << "A = " << (s.A.empty() ? "0" : to_string(s.A)) << '\n';
                out << "B = " << (s.B.empty() ? "0" : to_string(s.B)) << '\n';
                out << "C = " << (s.C.empty() ? "0" : to_string(s.C)) << '\n';
            }
            return kOk;
        }
        if (*example_cmd) {
            const MonadDocument doc = example_document(example_name);
            if (!flags.out.empty()) write_output(flags.out, emit_document(doc), out);
            const Monad& m = doc.monad;
            out << "example " << example_name << ": r = " << doc.params.r << ", gamma = " << to_string(doc.params.gamma)
                << '\n';
            out << "monad " << to_string(m.A()) << " -> " << to_string(m.B()) << " -> " << to_string(m.C()) << '\n';
            if (!m.A().empty()) {
                const AnnihilatorSpace L = build_L(m.f(), m.C());
                out << "dim V = " << L.space.dimension() << '\n';
                out << "linear conditions = " << L.conditions.rows() << " (" << L.conditions.rows() / m.A().size()
                    << " per column of f)\n";
                out << "dim L = " << L.dimension() << '\n';
                if (L.conditions.rows() > 0) out << "first condition: " << condition_text(L, 0) << '\n';
            }
            const int code = verify_document(doc, flags, out);
            out << "example " << (code == kOk ? "passes" : "fails") << " all checks\n";
            return code;
        }
    } catch (const RetriesExhausted& e) {
        err << e.what() << '\n';
        if (const auto* bad = e.last_report.first_failure())
            err << "last failing condition: " << bad->name << " " << dims_text(bad->observed) << " (required "
                << dims_text(bad->required) << ")\n";
        return kSearchExhausted;
    } catch (const NoValidShapeWithinShiftBound& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const InvalidParameters& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        // Inconsistent document content (shapes, bidegrees).
        err << e.what() << '\n';
        return kInputError;
    }
    return kUsage;
}

}  // namespace natcoh::cli
