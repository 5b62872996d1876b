#pragma once

// The monad JSON document and table export.
//
//   {
//     "A": [[-1,-1], ...], "B": [...], "C": [...],
//     "f": [["<entry>", ...], ...],      rows of polynomial text
//     "g": [[...], ...],
//     "params": {"r": 2, "gamma": "2", "alpha": "0", "beta": "0", "seed": 0},
//     "certificate": {...}               optional
//   }
//
// Keys are emitted sorted with two-space indentation, so equal documents are
// byte-identical.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "natcoh/certify.hpp"
#include "natcoh/monad.hpp"
#include "natcoh/search.hpp"

namespace natcoh {

using Json = nlohmann::json;

struct MonadDocument {
    Monad monad;
    HilbertParams params;
    std::optional<std::uint64_t> seed;
    /// Null when absent.
    Json certificate;
};

Json to_json(const LineBundleSum& s);
Json to_json(const SheafMap& phi);
Json to_json(const ConditionReport& rep);
Json to_json(const SurjectivityCertificate& c);
Json to_json(const Certificate& c);
Json to_json(const CohTable& t);
Json to_json(const MonadDocument& doc);

/// Throws ParseError (and the library errors for inconsistent content).
MonadDocument parse_document(const std::string& text);
std::string emit_document(const MonadDocument& doc);

/// The Serre dual document: dual monad, alpha and beta negated, no certificate.
MonadDocument dual_document(const MonadDocument& doc);

/// Columns a,b,h0,h1,h2,chi,flag; rows in display order.
std::string table_csv(const CohTable& t);
/// Aligned text, one line per twist in display order.
std::string table_text(const CohTable& t);

}  // namespace natcoh
