#pragma once

#include "geom/error.hpp"
#include "geom/ontology.hpp"
#include "geom/selector.hpp"
#include "geom/validation.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace geom {

using json = nlohmann::json;

// Two-space indent, keys sorted, UTF-8 passed through, trailing newline.
// Every JSON document the CLI prints or the service returns goes through here.
std::string dump_canonical(const json& j);

json to_json(const Skill& s);
json to_json(const Diagnostic& d);
json to_json(const std::vector<Diagnostic>& diags);
json to_json(const MatchResult& m);
json to_json(const LineVerdict& v);
json to_json(const ProofLine& l);
json to_json(const TeacherReport& r);
json to_json(const SessionSummary& s);
json to_json(const Hint& h);
json to_json(const SetReport& r);

// Problem with its graphs embedded, as stored in a corpus file.
json problem_to_json(const Catalog& catalog, const Problem& p);
// Problem listing entry for browsing: no graphs, band included.
json problem_summary_json(const Problem& p);

json catalog_to_json(const Catalog& catalog);

// Strict decoders: unknown keys and wrong types raise Error(ParseError) whose
// where() is "<source>#<json pointer>".
Catalog catalog_from_json(const json& j, std::string_view source);
TeacherReport report_from_json(const json& j, std::string_view source);
ProofLine proof_line_from_json(const json& j, std::string_view source, const json::json_pointer& at);

// Error body: {code, message, status, detail{where, position?, expected?}}.
json error_to_json(const Error& e, int status);

std::string to_text(const TeacherReport& r);
std::string to_text(const std::vector<Diagnostic>& diags);

} // namespace geom
