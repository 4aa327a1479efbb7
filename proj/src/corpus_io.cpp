#include "geom/corpus_io.hpp"

#include "geom/json_codec.hpp"

#include <fstream>
#include <sstream>

namespace geom {

LintError::LintError(std::vector<Diagnostic> diagnostics, std::string where)
    : Error(ErrorCode::LintErrors,
            std::to_string(count_errors(diagnostics)) + " lint error(s); first: " +
                (diagnostics.empty() ? std::string("none") : diagnostics.front().code + " " + diagnostics.front().subject),
            std::move(where)),
      diagnostics_(std::move(diagnostics))
{
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "error reading '" + path.string() + "'", path.string());
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing", path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "error writing '" + path.string() + "'", path.string());
}

namespace {

json parse_json(std::string_view text, std::string_view source)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto where = std::string(source) + "@" + std::to_string(e.byte);
        throw ParseError(e.byte, {}, std::string(source) + ": " + e.what(), ErrorCode::ParseError, where);
    }
}

} // namespace

Catalog parse_corpus_unchecked(std::string_view text, std::string_view source)
{
    return catalog_from_json(parse_json(text, source), source);
}

Catalog parse_corpus(std::string_view text, std::string_view source, std::vector<Diagnostic>* warnings)
{
    auto catalog = parse_corpus_unchecked(text, source);
    auto diags = lint_catalog(catalog);
    if (count_errors(diags) > 0) throw LintError(std::move(diags), std::string(source));
    if (warnings) *warnings = std::move(diags);
    return catalog;
}

Catalog load_corpus(const std::filesystem::path& path, std::vector<Diagnostic>* warnings)
{
    return parse_corpus(read_file(path), path.string(), warnings);
}

std::string serialize_corpus(const Catalog& catalog)
{
    return dump_canonical(catalog_to_json(catalog));
}

void save_corpus(const Catalog& catalog, const std::filesystem::path& path)
{
    write_file(path, serialize_corpus(catalog));
}

ScriptFile parse_script(std::string_view text, std::string_view source)
{
    const auto j = parse_json(text, source);
    const json::json_pointer root;
    auto fail = [&](const json::json_pointer& at, const std::string& msg) {
        const auto where = std::string(source) + "#" + at.to_string();
        throw Error(ErrorCode::ParseError, msg + " at " + where, where);
    };
    if (!j.is_object()) fail(root, "expected an object");
    for (const auto& [key, _] : j.items()) {
        if (key != "schema_version" && key != "problem_id" && key != "profile" && key != "lines") {
            fail(root / key, "unknown key '" + key + "'");
        }
    }
    if (j.contains("schema_version")) {
        const auto& v = j["schema_version"];
        if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
            throw Error(ErrorCode::SchemaVersionMismatch, "unsupported schema_version " + v.dump(),
                        std::string(source) + "#/schema_version");
        }
    }
    ScriptFile s;
    if (!j.contains("problem_id") || !j["problem_id"].is_string()) fail(root / "problem_id", "expected a string");
    s.problem_id = j["problem_id"].get<std::string>();
    if (j.contains("profile")) {
        const auto& p = j["profile"];
        if (!p.is_array()) fail(root / "profile", "expected an array");
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i].is_string()) fail(root / "profile" / i, "expected a string");
            s.profile.push_back(p[i].get<std::string>());
        }
    }
    if (!j.contains("lines") || !j["lines"].is_array()) fail(root / "lines", "expected an array");
    const auto& lines = j["lines"];
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto l = proof_line_from_json(lines[i], source, root / "lines" / i);
        if (l.index != static_cast<int>(i) + 1) {
            fail(root / "lines" / i / "index", "line indices must run 1, 2, 3, ...");
        }
        s.lines.push_back(std::move(l));
    }
    return s;
}

ScriptFile load_script(const std::filesystem::path& path)
{
    return parse_script(read_file(path), path.string());
}

std::string serialize_script(const ScriptFile& script)
{
    json lines = json::array();
    for (const auto& l : script.lines) lines.push_back(to_json(l));
    return dump_canonical({
        {"schema_version", kSchemaVersion},
        {"problem_id", script.problem_id},
        {"profile", script.profile},
        {"lines", lines},
    });
}

void save_report(const TeacherReport& report, const std::filesystem::path& path, std::string_view format)
{
    if (format == "json") {
        write_file(path, dump_canonical(to_json(report)));
    } else if (format == "text") {
        write_file(path, to_text(report));
    } else {
        throw Error(ErrorCode::UnsupportedFormat, "unsupported report format '" + std::string(format) + "'");
    }
}

TeacherReport load_report(const std::filesystem::path& path)
{
    return report_from_json(parse_json(read_file(path), path.string()), path.string());
}

} // namespace geom
