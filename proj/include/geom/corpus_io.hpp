#pragma once

#include "geom/error.hpp"
#include "geom/ontology.hpp"
#include "geom/validation.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace geom {

inline constexpr int kSchemaVersion = 1;

// Raised by load_corpus when lint reports errors.
class LintError : public Error {
public:
    LintError(std::vector<Diagnostic> diagnostics, std::string where);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

// Parses, checks the schema version, parses every statement and lints.
// Lint warnings go to `warnings` when given. Throws IoError,
// SchemaVersionMismatch, ParseError (where = "<path>#<json pointer>" or
// "<path>@<byte offset>") and LintError.
Catalog load_corpus(const std::filesystem::path& path, std::vector<Diagnostic>* warnings = nullptr);

// Same as load_corpus over in-memory text; `source` names it in errors.
Catalog parse_corpus(std::string_view text, std::string_view source, std::vector<Diagnostic>* warnings = nullptr);

// Like parse_corpus but skips lint, for tools that report diagnostics
// themselves.
Catalog parse_corpus_unchecked(std::string_view text, std::string_view source);

// Canonical bytes: keys sorted, two-space indent, LF endings, statements in
// canonical rendering, trailing newline.
std::string serialize_corpus(const Catalog& catalog);
void save_corpus(const Catalog& catalog, const std::filesystem::path& path);

struct ScriptFile {
    std::string problem_id;
    std::vector<std::string> profile; // known skill ids
    std::vector<ProofLine> lines;

    bool operator==(const ScriptFile&) const = default;
};

ScriptFile load_script(const std::filesystem::path& path);
ScriptFile parse_script(std::string_view text, std::string_view source);
std::string serialize_script(const ScriptFile& script);

// format is "json" or "text"; anything else throws UnsupportedFormat.
void save_report(const TeacherReport& report, const std::filesystem::path& path, std::string_view format);
TeacherReport load_report(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace geom
