#pragma once

#include "geom/statement.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace geom {

enum class SkillKind { Fact, Object, Method };

std::string_view to_string(SkillKind k);
std::optional<SkillKind> skill_kind_from_string(std::string_view s);

struct Skill {
    std::string id;
    SkillKind kind = SkillKind::Fact;
    std::string name;
    std::string description;
    std::vector<std::string> aliases; // alternate names used when matching reasons

    bool operator==(const Skill&) const = default;
};

// Ordinal: No < Perhaps < Yes.
enum class AttributeValue { No = 0, Perhaps = 1, Yes = 2 };

std::string_view to_string(AttributeValue v);
std::optional<AttributeValue> attribute_value_from_string(std::string_view s);

enum class Attribute {
    KeyProblem,
    Synthetic,
    Technical,
    Aesthetic,
    Educational,
    Competition,
    Formal,
    Cumbersome,
    Important,
};
inline constexpr std::size_t kAttributeCount = 9;

std::string_view to_string(Attribute a);
std::optional<Attribute> attribute_from_string(std::string_view s);

enum class KeyProblemSubtype { ProblemTheorem, ProblemMethod };

std::string_view to_string(KeyProblemSubtype s);
std::optional<KeyProblemSubtype> key_problem_subtype_from_string(std::string_view s);

struct ProblemAttributes {
    std::array<AttributeValue, kAttributeCount> values{}; // all No by default
    std::optional<KeyProblemSubtype> key_problem_subtype;

    AttributeValue get(Attribute a) const { return values[static_cast<std::size_t>(a)]; }
    void set(Attribute a, AttributeValue v) { values[static_cast<std::size_t>(a)] = v; }

    bool operator==(const ProblemAttributes&) const = default;
};

// Problem type and answer form. Generally exactly one flag is set.
enum class ProblemType {
    Computational,
    Construction,
    Proof,
    Locus,
    MaxMin,
    Cutting,
    Inequality,
};
inline constexpr std::size_t kProblemTypeCount = 7;

std::string_view to_string(ProblemType t);
std::optional<ProblemType> problem_type_from_string(std::string_view s);

struct ProblemTypeFlags {
    std::array<bool, kProblemTypeCount> flags{};

    bool get(ProblemType t) const { return flags[static_cast<std::size_t>(t)]; }
    void set(ProblemType t, bool v = true) { flags[static_cast<std::size_t>(t)] = v; }
    std::size_t count() const;

    bool operator==(const ProblemTypeFlags&) const = default;
};

struct Provenance {
    std::vector<std::string> authors;
    std::vector<std::string> sources;
    std::optional<std::string> named_problem;
    std::vector<std::string> competitions;

    bool operator==(const Provenance&) const = default;
};

struct Problem {
    std::string id;
    std::string statement_text;
    std::vector<Statement> givens;
    int difficulty = 1;
    ProblemAttributes attributes;
    ProblemTypeFlags type_flags;
    Provenance provenance;
    std::vector<std::string> graphs; // solution graph ids

    bool operator==(const Problem&) const = default;
};

// A Given step binds to the problem's k-th given.
struct GivenRef {
    std::size_t index = 0;
    bool operator==(const GivenRef&) const = default;
};

struct Step {
    std::string id;
    std::string skill_id; // empty for Given steps
    std::variant<Statement, GivenRef> statement;
    bool is_goal = false;

    bool is_given() const { return std::holds_alternative<GivenRef>(statement); }
    bool operator==(const Step&) const = default;
};

// Edge (from, to): step `to` depends on step `from`.
struct SolutionGraph {
    std::string id;
    std::string problem_id;
    std::vector<Step> steps;
    std::vector<std::pair<std::string, std::string>> edges;

    const Step* find_step(std::string_view step_id) const;
    bool operator==(const SolutionGraph&) const = default;
};

// (alias, canonical) word pairs applied during token normalisation.
using SynonymTable = std::vector<std::pair<std::string, std::string>>;

// Immutable snapshot of skills, problems and their solution graphs. Every
// "mutation" returns a new snapshot, so a snapshot can be shared freely
// between readers. Duplicate ids are representable (the loader keeps them so
// lint can report them); lookups return the first occurrence.
class Catalog {
public:
    Catalog() = default;
    Catalog(std::vector<Skill> skills, std::vector<Problem> problems,
            std::vector<SolutionGraph> graphs, SynonymTable synonyms = {});

    const std::vector<Skill>& skills() const { return skills_; }
    const std::vector<Problem>& problems() const { return problems_; }
    const std::vector<SolutionGraph>& graphs() const { return graphs_; }
    const SynonymTable& synonyms() const { return synonyms_; }

    const Skill* find_skill(std::string_view id) const;
    // Case-insensitive lookup by name or alias.
    const Skill* find_skill_by_alias(std::string_view name) const;
    const Problem* find_problem(std::string_view id) const;
    const SolutionGraph* find_graph(std::string_view id) const;

    // Graphs of a problem that resolve, in the problem's listed order.
    std::vector<const SolutionGraph*> graphs_of(const Problem& p) const;

    bool operator==(const Catalog& other) const;

private:
    void reindex();

    std::vector<Skill> skills_;
    std::vector<Problem> problems_;
    std::vector<SolutionGraph> graphs_;
    SynonymTable synonyms_;
    std::unordered_map<std::string, std::size_t> skill_index_;
    std::unordered_map<std::string, std::size_t> alias_index_;
    std::unordered_map<std::string, std::size_t> problem_index_;
    std::unordered_map<std::string, std::size_t> graph_index_;
};

// Returns a new snapshot containing `skill`. Throws DuplicateId or EmptyName.
Catalog add_skill(const Catalog& catalog, Skill skill);

// Returns a new snapshot with the problem and its graphs. Throws DuplicateId.
Catalog add_problem(const Catalog& catalog, Problem problem, std::vector<SolutionGraph> graphs);

enum class DifficultyBand { Basic, Advanced, Olympiad, VeryDifficult };

std::string_view to_string(DifficultyBand b);
std::optional<DifficultyBand> difficulty_band_from_string(std::string_view s);

// 1-10 Basic, 11-20 Advanced, 21-30 Olympiad, 31-40 VeryDifficult.
// Throws OutOfRange outside [1, 40].
DifficultyBand difficulty_band(int d);

enum class Severity { Error, Warning };

std::string_view to_string(Severity s);

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string subject; // id of the skill, problem or graph concerned
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// Pure and deterministic; ordered by (subject, code, message).
std::vector<Diagnostic> lint_catalog(const Catalog& catalog);

std::size_t count_errors(const std::vector<Diagnostic>& diags);

} // namespace geom
