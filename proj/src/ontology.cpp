#include "geom/ontology.hpp"

#include "geom/error.hpp"
#include "geom/solution_graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

namespace geom {

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view s)
{
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == s) return static_cast<Enum>(i);
    }
    return std::nullopt;
}

constexpr std::array<std::string_view, 3> kSkillKinds = {"fact", "object", "method"};
constexpr std::array<std::string_view, 3> kAttributeValues = {"no", "perhaps", "yes"};
constexpr std::array<std::string_view, kAttributeCount> kAttributes = {
    "key_problem", "synthetic",   "technical", "aesthetic", "educational",
    "competition", "formal",      "cumbersome", "important",
};
constexpr std::array<std::string_view, 2> kSubtypes = {"problem_theorem", "problem_method"};
constexpr std::array<std::string_view, kProblemTypeCount> kProblemTypes = {
    "computational", "construction", "proof", "locus", "max_min", "cutting", "inequality",
};
constexpr std::array<std::string_view, 4> kBands = {"basic", "advanced", "olympiad", "very_difficult"};

} // namespace

std::string_view to_string(SkillKind k) { return kSkillKinds[static_cast<std::size_t>(k)]; }
std::optional<SkillKind> skill_kind_from_string(std::string_view s) { return lookup<SkillKind>(kSkillKinds, s); }

std::string_view to_string(AttributeValue v) { return kAttributeValues[static_cast<std::size_t>(v)]; }
std::optional<AttributeValue> attribute_value_from_string(std::string_view s)
{
    return lookup<AttributeValue>(kAttributeValues, s);
}

std::string_view to_string(Attribute a) { return kAttributes[static_cast<std::size_t>(a)]; }
std::optional<Attribute> attribute_from_string(std::string_view s) { return lookup<Attribute>(kAttributes, s); }

std::string_view to_string(KeyProblemSubtype s) { return kSubtypes[static_cast<std::size_t>(s)]; }
std::optional<KeyProblemSubtype> key_problem_subtype_from_string(std::string_view s)
{
    return lookup<KeyProblemSubtype>(kSubtypes, s);
}

std::string_view to_string(ProblemType t) { return kProblemTypes[static_cast<std::size_t>(t)]; }
std::optional<ProblemType> problem_type_from_string(std::string_view s)
{
    return lookup<ProblemType>(kProblemTypes, s);
}

std::string_view to_string(DifficultyBand b) { return kBands[static_cast<std::size_t>(b)]; }
std::optional<DifficultyBand> difficulty_band_from_string(std::string_view s)
{
    return lookup<DifficultyBand>(kBands, s);
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::size_t ProblemTypeFlags::count() const
{
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

const Step* SolutionGraph::find_step(std::string_view step_id) const
{
    for (const auto& s : steps) {
        if (s.id == step_id) return &s;
    }
    return nullptr;
}

Catalog::Catalog(std::vector<Skill> skills, std::vector<Problem> problems, std::vector<SolutionGraph> graphs,
                 SynonymTable synonyms)
    : skills_(std::move(skills)),
      problems_(std::move(problems)),
      graphs_(std::move(graphs)),
      synonyms_(std::move(synonyms))
{
    reindex();
}

void Catalog::reindex()
{
    skill_index_.clear();
    alias_index_.clear();
    problem_index_.clear();
    graph_index_.clear();
    for (std::size_t i = 0; i < skills_.size(); ++i) {
        skill_index_.emplace(skills_[i].id, i);
        alias_index_.emplace(lower(skills_[i].name), i);
        for (const auto& a : skills_[i].aliases) alias_index_.emplace(lower(a), i);
    }
    for (std::size_t i = 0; i < problems_.size(); ++i) problem_index_.emplace(problems_[i].id, i);
    for (std::size_t i = 0; i < graphs_.size(); ++i) graph_index_.emplace(graphs_[i].id, i);
}

const Skill* Catalog::find_skill(std::string_view id) const
{
    auto it = skill_index_.find(std::string(id));
    return it == skill_index_.end() ? nullptr : &skills_[it->second];
}

const Skill* Catalog::find_skill_by_alias(std::string_view name) const
{
    auto it = alias_index_.find(lower(name));
    return it == alias_index_.end() ? nullptr : &skills_[it->second];
}

const Problem* Catalog::find_problem(std::string_view id) const
{
    auto it = problem_index_.find(std::string(id));
    return it == problem_index_.end() ? nullptr : &problems_[it->second];
}

const SolutionGraph* Catalog::find_graph(std::string_view id) const
{
    auto it = graph_index_.find(std::string(id));
    return it == graph_index_.end() ? nullptr : &graphs_[it->second];
}

std::vector<const SolutionGraph*> Catalog::graphs_of(const Problem& p) const
{
    std::vector<const SolutionGraph*> out;
    for (const auto& id : p.graphs) {
        if (const auto* g = find_graph(id)) out.push_back(g);
    }
    return out;
}

bool Catalog::operator==(const Catalog& other) const
{
    return skills_ == other.skills_ && problems_ == other.problems_ && graphs_ == other.graphs_ &&
           synonyms_ == other.synonyms_;
}

Catalog add_skill(const Catalog& catalog, Skill skill)
{
    if (skill.name.empty()) throw Error(ErrorCode::EmptyName, "skill '" + skill.id + "' has an empty name");
    if (catalog.find_skill(skill.id)) throw Error(ErrorCode::DuplicateId, "skill id '" + skill.id + "' already exists");
    auto skills = catalog.skills();
    skills.push_back(std::move(skill));
    return Catalog(std::move(skills), catalog.problems(), catalog.graphs(), catalog.synonyms());
}

Catalog add_problem(const Catalog& catalog, Problem problem, std::vector<SolutionGraph> graphs)
{
    if (catalog.find_problem(problem.id)) {
        throw Error(ErrorCode::DuplicateId, "problem id '" + problem.id + "' already exists");
    }
    auto all_graphs = catalog.graphs();
    for (auto& g : graphs) {
        if (catalog.find_graph(g.id)) throw Error(ErrorCode::DuplicateId, "graph id '" + g.id + "' already exists");
        g.problem_id = problem.id;
        if (std::find(problem.graphs.begin(), problem.graphs.end(), g.id) == problem.graphs.end()) {
            problem.graphs.push_back(g.id);
        }
        all_graphs.push_back(std::move(g));
    }
    auto problems = catalog.problems();
    problems.push_back(std::move(problem));
    return Catalog(catalog.skills(), std::move(problems), std::move(all_graphs), catalog.synonyms());
}

DifficultyBand difficulty_band(int d)
{
    if (d < 1 || d > 40) {
        throw Error(ErrorCode::OutOfRange, "difficulty " + std::to_string(d) + " is outside 1..40");
    }
    if (d <= 10) return DifficultyBand::Basic;
    if (d <= 20) return DifficultyBand::Advanced;
    if (d <= 30) return DifficultyBand::Olympiad;
    return DifficultyBand::VeryDifficult;
}

std::size_t count_errors(const std::vector<Diagnostic>& diags)
{
    return static_cast<std::size_t>(
        std::count_if(diags.begin(), diags.end(), [](const auto& d) { return d.severity == Severity::Error; }));
}

std::vector<Diagnostic> lint_catalog(const Catalog& catalog)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string subject, std::string code, std::string msg) {
        out.push_back({Severity::Error, std::move(code), std::move(subject), std::move(msg)});
    };
    auto warning = [&](std::string subject, std::string code, std::string msg) {
        out.push_back({Severity::Warning, std::move(code), std::move(subject), std::move(msg)});
    };

    // Ids share one namespace so a subject id in a diagnostic is unambiguous.
    std::map<std::string, int> id_uses;
    for (const auto& s : catalog.skills()) ++id_uses[s.id];
    for (const auto& p : catalog.problems()) ++id_uses[p.id];
    for (const auto& g : catalog.graphs()) ++id_uses[g.id];
    for (const auto& [id, n] : id_uses) {
        if (id.empty()) error(id, "EMPTY_ID", "an item has an empty id");
        if (n > 1) error(id, "DUPLICATE_ID", "id '" + id + "' is used " + std::to_string(n) + " times");
    }

    for (const auto& s : catalog.skills()) {
        if (s.name.empty()) error(s.id, "EMPTY_NAME", "skill has an empty name");
        std::set<std::string> seen;
        for (const auto& a : s.aliases) {
            if (lower(a) == lower(s.name)) error(s.id, "ALIAS_IS_NAME", "alias '" + a + "' repeats the skill name");
            if (!seen.insert(lower(a)).second) error(s.id, "DUPLICATE_ALIAS", "alias '" + a + "' listed twice");
        }
    }

    std::set<std::string> referenced_skills;
    std::set<std::string> owned_graphs;
    for (const auto& p : catalog.problems()) {
        if (p.difficulty < 1 || p.difficulty > 40) {
            error(p.id, "DIFFICULTY_RANGE", "difficulty " + std::to_string(p.difficulty) + " is outside 1..40");
        }
        const auto flags = p.type_flags.count();
        if (flags == 0) error(p.id, "NO_TYPE_FLAG", "no problem type flag is set");
        if (flags > 1) warning(p.id, "MULTI_TYPE", std::to_string(flags) + " problem type flags are set");
        const auto key = p.attributes.get(Attribute::KeyProblem);
        if (key == AttributeValue::No && p.attributes.key_problem_subtype) {
            error(p.id, "SUBTYPE_WITHOUT_KEY", "key problem subtype set but key_problem is no");
        }
        if (key == AttributeValue::Yes && !p.attributes.key_problem_subtype) {
            warning(p.id, "KEY_WITHOUT_SUBTYPE", "key problem has no Problem-Theorem/Problem-Method subtype");
        }
        if (p.provenance.named_problem && p.provenance.named_problem->empty()) {
            error(p.id, "EMPTY_NAMED_PROBLEM", "named_problem is present but empty");
        }
        for (std::size_t i = 0; i < p.givens.size(); ++i) {
            try {
                check_arity(p.givens[i]);
            } catch (const Error& e) {
                error(p.id, "BAD_STATEMENT", "given " + std::to_string(i) + ": " + e.what());
            }
        }
        if (p.graphs.empty()) warning(p.id, "NO_GRAPHS", "problem has no solution graphs");
        for (const auto& gid : p.graphs) {
            const auto* g = catalog.find_graph(gid);
            if (!g) {
                error(p.id, "DANGLING_GRAPH", "graph '" + gid + "' does not exist");
                continue;
            }
            owned_graphs.insert(gid);
            if (g->problem_id != p.id) {
                error(gid, "GRAPH_OWNER", "graph belongs to '" + g->problem_id + "', listed by '" + p.id + "'");
            }
        }
    }

    for (const auto& g : catalog.graphs()) {
        if (!owned_graphs.count(g.id)) error(g.id, "ORPHAN_GRAPH", "no problem lists this graph");
        for (auto& d : validate_dag(g)) out.push_back(std::move(d));
        const auto* problem = catalog.find_problem(g.problem_id);
        for (const auto& step : g.steps) {
            if (const auto* given = std::get_if<GivenRef>(&step.statement)) {
                if (problem && given->index >= problem->givens.size()) {
                    error(g.id, "GIVEN_INDEX", "step '" + step.id + "' binds to missing given " +
                                                   std::to_string(given->index));
                }
                continue;
            }
            referenced_skills.insert(step.skill_id);
            if (!catalog.find_skill(step.skill_id)) {
                error(g.id, "DANGLING_SKILL", "step '" + step.id + "' references unknown skill '" + step.skill_id + "'");
            }
            try {
                check_arity(std::get<Statement>(step.statement));
            } catch (const Error& e) {
                error(g.id, "BAD_STATEMENT", "step '" + step.id + "': " + e.what());
            }
        }
    }

    for (const auto& s : catalog.skills()) {
        if (!referenced_skills.count(s.id)) warning(s.id, "UNUSED_SKILL", "skill is not used by any solution graph");
    }

    std::sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.subject, a.code, a.message) < std::tie(b.subject, b.code, b.message);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace geom
