#pragma once

#include "geom/ontology.hpp"
#include "geom/solution_graph.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geom {

enum class NecessityMode { Strict, Efficiency };

std::string_view to_string(NecessityMode m);
std::optional<NecessityMode> necessity_mode_from_string(std::string_view s);

// Problems whose attribute is closer to `preferred` rank first; Perhaps sits
// between Yes and No.
struct AttributePref {
    Attribute attribute = Attribute::KeyProblem;
    AttributeValue preferred = AttributeValue::Yes;

    bool operator==(const AttributePref&) const = default;
};

std::vector<AttributePref> default_attribute_prefs();

struct SetRequest {
    std::string target;
    std::set<std::string> known;
    int count = 10;
    std::optional<std::pair<int, int>> difficulty_range;
    NecessityMode mode = NecessityMode::Strict;
    double ratio = 1.5;
    std::vector<AttributePref> prefs = default_attribute_prefs();
    bool reinforce = false; // lifts target-not-known and drops C3
    SkillWeights weights;
};

struct CriteriaRecord {
    bool c1 = false;                      // some graph uses only known skills and the target
    bool c2 = false;                      // one of those graphs uses the target
    bool c3 = false;                      // no cheap enough shortcut
    bool eligible = false;
    std::string witness;                  // cheapest C1+C2 graph, empty if none
    std::vector<std::string> feasible;    // C1+C2 graphs, id order
    std::vector<std::string> shortcuts;   // graphs avoiding the target using known skills
    double witness_cost = 0.0;
    std::optional<double> shortcut_cost; // cheapest shortcut

    bool operator==(const CriteriaRecord&) const = default;
};

// Throws UnknownSkill, TargetKnown (unless reinforce), NoGraphs.
CriteriaRecord eligible(const Catalog& catalog, const Problem& problem, const SetRequest& request);

struct SetEntry {
    std::string problem_id;
    int difficulty = 0;
    CriteriaRecord criteria;
};

struct ProblemSet {
    std::vector<SetEntry> entries;
    std::size_t eligible_count = 0;
    std::vector<std::string> notes; // SHORTFALL when fewer than count qualify
};

// Throws UnknownSkill, TargetKnown, InvalidArgument (count < 1, ratio <= 1),
// BadRange (difficulty range outside 1..40 or reversed).
ProblemSet build_set(const Catalog& catalog, const SetRequest& request);

struct Rationale {
    std::string problem_id;
    int difficulty = 0;
    DifficultyBand band = DifficultyBand::Basic;
    std::string witness;
    CriteriaRecord criteria;
};

struct SetReport {
    std::string target;
    NecessityMode mode = NecessityMode::Strict;
    double ratio = 1.5;
    std::size_t requested = 0;
    std::vector<Rationale> blocks;
    std::vector<std::string> notes;
};

SetReport explain_set(const Catalog& catalog, const SetRequest& request, const ProblemSet& set);

std::string to_text(const SetReport& report);

} // namespace geom
