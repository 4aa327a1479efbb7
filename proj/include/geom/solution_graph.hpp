#pragma once

#include "geom/ontology.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geom {

// Index-based adjacency over a graph's steps. Edges naming unknown steps are
// skipped (validate_dag reports them).
class GraphView {
public:
    explicit GraphView(const SolutionGraph& graph);

    const SolutionGraph& graph() const { return *graph_; }
    std::size_t size() const { return graph_->steps.size(); }
    std::optional<std::size_t> index_of(std::string_view step_id) const;
    const std::vector<std::size_t>& predecessors(std::size_t i) const { return preds_[i]; }
    const std::vector<std::size_t>& successors(std::size_t i) const { return succs_[i]; }
    std::optional<std::size_t> goal() const;

    // Kahn order; nullopt when the graph has a cycle.
    std::optional<std::vector<std::size_t>> topological_order() const;

    // Steps from which the goal is reachable (the goal included).
    std::vector<bool> goal_ancestors() const;

private:
    const SolutionGraph* graph_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<std::vector<std::size_t>> preds_;
    std::vector<std::vector<std::size_t>> succs_;
};

// Cycles (one witness each), dead steps, goal count, Given in-degree, dangling
// edges and duplicate step ids. An empty result means the graph is valid.
std::vector<Diagnostic> validate_dag(const SolutionGraph& graph);

bool has_cycle(const SolutionGraph& graph);

std::set<std::string> skill_set(const SolutionGraph& graph);

using SkillWeights = std::map<std::string, double, std::less<>>;

// Sum of weights over non-Given steps; each application counts. Skills not
// in `weights` weigh 1.
double graph_cost(const SolutionGraph& graph, const SkillWeights& weights = {});

enum class SkillRequirement { EveryGraph, SomeGraphs, NoGraph };

std::string_view to_string(SkillRequirement r);

// Throws NoGraphs when `graphs` is empty.
SkillRequirement requires_skill(const Problem& problem, std::span<const SolutionGraph* const> graphs,
                                std::string_view skill);

struct ShortcutResult {
    bool exists = false;
    std::string witness; // first shortcut graph in id order
    bool operator==(const ShortcutResult&) const = default;
};

// A shortcut is a graph avoiding `target` whose skills are all in `known`.
ShortcutResult shortcut_exists(const Problem& problem, std::span<const SolutionGraph* const> graphs,
                               const std::set<std::string>& known, std::string_view target);

} // namespace geom
