#include "geom/solution_graph.hpp"

#include "geom/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace geom {

GraphView::GraphView(const SolutionGraph& graph)
    : graph_(&graph), preds_(graph.steps.size()), succs_(graph.steps.size())
{
    for (std::size_t i = 0; i < graph.steps.size(); ++i) index_.emplace(graph.steps[i].id, i);
    for (const auto& [from, to] : graph.edges) {
        auto f = index_of(from);
        auto t = index_of(to);
        if (!f || !t) continue;
        if (std::find(succs_[*f].begin(), succs_[*f].end(), *t) != succs_[*f].end()) continue;
        succs_[*f].push_back(*t);
        preds_[*t].push_back(*f);
    }
}

std::optional<std::size_t> GraphView::index_of(std::string_view step_id) const
{
    auto it = index_.find(step_id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> GraphView::goal() const
{
    for (std::size_t i = 0; i < graph_->steps.size(); ++i) {
        if (graph_->steps[i].is_goal) return i;
    }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> GraphView::topological_order() const
{
    std::vector<std::size_t> indegree(size());
    for (std::size_t i = 0; i < size(); ++i) indegree[i] = preds_[i].size();
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < size(); ++i) {
        if (indegree[i] == 0) ready.push_back(i);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto n = ready.front();
        ready.pop_front();
        order.push_back(n);
        for (auto s : succs_[n]) {
            if (--indegree[s] == 0) ready.push_back(s);
        }
    }
    if (order.size() != size()) return std::nullopt;
    return order;
}

std::vector<bool> GraphView::goal_ancestors() const
{
    std::vector<bool> seen(size(), false);
    auto g = goal();
    if (!g) return seen;
    std::vector<std::size_t> stack{*g};
    seen[*g] = true;
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        for (auto p : preds_[n]) {
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
        }
    }
    return seen;
}

namespace {

// Depth-first search for one cycle; the witness starts at its smallest id.
std::optional<std::vector<std::string>> find_cycle(const GraphView& view)
{
    enum class Color { White, Grey, Black };
    std::vector<Color> color(view.size(), Color::White);
    std::vector<std::size_t> path;
    std::optional<std::vector<std::string>> witness;

    std::function<bool(std::size_t)> visit = [&](std::size_t n) {
        color[n] = Color::Grey;
        path.push_back(n);
        for (auto s : view.successors(n)) {
            if (color[s] == Color::Grey) {
                auto start = std::find(path.begin(), path.end(), s);
                std::vector<std::string> cycle;
                for (auto it = start; it != path.end(); ++it) cycle.push_back(view.graph().steps[*it].id);
                auto smallest = std::min_element(cycle.begin(), cycle.end());
                std::rotate(cycle.begin(), smallest, cycle.end());
                witness = std::move(cycle);
                return true;
            }
            if (color[s] == Color::White && visit(s)) return true;
        }
        path.pop_back();
        color[n] = Color::Black;
        return false;
    };

    std::vector<std::size_t> roots(view.size());
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = i;
    std::sort(roots.begin(), roots.end(), [&](auto a, auto b) {
        return view.graph().steps[a].id < view.graph().steps[b].id;
    });
    for (auto r : roots) {
        if (color[r] == Color::White && visit(r)) break;
    }
    return witness;
}

} // namespace

std::vector<Diagnostic> validate_dag(const SolutionGraph& graph)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string code, std::string message) {
        out.push_back({Severity::Error, std::move(code), graph.id, std::move(message)});
    };

    std::set<std::string> ids;
    for (const auto& step : graph.steps) {
        if (!ids.insert(step.id).second) error("DUPLICATE_STEP", "step id '" + step.id + "' appears twice");
    }
    for (const auto& [from, to] : graph.edges) {
        if (!ids.count(from)) error("DANGLING_EDGE", "edge source '" + from + "' is not a step");
        if (!ids.count(to)) error("DANGLING_EDGE", "edge target '" + to + "' is not a step");
    }

    GraphView view(graph);
    std::size_t goals = 0;
    for (const auto& step : graph.steps) {
        if (!step.is_goal) continue;
        ++goals;
        if (step.is_given()) error("GOAL_IS_GIVEN", "goal step '" + step.id + "' is a Given");
    }
    if (goals == 0) error("MISSING_GOAL", "graph has no goal step");
    if (goals > 1) error("MULTIPLE_GOALS", "graph has " + std::to_string(goals) + " goal steps");

    for (std::size_t i = 0; i < view.size(); ++i) {
        if (graph.steps[i].is_given() && !view.predecessors(i).empty()) {
            error("GIVEN_IN_DEGREE", "Given step '" + graph.steps[i].id + "' has incoming edges");
        }
    }

    if (auto cycle = find_cycle(view)) {
        std::string listing;
        for (const auto& id : *cycle) listing += (listing.empty() ? "" : ",") + id;
        error("CYCLE", "dependency cycle [" + listing + "]");
    }

    if (goals == 1) {
        auto ancestors = view.goal_ancestors();
        for (std::size_t i = 0; i < view.size(); ++i) {
            const auto& step = graph.steps[i];
            if (!step.is_given() && !ancestors[i]) {
                error("DEAD_STEP", "step '" + step.id + "' has no path to the goal");
            }
        }
    }
    return out;
}

bool has_cycle(const SolutionGraph& graph)
{
    return !GraphView(graph).topological_order().has_value();
}

std::set<std::string> skill_set(const SolutionGraph& graph)
{
    std::set<std::string> out;
    for (const auto& step : graph.steps) {
        if (!step.is_given()) out.insert(step.skill_id);
    }
    return out;
}

double graph_cost(const SolutionGraph& graph, const SkillWeights& weights)
{
    double total = 0.0;
    for (const auto& step : graph.steps) {
        if (step.is_given()) continue;
        auto it = weights.find(step.skill_id);
        total += it == weights.end() ? 1.0 : it->second;
    }
    return total;
}

std::string_view to_string(SkillRequirement r)
{
    switch (r) {
    case SkillRequirement::EveryGraph: return "every_graph";
    case SkillRequirement::SomeGraphs: return "some_graphs";
    case SkillRequirement::NoGraph: return "no_graph";
    }
    return "no_graph";
}

SkillRequirement requires_skill(const Problem& problem, std::span<const SolutionGraph* const> graphs,
                                std::string_view skill)
{
    if (graphs.empty()) throw Error(ErrorCode::NoGraphs, "problem " + problem.id + " has no solution graphs");
    std::size_t with = 0;
    for (const auto* g : graphs) {
        if (skill_set(*g).count(std::string(skill))) ++with;
    }
    if (with == graphs.size()) return SkillRequirement::EveryGraph;
    if (with > 0) return SkillRequirement::SomeGraphs;
    return SkillRequirement::NoGraph;
}

ShortcutResult shortcut_exists(const Problem&, std::span<const SolutionGraph* const> graphs,
                               const std::set<std::string>& known, std::string_view target)
{
    std::vector<const SolutionGraph*> ordered(graphs.begin(), graphs.end());
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* g : ordered) {
        const auto skills = skill_set(*g);
        if (skills.count(std::string(target))) continue;
        if (std::includes(known.begin(), known.end(), skills.begin(), skills.end())) {
            return {true, g->id};
        }
    }
    return {};
}

} // namespace geom
