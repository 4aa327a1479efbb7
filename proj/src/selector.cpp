#include "geom/selector.hpp"

#include "geom/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace geom {

std::string_view to_string(NecessityMode m) { return m == NecessityMode::Strict ? "strict" : "efficiency"; }

std::optional<NecessityMode> necessity_mode_from_string(std::string_view s)
{
    if (s == "strict") return NecessityMode::Strict;
    if (s == "efficiency") return NecessityMode::Efficiency;
    return std::nullopt;
}

std::vector<AttributePref> default_attribute_prefs()
{
    return {
        {Attribute::KeyProblem, AttributeValue::Yes},
        {Attribute::Educational, AttributeValue::Yes},
        {Attribute::Cumbersome, AttributeValue::No},
    };
}

namespace {

void check_skills(const Catalog& catalog, const SetRequest& request)
{
    if (!catalog.find_skill(request.target)) {
        throw Error(ErrorCode::UnknownSkill, "unknown target skill '" + request.target + "'");
    }
    for (const auto& k : request.known) {
        if (!catalog.find_skill(k)) throw Error(ErrorCode::UnknownSkill, "unknown known skill '" + k + "'");
    }
    if (!request.reinforce && request.known.count(request.target)) {
        throw Error(ErrorCode::TargetKnown,
                    "target '" + request.target + "' is already known; set reinforce to select anyway");
    }
}

int rank_of(const Problem& p, const AttributePref& pref)
{
    return std::abs(static_cast<int>(p.attributes.get(pref.attribute)) - static_cast<int>(pref.preferred));
}

} // namespace

CriteriaRecord eligible(const Catalog& catalog, const Problem& problem, const SetRequest& request)
{
    check_skills(catalog, request);
    auto graphs = catalog.graphs_of(problem);
    if (graphs.empty()) throw Error(ErrorCode::NoGraphs, "problem '" + problem.id + "' has no solution graphs");
    std::sort(graphs.begin(), graphs.end(), [](auto* a, auto* b) { return a->id < b->id; });

    auto allowed = request.known;
    allowed.insert(request.target);

    CriteriaRecord r;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto* g : graphs) {
        const auto skills = skill_set(*g);
        const bool uses_target = skills.count(request.target) > 0;
        if (std::includes(allowed.begin(), allowed.end(), skills.begin(), skills.end())) {
            r.c1 = true;
            if (uses_target) {
                r.feasible.push_back(g->id);
                const double cost = graph_cost(*g, request.weights);
                if (cost < best_cost) {
                    best_cost = cost;
                    r.witness = g->id;
                }
            }
        }
        if (!uses_target && std::includes(request.known.begin(), request.known.end(), skills.begin(), skills.end())) {
            r.shortcuts.push_back(g->id);
            const double cost = graph_cost(*g, request.weights);
            if (!r.shortcut_cost || cost < *r.shortcut_cost) r.shortcut_cost = cost;
        }
    }
    r.c2 = !r.feasible.empty();
    if (r.c2) r.witness_cost = best_cost;

    if (request.reinforce) {
        r.c3 = true;
    } else if (request.mode == NecessityMode::Strict || !r.c2) {
        r.c3 = r.shortcuts.empty();
    } else {
        r.c3 = !r.shortcut_cost || *r.shortcut_cost >= request.ratio * best_cost;
    }
    r.eligible = r.c1 && r.c2 && r.c3;
    return r;
}

ProblemSet build_set(const Catalog& catalog, const SetRequest& request)
{
    if (request.count < 1) {
        throw Error(ErrorCode::InvalidArgument, "count must be positive, got " + std::to_string(request.count));
    }
    if (request.mode == NecessityMode::Efficiency && !(request.ratio > 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "efficiency ratio must exceed 1");
    }
    if (request.difficulty_range) {
        const auto [lo, hi] = *request.difficulty_range;
        if (lo < 1 || hi > 40 || lo > hi) {
            throw Error(ErrorCode::BadRange,
                        "difficulty range " + std::to_string(lo) + ":" + std::to_string(hi) + " is not within 1:40");
        }
    }
    check_skills(catalog, request);

    std::vector<std::pair<const Problem*, CriteriaRecord>> hits;
    for (const auto& p : catalog.problems()) {
        if (catalog.graphs_of(p).empty()) continue;
        if (request.difficulty_range &&
            (p.difficulty < request.difficulty_range->first || p.difficulty > request.difficulty_range->second)) {
            continue;
        }
        auto rec = eligible(catalog, p, request);
        if (rec.eligible) hits.emplace_back(&p, std::move(rec));
    }

    std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
        for (const auto& pref : request.prefs) {
            const int ra = rank_of(*a.first, pref);
            const int rb = rank_of(*b.first, pref);
            if (ra != rb) return ra < rb;
        }
        if (a.first->difficulty != b.first->difficulty) return a.first->difficulty < b.first->difficulty;
        return a.first->id < b.first->id;
    });

    ProblemSet out;
    out.eligible_count = hits.size();
    for (auto& [p, rec] : hits) {
        if (out.entries.size() == static_cast<std::size_t>(request.count)) break;
        out.entries.push_back({p->id, p->difficulty, std::move(rec)});
    }
    if (hits.size() < static_cast<std::size_t>(request.count)) out.notes.push_back("SHORTFALL");
    return out;
}

SetReport explain_set(const Catalog& catalog, const SetRequest& request, const ProblemSet& set)
{
    SetReport r;
    r.target = request.target;
    r.mode = request.mode;
    r.ratio = request.ratio;
    r.requested = static_cast<std::size_t>(std::max(request.count, 0));
    r.notes = set.notes;
    if (set.entries.empty() && std::find(r.notes.begin(), r.notes.end(), "SHORTFALL") == r.notes.end()) {
        r.notes.push_back("SHORTFALL");
    }
    for (const auto& e : set.entries) {
        const auto* p = catalog.find_problem(e.problem_id);
        const int d = p ? p->difficulty : e.difficulty;
        r.blocks.push_back({e.problem_id, d, difficulty_band(d), e.criteria.witness, e.criteria});
    }
    return r;
}

std::string to_text(const SetReport& report)
{
    std::ostringstream os;
    auto yes_no = [](bool b) { return b ? "pass" : "fail"; };
    os << "target " << report.target << ", mode " << to_string(report.mode);
    if (report.mode == NecessityMode::Efficiency) os << " (ratio " << report.ratio << ")";
    os << ", " << report.blocks.size() << " of " << report.requested << " requested\n";
    for (std::size_t i = 0; i < report.blocks.size(); ++i) {
        const auto& b = report.blocks[i];
        os << i + 1 << ". " << b.problem_id << "  difficulty " << b.difficulty << " (" << to_string(b.band) << ")\n";
        os << "   witness graph " << b.witness << ", cost " << b.criteria.witness_cost << "\n";
        os << "   C1 " << yes_no(b.criteria.c1) << ", C2 " << yes_no(b.criteria.c2) << ", C3 "
           << yes_no(b.criteria.c3);
        if (b.criteria.shortcuts.empty()) {
            os << " (no shortcut)\n";
        } else {
            os << " (shortcuts:";
            for (const auto& s : b.criteria.shortcuts) os << ' ' << s;
            os << ", cheapest " << *b.criteria.shortcut_cost << ")\n";
        }
    }
    for (const auto& n : report.notes) os << "note: " << n << "\n";
    return os.str();
}

} // namespace geom
