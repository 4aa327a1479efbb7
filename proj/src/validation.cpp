#include "geom/validation.hpp"

#include "geom/error.hpp"

#include <algorithm>
#include <array>

namespace geom {

namespace {

constexpr std::array<std::string_view, 4> kVerdictNames = {
    "incorrect_or_unproven",
    "correct_unjustified",
    "correct_irrelevant",
    "correct_relevant",
};

void add_note(std::vector<std::string>& notes, std::string note)
{
    if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(std::move(note));
}

bool is_blank(std::string_view s)
{
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

} // namespace

std::string_view to_string(VerdictClass c) { return kVerdictNames[static_cast<std::size_t>(c)]; }

std::optional<VerdictClass> verdict_class_from_string(std::string_view s)
{
    for (std::size_t i = 0; i < kVerdictNames.size(); ++i) {
        if (kVerdictNames[i] == s) return static_cast<VerdictClass>(i);
    }
    return std::nullopt;
}

std::string_view to_string(SessionStatus s)
{
    switch (s) {
    case SessionStatus::Open: return "open";
    case SessionStatus::Complete: return "complete";
    case SessionStatus::Abandoned: return "abandoned";
    }
    return "open";
}

Derivation::Derivation(const Catalog& catalog, const Problem& problem, MatchConfig config)
    : catalog_(&catalog), problem_(&problem), config_(std::move(config)), graphs_(catalog.graphs_of(problem))
{
    std::sort(graphs_.begin(), graphs_.end(), [](auto* a, auto* b) { return a->id < b->id; });
    graphs_.erase(std::unique(graphs_.begin(), graphs_.end()), graphs_.end());
    for (const auto* g : graphs_) {
        views_.emplace_back(*g);
        std::vector<bool> est(g->steps.size(), false);
        for (std::size_t i = 0; i < g->steps.size(); ++i) est[i] = g->steps[i].is_given();
        established_.push_back(std::move(est));
    }
}

double Derivation::coverage_of(std::size_t g) const
{
    std::size_t total = 0;
    std::size_t done = 0;
    for (std::size_t i = 0; i < graphs_[g]->steps.size(); ++i) {
        if (graphs_[g]->steps[i].is_given()) continue;
        ++total;
        if (established_[g][i]) ++done;
    }
    return total == 0 ? 0.0 : static_cast<double>(done) / static_cast<double>(total);
}

std::vector<GraphCoverage> Derivation::coverage() const
{
    std::vector<GraphCoverage> out;
    for (std::size_t g = 0; g < graphs_.size(); ++g) {
        GraphCoverage c;
        c.graph_id = graphs_[g]->id;
        for (std::size_t i = 0; i < graphs_[g]->steps.size(); ++i) {
            if (graphs_[g]->steps[i].is_given()) continue;
            ++c.total;
            if (established_[g][i]) c.established.push_back(graphs_[g]->steps[i].id);
        }
        std::sort(c.established.begin(), c.established.end());
        c.coverage = coverage_of(g);
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t Derivation::best_graph() const
{
    std::size_t best = 0;
    for (std::size_t g = 1; g < graphs_.size(); ++g) {
        if (coverage_of(g) > coverage_of(best)) best = g;
    }
    return best;
}

bool Derivation::goal_established() const
{
    for (std::size_t g = 0; g < graphs_.size(); ++g) {
        if (auto goal = views_[g].goal(); goal && established_[g][*goal]) return true;
    }
    return false;
}

bool Derivation::reason_ok(const ProofLine& line, const Step& step) const
{
    if (is_blank(line.reason_text)) return false;
    try {
        return match_reason(line.reason_text, step.skill_id, *catalog_).matched;
    } catch (const Error&) {
        return false;
    }
}

// Every cited line must support an established dependency of the step, and
// together they must cover all of its non-Given dependencies.
bool Derivation::refs_ok(const ProofLine& line, std::size_t g, std::size_t s) const
{
    if (line.refs.empty()) return false;
    const auto& preds = views_[g].predecessors(s);
    std::vector<bool> covered(graphs_[g]->steps.size(), false);
    for (int r : line.refs) {
        if (r < 1 || static_cast<std::size_t>(r) > line_steps_.size()) return false;
        bool supports = false;
        for (const auto& [mg, ms] : line_steps_[static_cast<std::size_t>(r - 1)]) {
            if (mg != g || !established_[g][ms]) continue;
            if (std::find(preds.begin(), preds.end(), ms) == preds.end()) continue;
            covered[ms] = true;
            supports = true;
        }
        if (!supports) return false;
    }
    bool any_derived = false;
    for (auto p : preds) {
        if (graphs_[g]->steps[p].is_given()) continue;
        any_derived = true;
        if (!covered[p]) return false;
    }
    return any_derived;
}

LineVerdict Derivation::classify(const ProofLine& line)
{
    LineVerdict v;
    v.index = line.index;
    const auto sm = match_statement_detailed(line.statement_text, *problem_, graphs_, config_);

    std::vector<std::pair<std::size_t, std::size_t>> steps;
    for (const auto& m : sm.results) {
        for (std::size_t g = 0; g < graphs_.size(); ++g) {
            if (graphs_[g]->id != m.graph_id) continue;
            if (auto s = views_[g].index_of(m.step_id)) steps.emplace_back(g, *s);
        }
    }
    line_steps_.push_back(steps);

    if (sm.results.empty()) {
        if (sm.interpretation) {
            for (const auto& given : problem_->givens) {
                if (statement_equal(given, sm.interpretation->statement)) {
                    v.verdict = VerdictClass::CorrectIrrelevant;
                    v.notes = {"DUPLICATE", "GIVEN", "LIKELY_IRRELEVANT"};
                    return v;
                }
            }
        }
        v.verdict = VerdictClass::IncorrectOrUnproven;
        v.notes.push_back("OFF_GRAPH");
        if (!sm.interpretation) v.notes.push_back("UNPARSED");
        return v;
    }

    const auto& top = sm.results.front();
    if (top.method == MatchMethod::Fuzzy) v.notes.push_back("FUZZY");
    if (top.method == MatchMethod::External) v.notes.push_back("EXTERNAL");
    if (top.confidence < config_.auto_accept) v.notes.push_back("LOW_CONFIDENCE");

    const auto best = best_graph();
    const double best_cov = coverage_of(best);
    auto foreign = [&](std::size_t g) { return g != best && coverage_of(g) == 0.0 && best_cov >= 0.5; };

    std::vector<std::pair<std::size_t, std::size_t>> candidates; // non-foreign, unestablished
    bool any_current = false;
    bool any_established = false;
    bool restates_given = false;
    for (const auto& [g, s] : steps) {
        if (foreign(g)) continue;
        any_current = true;
        if (established_[g][s]) {
            any_established = true;
            restates_given = restates_given || graphs_[g]->steps[s].is_given();
            continue;
        }
        candidates.emplace_back(g, s);
    }

    if (!any_current) {
        v.verdict = VerdictClass::CorrectIrrelevant;
        v.matched = top;
        add_note(v.notes, "FOREIGN_ROUTE");
        add_note(v.notes, "LIKELY_IRRELEVANT");
        return v;
    }

    std::vector<std::pair<std::size_t, std::size_t>> justified;
    std::vector<std::string> missing;
    bool reason_failed = false;
    bool refs_failed = false;
    for (const auto& [g, s] : candidates) {
        const auto& step = graphs_[g]->steps[s];
        bool deps_ok = true;
        for (auto p : views_[g].predecessors(s)) {
            if (!established_[g][p]) {
                deps_ok = false;
                missing.push_back("MISSING_DEPENDENCY:" + graphs_[g]->id + "/" + graphs_[g]->steps[p].id);
            }
        }
        const bool by_reason = reason_ok(line, step);
        const bool by_refs = refs_ok(line, g, s);
        if (!by_reason) reason_failed = true;
        if (!line.refs.empty() && !by_refs) refs_failed = true;
        if (deps_ok && (by_reason || by_refs)) justified.emplace_back(g, s);
    }

    if (!justified.empty()) {
        v.verdict = VerdictClass::CorrectRelevant;
        for (const auto& [g, s] : justified) {
            established_[g][s] = true;
            v.justified_in.push_back(graphs_[g]->id);
        }
        std::sort(v.justified_in.begin(), v.justified_in.end());
        v.justified_in.erase(std::unique(v.justified_in.begin(), v.justified_in.end()), v.justified_in.end());
        for (const auto& m : sm.results) {
            if (std::binary_search(v.justified_in.begin(), v.justified_in.end(), m.graph_id)) {
                v.matched = m;
                break;
            }
        }
        return v;
    }

    v.matched = top;
    if (any_established) {
        v.verdict = VerdictClass::CorrectIrrelevant;
        add_note(v.notes, "DUPLICATE");
        if (restates_given) add_note(v.notes, "GIVEN");
        add_note(v.notes, "LIKELY_IRRELEVANT");
        return v;
    }

    v.verdict = VerdictClass::CorrectUnjustified;
    std::sort(missing.begin(), missing.end());
    for (auto& m : missing) add_note(v.notes, std::move(m));
    if (reason_failed) add_note(v.notes, is_blank(line.reason_text) ? "NO_REASON" : "BAD_REASON");
    if (refs_failed) add_note(v.notes, "BAD_REFS");
    return v;
}

std::optional<Hint> Derivation::frontier_hint() const
{
    if (graphs_.empty() || goal_established()) return std::nullopt;
    const auto g = best_graph();
    const auto& view = views_[g];
    const auto& graph = *graphs_[g];
    const auto order = view.topological_order();
    if (!order) return std::nullopt;

    // dist[s]: most unestablished steps on any path from s (exclusive) to the goal.
    constexpr int kUnreachable = -1;
    std::vector<int> dist(view.size(), kUnreachable);
    const auto goal = view.goal();
    if (!goal) return std::nullopt;
    dist[*goal] = 0;
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        for (auto t : view.successors(*it)) {
            if (dist[t] == kUnreachable) continue;
            dist[*it] = std::max(dist[*it], dist[t] + (established_[g][t] ? 0 : 1));
        }
    }

    std::optional<std::size_t> choice;
    for (std::size_t s = 0; s < view.size(); ++s) {
        if (established_[g][s] || dist[s] == kUnreachable) continue;
        const auto& preds = view.predecessors(s);
        if (!std::all_of(preds.begin(), preds.end(), [&](auto p) { return established_[g][p]; })) continue;
        if (!choice || dist[s] < dist[*choice] ||
            (dist[s] == dist[*choice] && graph.steps[s].id < graph.steps[*choice].id)) {
            choice = s;
        }
    }
    if (!choice) return std::nullopt;
    Hint h;
    h.graph_id = graph.id;
    h.step_id = graph.steps[*choice].id;
    return h;
}

Session::Session(std::string id, std::shared_ptr<const Catalog> catalog, std::string problem_id,
                 std::set<std::string> known, MatchConfig config)
    : id_(std::move(id)),
      catalog_(std::move(catalog)),
      problem_id_(std::move(problem_id)),
      problem_(catalog_->find_problem(problem_id_)),
      known_(std::move(known)),
      config_(std::move(config))
{
    if (!problem_) throw Error(ErrorCode::UnknownProblem, "unknown problem '" + problem_id_ + "'");
    if (catalog_->graphs_of(*problem_).empty()) {
        throw Error(ErrorCode::NoGraphs, "problem '" + problem_id_ + "' has no solution graphs");
    }
    for (const auto& k : known_) {
        if (!catalog_->find_skill(k)) throw Error(ErrorCode::UnknownSkill, "unknown skill '" + k + "'");
    }
    if (config_.synonyms.empty()) config_.synonyms = catalog_->synonyms();
    derivation_ = std::make_unique<Derivation>(*catalog_, *problem_, config_);
}

LineVerdict Session::submit(ProofLine line)
{
    if (status_ != SessionStatus::Open) {
        throw Error(ErrorCode::SessionClosed, "session " + id_ + " is " + std::string(to_string(status_)));
    }
    const int next = static_cast<int>(lines_.size()) + 1;
    if (line.index != next) {
        throw Error(ErrorCode::BadIndex,
                    "line index " + std::to_string(line.index) + " but next index is " + std::to_string(next));
    }
    for (int r : line.refs) {
        if (r < 1 || r >= line.index) {
            throw Error(ErrorCode::BadRefs, "line " + std::to_string(line.index) + " cites line " +
                                                std::to_string(r) + ", outside 1.." + std::to_string(line.index - 1));
        }
    }
    std::sort(line.refs.begin(), line.refs.end());
    line.refs.erase(std::unique(line.refs.begin(), line.refs.end()), line.refs.end());

    auto verdict = derivation_->classify(line);
    lines_.push_back(std::move(line));
    verdicts_.push_back(verdict);
    if (derivation_->goal_established()) status_ = SessionStatus::Complete;
    return verdict;
}

void Session::replay()
{
    derivation_ = std::make_unique<Derivation>(*catalog_, *problem_, config_);
    verdicts_.clear();
    for (const auto& l : lines_) verdicts_.push_back(derivation_->classify(l));
    if (status_ != SessionStatus::Abandoned) {
        status_ = derivation_->goal_established() ? SessionStatus::Complete : SessionStatus::Open;
    }
}

void Session::retract(int index)
{
    if (status_ == SessionStatus::Abandoned) throw Error(ErrorCode::SessionClosed, "session " + id_ + " is abandoned");
    if (index < 1 || index > static_cast<int>(lines_.size())) {
        throw Error(ErrorCode::NoSuchLine, "no line " + std::to_string(index) + " in session " + id_);
    }
    lines_.erase(lines_.begin() + (index - 1));
    for (auto& l : lines_) {
        if (l.index > index) --l.index;
        std::vector<int> refs;
        for (int r : l.refs) {
            if (r == index) continue;
            refs.push_back(r > index ? r - 1 : r);
        }
        l.refs = std::move(refs);
    }
    replay();
}

Hint Session::next_hint(int level)
{
    if (level < 1 || level > 3) {
        throw Error(ErrorCode::InvalidArgument, "hint level must be 1, 2 or 3, got " + std::to_string(level));
    }
    if (status_ == SessionStatus::Abandoned) throw Error(ErrorCode::SessionClosed, "session " + id_ + " is abandoned");
    auto hint = derivation_->frontier_hint();
    if (!hint) throw Error(ErrorCode::NoFrontier, "nothing left to hint in session " + id_);

    auto& shown = hint_levels_[hint->graph_id + "/" + hint->step_id];
    shown = std::max(shown, level);
    hint->level = shown;
    const auto* graph = catalog_->find_graph(hint->graph_id);
    const auto* step = graph->find_step(hint->step_id);
    const auto& statement = std::get<Statement>(step->statement);
    switch (hint->level) {
    case 1: {
        const auto* skill = catalog_->find_skill(step->skill_id);
        hint->text = skill ? skill->name : step->skill_id;
        break;
    }
    case 2: hint->text = render_template(statement); break;
    default: hint->text = render(statement); break;
    }
    return *hint;
}

TeacherReport Session::report() const
{
    TeacherReport r;
    r.problem_id = problem_id_;
    r.status = status_;
    r.graphs = derivation_->coverage();
    const auto best = derivation_->best_graph();
    r.best_graph = r.graphs[best].graph_id;
    r.coverage = r.graphs[best].coverage;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        const auto& v = verdicts_[i];
        if (!v.matched && v.verdict == VerdictClass::IncorrectOrUnproven) r.unmatched_lines.push_back(v.index);
        if (v.matched && v.matched->confidence < config_.auto_accept) r.manual_review = true;
        r.lines.push_back({lines_[i], v});
    }
    if (!r.unmatched_lines.empty()) r.manual_review = true;
    return r;
}

SessionSummary Session::summary() const
{
    const auto cov = derivation_->coverage();
    const auto best = derivation_->best_graph();
    return {status_, cov[best].graph_id, cov[best].coverage, lines_.size()};
}

std::vector<LineVerdict> Session::validate_subsequence(int from, int to) const
{
    if (from < 1 || to > static_cast<int>(lines_.size()) || from > to) {
        throw Error(ErrorCode::BadRange, "range " + std::to_string(from) + ".." + std::to_string(to) +
                                             " is not within 1.." + std::to_string(lines_.size()));
    }
    Derivation d(*catalog_, *problem_, config_);
    std::vector<LineVerdict> out;
    for (int i = from; i <= to; ++i) {
        ProofLine l = lines_[static_cast<std::size_t>(i - 1)];
        l.index = i - from + 1;
        std::vector<int> refs;
        for (int r : l.refs) {
            if (r >= from) refs.push_back(r - from + 1);
        }
        l.refs = std::move(refs);
        auto v = d.classify(l);
        v.index = i;
        out.push_back(std::move(v));
    }
    return out;
}

void Session::abandon() { status_ = SessionStatus::Abandoned; }

} // namespace geom
