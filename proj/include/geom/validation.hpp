#pragma once

#include "geom/matcher.hpp"
#include "geom/ontology.hpp"
#include "geom/solution_graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace geom {

struct ProofLine {
    int index = 0; // 1-based
    std::string statement_text;
    std::string reason_text;
    std::vector<int> refs; // earlier line indices cited as support

    bool operator==(const ProofLine&) const = default;
};

enum class VerdictClass { IncorrectOrUnproven, CorrectUnjustified, CorrectIrrelevant, CorrectRelevant };

std::string_view to_string(VerdictClass c);
std::optional<VerdictClass> verdict_class_from_string(std::string_view s);

struct LineVerdict {
    int index = 0;
    VerdictClass verdict = VerdictClass::IncorrectOrUnproven;
    std::optional<MatchResult> matched;
    std::vector<std::string> justified_in; // sorted graph ids
    std::vector<std::string> notes;        // machine-readable codes

    bool operator==(const LineVerdict&) const = default;
};

enum class SessionStatus { Open, Complete, Abandoned };

std::string_view to_string(SessionStatus s);

struct Hint {
    std::string graph_id;
    std::string step_id;
    int level = 1; // effective level after monotone promotion
    std::string text;

    bool operator==(const Hint&) const = default;
};

struct GraphCoverage {
    std::string graph_id;
    std::vector<std::string> established; // non-Given step ids, sorted
    std::size_t total = 0;                // non-Given steps in the graph
    double coverage = 0.0;

    bool operator==(const GraphCoverage&) const = default;
};

struct ReportLine {
    ProofLine line;
    LineVerdict verdict;

    bool operator==(const ReportLine&) const = default;
};

struct TeacherReport {
    std::string problem_id;
    SessionStatus status = SessionStatus::Open;
    std::string best_graph;
    double coverage = 0.0;
    bool manual_review = false;
    std::vector<int> unmatched_lines;
    std::vector<ReportLine> lines;
    std::vector<GraphCoverage> graphs; // in graph id order

    bool operator==(const TeacherReport&) const = default;
};

struct SessionSummary {
    SessionStatus status = SessionStatus::Open;
    std::string best_graph;
    double coverage = 0.0;
    std::size_t line_count = 0;

    bool operator==(const SessionSummary&) const = default;
};

// Incremental classifier over one problem's graphs. Givens start established.
// Pure with respect to its inputs: the same line sequence always produces the
// same verdicts.
class Derivation {
public:
    Derivation(const Catalog& catalog, const Problem& problem, MatchConfig config);

    // The caller is responsible for index/ref well-formedness.
    LineVerdict classify(const ProofLine& line);

    const std::vector<const SolutionGraph*>& graphs() const { return graphs_; }
    bool is_established(std::size_t graph, std::size_t step) const { return established_[graph][step]; }
    std::vector<GraphCoverage> coverage() const; // graph id order
    // Maximum coverage; ties go to the smallest graph id.
    std::size_t best_graph() const;
    bool goal_established() const;
    // Frontier step of the best graph closest to the goal; fills graph_id and
    // step_id only.
    std::optional<Hint> frontier_hint() const;

private:
    bool reason_ok(const ProofLine& line, const Step& step) const;
    bool refs_ok(const ProofLine& line, std::size_t g, std::size_t s) const;
    double coverage_of(std::size_t g) const;

    const Catalog* catalog_;
    const Problem* problem_;
    MatchConfig config_;
    std::vector<const SolutionGraph*> graphs_; // sorted by id
    std::vector<GraphView> views_;
    std::vector<std::vector<bool>> established_;
    // For every classified line, the (graph, step) pairs its statement matched.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> line_steps_;
};

// A serial state machine over one proof attempt. Not thread-safe; callers
// serialise mutations (the service does this per session).
class Session {
public:
    Session(std::string id, std::shared_ptr<const Catalog> catalog, std::string problem_id,
            std::set<std::string> known, MatchConfig config = {});

    const std::string& id() const { return id_; }
    const std::string& problem_id() const { return problem_id_; }
    const std::set<std::string>& known() const { return known_; }
    SessionStatus status() const { return status_; }
    const std::vector<ProofLine>& lines() const { return lines_; }
    const std::vector<LineVerdict>& verdicts() const { return verdicts_; }

    // Throws SessionClosed, BadIndex, BadRefs.
    LineVerdict submit(ProofLine line);

    // Removes a line, renumbers the rest and replays. Throws NoSuchLine.
    void retract(int index);

    // Throws NoFrontier, InvalidArgument (level outside 1..3), SessionClosed.
    Hint next_hint(int level);

    TeacherReport report() const;
    SessionSummary summary() const;

    // Replays lines [from, to] alone; verdicts keep their original indices.
    // Throws BadRange.
    std::vector<LineVerdict> validate_subsequence(int from, int to) const;

    void abandon();

private:
    void replay();

    std::string id_;
    std::shared_ptr<const Catalog> catalog_;
    std::string problem_id_;
    const Problem* problem_;
    std::set<std::string> known_;
    MatchConfig config_;
    SessionStatus status_ = SessionStatus::Open;
    std::vector<ProofLine> lines_;
    std::vector<LineVerdict> verdicts_;
    std::unique_ptr<Derivation> derivation_;
    std::map<std::string, int> hint_levels_; // "graph/step" -> max level shown
};

} // namespace geom
