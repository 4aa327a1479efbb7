#pragma once

#include "geom/error.hpp"
#include "geom/ontology.hpp"
#include "geom/statement.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geom {

enum class MatchMethod { Exact, Normalized, Fuzzy, External };

std::string_view to_string(MatchMethod m);

struct MatchResult {
    std::string graph_id;
    std::string step_id;
    double confidence = 0.0;
    MatchMethod method = MatchMethod::Exact;

    bool operator==(const MatchResult&) const = default;
};

struct ExternalCandidate {
    std::string id; // "graph/step"
    std::string statement;
};

struct ExternalMatcherRequest {
    std::string problem_text;
    std::vector<ExternalCandidate> candidates;
    std::string student_text;
};

struct ExternalScore {
    std::string id;
    double score = 0.0;
};

struct ExternalMatcherResponse {
    bool abstain = true;
    std::vector<ExternalScore> candidates;
};

// Semantic matcher reached when the deterministic pipeline finds nothing.
// Implementations throw Error(ExternalUnavailable) on transport failure.
class ExternalMatcher {
public:
    virtual ~ExternalMatcher() = default;
    virtual ExternalMatcherResponse match(const ExternalMatcherRequest& request) = 0;
};

// POSTs the request as JSON to `url`; one retry after a failed attempt.
class HttpExternalMatcher : public ExternalMatcher {
public:
    explicit HttpExternalMatcher(std::string url,
                                 std::chrono::milliseconds timeout = std::chrono::seconds(10),
                                 int retries = 1);
    ExternalMatcherResponse match(const ExternalMatcherRequest& request) override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
    int retries_;
};

struct MatchConfig {
    double auto_accept = 0.8;
    // Strict: no normalisation or spelling correction, parse failures surface.
    bool strict = false;
    SynonymTable synonyms;
    std::shared_ptr<ExternalMatcher> external;
    bool external_required = false;
};

// How a line's text was read before structural comparison.
struct Interpretation {
    Statement statement;
    MatchMethod method = MatchMethod::Exact;
    double confidence = 1.0;
    std::string text; // the text that finally parsed
};

// Parse, then (unless strict) normalise and spell-correct. On failure returns
// nullopt and stores the first ParseError in `error` when given.
std::optional<Interpretation> interpret_statement(std::string_view text, const MatchConfig& config,
                                                  std::optional<ParseError>* error = nullptr);

struct StatementMatch {
    std::optional<Interpretation> interpretation;
    std::optional<ParseError> parse_error;
    std::vector<MatchResult> results;
};

StatementMatch match_statement_detailed(std::string_view text, const Problem& problem,
                                        std::span<const SolutionGraph* const> graphs,
                                        const MatchConfig& config);

// Sorted by confidence descending, then (graph id, step id). Empty = no match.
std::vector<MatchResult> match_statement(std::string_view text, const Problem& problem,
                                         std::span<const SolutionGraph* const> graphs,
                                         const MatchConfig& config);

struct ReasonMatch {
    bool matched = false;
    double confidence = 0.0;
};

// Compares against the skill's name and aliases. Throws UnknownSkill.
ReasonMatch match_reason(std::string_view reason_text, std::string_view skill_id, const Catalog& catalog);

std::size_t edit_distance(std::string_view a, std::string_view b);

// Edits allowed when correcting a word of this length: none below 5
// characters (SSS and SAS must stay distinct), 1 up to 7, then 2.
std::size_t spelling_tolerance(std::size_t length);

} // namespace geom
