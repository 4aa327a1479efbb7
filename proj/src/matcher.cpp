#include "geom/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

namespace geom {

namespace {

enum class ChunkKind { Word, Points, Number, Other };

struct Chunk {
    std::string text;
    ChunkKind kind;
};

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_points_token(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] < 'A' || s[i] > 'Z') return false;
        ++i;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    return true;
}

ChunkKind classify(std::string_view run)
{
    if (std::all_of(run.begin(), run.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return ChunkKind::Number;
    }
    return is_points_token(run) ? ChunkKind::Points : ChunkKind::Word;
}

// Whitespace-free chunks: alphanumeric runs and runs of other bytes.
std::vector<Chunk> chunk(std::string_view text)
{
    std::vector<Chunk> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        if (is_alnum(text[i])) {
            while (j < text.size() && is_alnum(text[j])) ++j;
            out.push_back({std::string(text.substr(i, j - i)), classify(text.substr(i, j - i))});
        } else {
            while (j < text.size() && !is_alnum(text[j]) && !is_space(text[j])) ++j;
            out.push_back({std::string(text.substr(i, j - i)), ChunkKind::Other});
        }
        i = j;
    }
    return out;
}

std::string join(const std::vector<Chunk>& chunks)
{
    std::string out;
    for (const auto& c : chunks) {
        if (!out.empty()) out += ' ';
        out += c.text;
    }
    return out;
}

std::vector<std::string> split_words(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

// Replaces each occurrence of an alias word sequence with its canonical words.
std::vector<std::string> apply_synonyms(std::vector<std::string> words, const SynonymTable& synonyms)
{
    for (const auto& [alias, canonical] : synonyms) {
        const auto from = split_words(lower(alias));
        const auto to = split_words(canonical);
        if (from.empty()) continue;
        std::vector<std::string> out;
        std::size_t i = 0;
        while (i < words.size()) {
            if (i + from.size() <= words.size() && std::equal(from.begin(), from.end(), words.begin() + i)) {
                out.insert(out.end(), to.begin(), to.end());
                i += from.size();
            } else {
                out.push_back(words[i++]);
            }
        }
        words = std::move(out);
    }
    return words;
}

std::vector<Chunk> normalise_chunks(std::string_view text, const SynonymTable& synonyms)
{
    auto chunks = chunk(text);
    std::vector<std::string> words;
    for (auto& c : chunks) {
        if (c.kind == ChunkKind::Word) c.text = lower(c.text);
        words.push_back(c.text);
    }
    // Aliases are lower case, so upper-case entity tokens never match them.
    auto replaced = apply_synonyms(words, synonyms);
    std::vector<Chunk> out;
    out.reserve(replaced.size());
    for (auto& w : replaced) {
        auto kind = ChunkKind::Other;
        if (!w.empty() && is_alnum(w[0])) kind = classify(w);
        out.push_back({std::move(w), kind});
    }
    return out;
}

std::size_t nonspace_length(std::string_view text)
{
    return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) { return !is_space(c); }));
}

const std::vector<std::string>& correction_targets()
{
    static const std::vector<std::string> targets = [] {
        std::vector<std::string> out;
        for (const auto& w : grammar_vocabulary()) {
            if (w.size() >= 3) out.push_back(w);
        }
        return out;
    }();
    return targets;
}

bool in_vocabulary(const std::string& w)
{
    const auto& vocab = grammar_vocabulary();
    return std::binary_search(vocab.begin(), vocab.end(), w);
}

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

std::optional<Statement> try_parse(std::string_view text, std::optional<ParseError>& first_error)
{
    try {
        return parse_statement(text);
    } catch (const ParseError& e) {
        if (!first_error) first_error = e;
        return std::nullopt;
    }
}

std::optional<Statement> step_statement(const Step& step, const Problem& problem)
{
    if (const auto* s = std::get_if<Statement>(&step.statement)) return *s;
    const auto k = std::get<GivenRef>(step.statement).index;
    if (k < problem.givens.size()) return problem.givens[k];
    return std::nullopt;
}

void sort_results(std::vector<MatchResult>& results)
{
    std::sort(results.begin(), results.end(), [](const MatchResult& a, const MatchResult& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return std::tie(a.graph_id, a.step_id) < std::tie(b.graph_id, b.step_id);
    });
}

std::vector<MatchResult> external_results(std::string_view text, const Problem& problem,
                                          std::span<const SolutionGraph* const> graphs, const MatchConfig& config)
{
    ExternalMatcherRequest request;
    request.problem_text = problem.statement_text;
    request.student_text = std::string(text);
    std::set<std::string> offered;
    for (const auto* g : graphs) {
        for (const auto& step : g->steps) {
            auto st = step_statement(step, problem);
            if (step.is_given() || !st) continue;
            request.candidates.push_back({g->id + "/" + step.id, render(*st)});
            offered.insert(g->id + "/" + step.id);
        }
    }
    ExternalMatcherResponse response;
    try {
        response = config.external->match(request);
    } catch (const Error&) {
        if (config.external_required) throw;
        return {};
    }
    std::vector<MatchResult> out;
    if (response.abstain) return out;
    std::set<std::string> seen;
    for (const auto& c : response.candidates) {
        if (!offered.count(c.id) || !(c.score > 0.0) || !seen.insert(c.id).second) continue;
        const auto slash = c.id.find('/');
        out.push_back({c.id.substr(0, slash), c.id.substr(slash + 1), std::min(1.0, c.score), MatchMethod::External});
    }
    sort_results(out);
    return out;
}

} // namespace

std::string_view to_string(MatchMethod m)
{
    switch (m) {
    case MatchMethod::Exact: return "exact";
    case MatchMethod::Normalized: return "normalized";
    case MatchMethod::Fuzzy: return "fuzzy";
    case MatchMethod::External: return "external";
    }
    return "exact";
}

std::size_t edit_distance(std::string_view a, std::string_view b)
{
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const auto up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::size_t spelling_tolerance(std::size_t length)
{
    if (length < 5) return 0;
    return length < 8 ? 1 : 2;
}

std::optional<Interpretation> interpret_statement(std::string_view text, const MatchConfig& config,
                                                  std::optional<ParseError>* error)
{
    std::optional<ParseError> first_error;
    auto report = [&]() -> std::optional<Interpretation> {
        if (error) *error = first_error;
        return std::nullopt;
    };

    if (auto s = try_parse(text, first_error)) return Interpretation{*s, MatchMethod::Exact, 1.0, std::string(text)};
    if (config.strict) return report();

    auto chunks = normalise_chunks(text, config.synonyms);
    const auto normalised = join(chunks);
    if (auto s = try_parse(normalised, first_error)) {
        return Interpretation{*s, MatchMethod::Normalized, 1.0, normalised};
    }

    std::size_t edits = 0;
    for (auto& c : chunks) {
        const auto tolerance = spelling_tolerance(c.text.size());
        if (c.kind != ChunkKind::Word || tolerance == 0 || in_vocabulary(c.text)) continue;
        std::size_t best = tolerance + 1;
        const std::string* choice = nullptr;
        for (const auto& w : correction_targets()) {
            const auto d = edit_distance(c.text, w);
            if (d < best) {
                best = d;
                choice = &w;
            }
        }
        if (!choice) continue;
        edits += best;
        c.text = *choice;
    }
    if (edits == 0) return report();
    const auto corrected = join(chunks);
    if (auto s = try_parse(corrected, first_error)) {
        const auto total = std::max<std::size_t>(nonspace_length(text), 1);
        double conf = round4(1.0 - static_cast<double>(edits) / static_cast<double>(total));
        conf = std::clamp(conf, 0.0, 0.9999);
        return Interpretation{*s, MatchMethod::Fuzzy, conf, corrected};
    }
    return report();
}

StatementMatch match_statement_detailed(std::string_view text, const Problem& problem,
                                        std::span<const SolutionGraph* const> graphs, const MatchConfig& config)
{
    StatementMatch out;
    out.interpretation = interpret_statement(text, config, &out.parse_error);
    if (out.interpretation) {
        const auto& interp = *out.interpretation;
        for (const auto* g : graphs) {
            for (const auto& step : g->steps) {
                auto st = step_statement(step, problem);
                if (st && statement_equal(*st, interp.statement)) {
                    out.results.push_back({g->id, step.id, interp.confidence, interp.method});
                }
            }
        }
        sort_results(out.results);
    }
    if (out.results.empty() && config.external) out.results = external_results(text, problem, graphs, config);
    return out;
}

std::vector<MatchResult> match_statement(std::string_view text, const Problem& problem,
                                         std::span<const SolutionGraph* const> graphs, const MatchConfig& config)
{
    return match_statement_detailed(text, problem, graphs, config).results;
}

namespace {

std::vector<std::string> reason_tokens(std::string_view text, const SynonymTable& synonyms)
{
    std::string cleaned;
    for (char c : text) {
        if (c == '\'') continue;
        cleaned += is_alnum(c) || (static_cast<unsigned char>(c) & 0x80) ? static_cast<char>(std::tolower(
                                                                              static_cast<unsigned char>(c)))
                                                                        : ' ';
    }
    std::vector<std::string> words;
    for (auto& w : split_words(cleaned)) {
        if (w == "the" || w == "a" || w == "an" || w == "by") continue;
        words.push_back(std::move(w));
    }
    SynonymTable lowered;
    for (const auto& [a, c] : synonyms) lowered.emplace_back(lower(a), lower(c));
    return apply_synonyms(std::move(words), lowered);
}

std::optional<double> compare_tokens(const std::vector<std::string>& got, const std::vector<std::string>& want)
{
    if (got.empty() || got.size() != want.size()) return std::nullopt;
    std::size_t edits = 0;
    std::size_t chars = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        chars += got[i].size();
        if (got[i] == want[i]) continue;
        const auto d = edit_distance(got[i], want[i]);
        if (d > spelling_tolerance(std::min(got[i].size(), want[i].size()))) return std::nullopt;
        edits += d;
    }
    if (edits == 0) return 1.0;
    return std::clamp(round4(1.0 - static_cast<double>(edits) / static_cast<double>(chars)), 0.0, 0.9999);
}

} // namespace

ReasonMatch match_reason(std::string_view reason_text, std::string_view skill_id, const Catalog& catalog)
{
    const auto* skill = catalog.find_skill(skill_id);
    if (!skill) throw Error(ErrorCode::UnknownSkill, "unknown skill '" + std::string(skill_id) + "'");
    const auto got = reason_tokens(reason_text, catalog.synonyms());
    if (got.empty()) return {};
    ReasonMatch best;
    std::vector<std::string> names{skill->name};
    names.insert(names.end(), skill->aliases.begin(), skill->aliases.end());
    for (const auto& name : names) {
        if (auto conf = compare_tokens(got, reason_tokens(name, catalog.synonyms())); conf && *conf > best.confidence) {
            best = {true, *conf};
        }
    }
    return best;
}

} // namespace geom
