#include "geom/corpus_io.hpp"
#include "geom/matcher.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include <thread>

using namespace geom;

namespace {

const Catalog& corpus()
{
    static const Catalog c = load_corpus(oracle::sample_corpus_path());
    return c;
}

struct P07 {
    const Problem* problem = corpus().find_problem("P07");
    std::vector<const SolutionGraph*> graphs = corpus().graphs_of(*problem);
    MatchConfig config = oracle::session_match_config(corpus());
};

class ScriptedMatcher : public ExternalMatcher {
public:
    ExternalMatcherResponse response;
    bool fail = false;
    int calls = 0;
    ExternalMatcherRequest last;

    ExternalMatcherResponse match(const ExternalMatcherRequest& request) override
    {
        ++calls;
        last = request;
        if (fail) throw Error(ErrorCode::ExternalUnavailable, "down");
        return response;
    }
};

} // namespace

TEST(Matcher, ExactMatchFindsTheStep)
{
    P07 f;
    const auto r = match_statement("BM = CM", *f.problem, f.graphs, f.config);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r.front().graph_id, "P07_g1");
    EXPECT_EQ(r.front().step_id, "s2");
    EXPECT_EQ(r.front().method, MatchMethod::Exact);
    EXPECT_DOUBLE_EQ(r.front().confidence, 1.0);
}

TEST(Matcher, SynonymsNormalise)
{
    P07 f;
    const auto r = match_statement("BM equals CM", *f.problem, f.graphs, f.config);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r.front().method, MatchMethod::Normalized);
    EXPECT_EQ(r.front().step_id, "s2");

    const auto strict = [&] {
        auto c = f.config;
        c.strict = true;
        return c;
    }();
    EXPECT_TRUE(match_statement("BM equals CM", *f.problem, f.graphs, strict).empty());
}

TEST(Matcher, SpellingCorrectionLowersConfidence)
{
    P07 f;
    const auto r = match_statement("M is the midpiont of segment BC", *f.problem, f.graphs, f.config);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r.front().method, MatchMethod::Fuzzy);
    EXPECT_LT(r.front().confidence, 1.0);
    EXPECT_GT(r.front().confidence, 0.9);
}

TEST(Matcher, InterpretReportsParseError)
{
    std::optional<ParseError> err;
    EXPECT_FALSE(interpret_statement("the quadrilateral is nice", MatchConfig{}, &err));
    ASSERT_TRUE(err);
    EXPECT_EQ(err->position(), 0u);
    MatchConfig strict;
    strict.strict = true;
    EXPECT_FALSE(interpret_statement("M is the midpiont of BC", strict));
}

TEST(Matcher, OffGraphStatementMatchesNothing)
{
    P07 f;
    EXPECT_TRUE(match_statement("AB || XY", *f.problem, f.graphs, f.config).empty());
}

TEST(Matcher, GivenStepsMatchThroughTheirBinding)
{
    P07 f;
    ASSERT_FALSE(f.problem->givens.empty());
    const auto text = render(f.problem->givens.front());
    const auto r = match_statement(text, *f.problem, f.graphs, f.config);
    ASSERT_FALSE(r.empty());
    for (const auto& m : r) {
        const auto* g = corpus().find_graph(m.graph_id);
        EXPECT_TRUE(g->find_step(m.step_id)->is_given());
    }
}

TEST(Matcher, ResultsAreSortedByConfidenceThenId)
{
    P07 f;
    const auto r = match_statement("angle ABC = angle ACB", *f.problem, f.graphs, f.config);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_LT(std::tie(r[0].graph_id, r[0].step_id), std::tie(r[1].graph_id, r[1].step_id));
}

TEST(Matcher, ExternalMatcherIsConsultedOnlyWhenNothingMatches)
{
    P07 f;
    auto ext = std::make_shared<ScriptedMatcher>();
    ext->response.abstain = false;
    ext->response.candidates = {{"P07_g1/s3", 0.7}, {"bogus/s1", 0.9}, {"P07_g1/h1", 0.9}, {"P07_g1/s4", 0.0}};
    f.config.external = ext;

    EXPECT_FALSE(match_statement("BM = CM", *f.problem, f.graphs, f.config).empty());
    EXPECT_EQ(ext->calls, 0);

    const auto r = match_statement("the two halves are the same triangle", *f.problem, f.graphs, f.config);
    EXPECT_EQ(ext->calls, 1);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], (MatchResult{"P07_g1", "s3", 0.7, MatchMethod::External}));
    // Only non-Given steps are offered, rendered canonically.
    for (const auto& c : ext->last.candidates) EXPECT_EQ(c.id.find("/h"), std::string::npos) << c.id;
    EXPECT_EQ(ext->last.problem_text, f.problem->statement_text);

    ext->response.abstain = true;
    EXPECT_TRUE(match_statement("nonsense", *f.problem, f.graphs, f.config).empty());
}

TEST(Matcher, ExternalFailureDegradesUnlessRequired)
{
    P07 f;
    auto ext = std::make_shared<ScriptedMatcher>();
    ext->fail = true;
    f.config.external = ext;
    EXPECT_TRUE(match_statement("nonsense", *f.problem, f.graphs, f.config).empty());
    f.config.external_required = true;
    try {
        match_statement("nonsense", *f.problem, f.graphs, f.config);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ExternalUnavailable);
    }
}

TEST(Matcher, HttpExternalMatcherSpeaksJson)
{
    httplib::Server server;
    int hits = 0;
    server.Post("/match", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        const auto body = nlohmann::json::parse(req.body);
        nlohmann::json out = {{"abstain", false},
                              {"candidates", {{{"id", body["candidates"][0]["id"]}, {"score", 0.85}}}}};
        if (body["student_text"] == "fail once" && hits == 1) {
            res.status = 500;
            return;
        }
        res.set_content(out.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });

    HttpExternalMatcher m("http://127.0.0.1:" + std::to_string(port) + "/match", std::chrono::seconds(2));
    ExternalMatcherRequest req{"problem", {{"g/s1", "Parallel(AB,CD)"}}, "fail once"};
    const auto r = m.match(req);
    EXPECT_EQ(hits, 2); // one retry
    EXPECT_FALSE(r.abstain);
    ASSERT_EQ(r.candidates.size(), 1u);
    EXPECT_EQ(r.candidates[0].id, "g/s1");
    EXPECT_DOUBLE_EQ(r.candidates[0].score, 0.85);

    server.stop();
    t.join();
    try {
        m.match(req);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ExternalUnavailable);
    }
}

TEST(ReasonMatch, NamesAliasesAndTypos)
{
    const auto& c = corpus();
    EXPECT_TRUE(match_reason("SSS congruence", "f_sss", c).matched);
    EXPECT_TRUE(match_reason("by side-side-side", "f_sss", c).matched);
    EXPECT_TRUE(match_reason("cpctc", "f_cpctc", c).matched);
    EXPECT_TRUE(match_reason("Vertical Angles", "f_vertical", c).matched);
    const auto typo = match_reason("SSS congruense", "f_sss", c);
    EXPECT_TRUE(typo.matched);
    EXPECT_LT(typo.confidence, 1.0);
    // short words need an exact spelling
    EXPECT_FALSE(match_reason("side side sdie", "f_sss", c).matched);
    EXPECT_FALSE(match_reason("SAS congruence", "f_sss", c).matched);
    EXPECT_FALSE(match_reason("ASA congruence", "f_sss", c).matched);
    EXPECT_FALSE(match_reason("", "f_sss", c).matched);
    EXPECT_FALSE(match_reason("obvious", "f_sss", c).matched);
    EXPECT_THROW(match_reason("SSS", "no_such_skill", c), Error);
}

TEST(EditDistance, Basics)
{
    EXPECT_EQ(edit_distance("", ""), 0u);
    EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
    EXPECT_EQ(edit_distance("midpiont", "midpoint"), 2u);
    EXPECT_EQ(spelling_tolerance(3), 0u);
    EXPECT_EQ(spelling_tolerance(5), 1u);
    EXPECT_EQ(spelling_tolerance(8), 2u);
}
