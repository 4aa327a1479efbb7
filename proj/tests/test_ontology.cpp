#include "geom/corpus_io.hpp"
#include "geom/ontology.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace geom;

namespace {

Skill skill(std::string id, std::string name, std::vector<std::string> aliases = {})
{
    Skill s;
    s.id = std::move(id);
    s.name = std::move(name);
    s.aliases = std::move(aliases);
    return s;
}

Problem problem(std::string id, int difficulty = 5)
{
    Problem p;
    p.id = std::move(id);
    p.statement_text = "Prove it.";
    p.difficulty = difficulty;
    p.type_flags.set(ProblemType::Proof);
    return p;
}

SolutionGraph chain(std::string id, std::string problem_id, std::vector<std::string> skills)
{
    SolutionGraph g;
    g.id = std::move(id);
    g.problem_id = std::move(problem_id);
    for (std::size_t i = 0; i < skills.size(); ++i) {
        Step s;
        s.id = "s" + std::to_string(i + 1);
        s.skill_id = skills[i];
        s.statement = parse_statement("RightAngle(ang ABC)");
        s.is_goal = i + 1 == skills.size();
        if (i) g.edges.emplace_back("s" + std::to_string(i), s.id);
        g.steps.push_back(std::move(s));
    }
    return g;
}

std::set<std::string> codes(const std::vector<Diagnostic>& diags)
{
    std::set<std::string> out;
    for (const auto& d : diags) out.insert(d.code);
    return out;
}

} // namespace

TEST(DifficultyBand, EveryValueMapsToItsBand)
{
    for (int d = 1; d <= 40; ++d) {
        const auto expected = d <= 10   ? DifficultyBand::Basic
                              : d <= 20 ? DifficultyBand::Advanced
                              : d <= 30 ? DifficultyBand::Olympiad
                                        : DifficultyBand::VeryDifficult;
        EXPECT_EQ(difficulty_band(d), expected) << d;
    }
    for (int d : {-5, 0, 41, 100}) {
        try {
            difficulty_band(d);
            FAIL() << d;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
        }
    }
}

TEST(DifficultyBand, NamesRoundTrip)
{
    for (auto b : {DifficultyBand::Basic, DifficultyBand::Advanced, DifficultyBand::Olympiad,
                   DifficultyBand::VeryDifficult}) {
        EXPECT_EQ(difficulty_band_from_string(to_string(b)), b);
    }
    EXPECT_FALSE(difficulty_band_from_string("easy"));
}

TEST(Catalog, AddSkillReturnsNewSnapshot)
{
    const Catalog empty;
    const auto one = add_skill(empty, skill("f_sss", "SSS congruence", {"side side side"}));
    EXPECT_TRUE(empty.skills().empty());
    ASSERT_EQ(one.skills().size(), 1u);
    EXPECT_EQ(one.find_skill("f_sss")->name, "SSS congruence");
    EXPECT_EQ(one.find_skill_by_alias("Side Side Side"), one.find_skill("f_sss"));
    EXPECT_EQ(one.find_skill_by_alias("sss CONGRUENCE"), one.find_skill("f_sss"));
    EXPECT_EQ(one.find_skill("f_sas"), nullptr);
}

TEST(Catalog, AddSkillRejectsDuplicatesAndEmptyNames)
{
    const auto one = add_skill(Catalog{}, skill("f_sss", "SSS congruence"));
    try {
        add_skill(one, skill("f_sss", "other"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
    }
    try {
        add_skill(one, skill("f_sas", ""));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyName);
    }
}

TEST(Catalog, AddProblemAttachesGraphs)
{
    auto c = add_skill(Catalog{}, skill("k1", "skill one"));
    c = add_problem(c, problem("Q1"), {chain("Q1_g1", "", {"k1"})});
    const auto* p = c.find_problem("Q1");
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->graphs, std::vector<std::string>{"Q1_g1"});
    EXPECT_EQ(c.find_graph("Q1_g1")->problem_id, "Q1");
    ASSERT_EQ(c.graphs_of(*p).size(), 1u);
    EXPECT_THROW(add_problem(c, problem("Q1"), {}), Error);
    try {
        add_problem(c, problem("Q2"), {chain("Q1_g1", "", {"k1"})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
    }
    EXPECT_EQ(count_errors(lint_catalog(c)), 0u);
}

TEST(Lint, SampleCorpusIsClean)
{
    const auto catalog = load_corpus(oracle::sample_corpus_path());
    const auto diags = lint_catalog(catalog);
    EXPECT_TRUE(diags.empty()) << to_string(diags.front().severity) << " " << diags.front().code;
    EXPECT_GE(catalog.problems().size(), 30u);
}

TEST(Lint, ReportsEachStructuralFault)
{
    std::vector<Skill> skills = {skill("k1", "one", {"ONE", "uno", "Uno"}), skill("k2", ""), skill("k3", "unused")};
    auto p1 = problem("Q1", 0);
    p1.type_flags = {};
    p1.attributes.key_problem_subtype = KeyProblemSubtype::ProblemMethod;
    p1.provenance.named_problem = "";
    p1.graphs = {"Q1_g1", "missing"};
    auto p2 = problem("Q2");
    p2.type_flags.set(ProblemType::Locus);
    p2.attributes.set(Attribute::KeyProblem, AttributeValue::Yes);
    auto p3 = problem("k1");
    p3.graphs = {"Q2_g1"};
    auto g1 = chain("Q1_g1", "Q1", {"k1", "nope"});
    Step given;
    given.id = "h";
    given.statement = GivenRef{3};
    g1.steps.push_back(given);
    g1.edges.emplace_back("h", "s2");
    auto g2 = chain("Q2_g1", "Q2", {"k1"});
    auto g3 = chain("Q3_g1", "Q3", {"k1"});
    Statement bad;
    bad.predicate = Predicate::Collinear;
    bad.args = {Entity::point("A"), Entity::point("B")};
    g3.steps[0].statement = bad;
    const Catalog c(skills, {p1, p2, p3}, {g1, g2, g3});
    const auto found = codes(lint_catalog(c));
    for (const char* code : {"ALIAS_IS_NAME", "DUPLICATE_ALIAS", "EMPTY_NAME", "DIFFICULTY_RANGE", "NO_TYPE_FLAG",
                             "SUBTYPE_WITHOUT_KEY", "EMPTY_NAMED_PROBLEM", "DANGLING_GRAPH", "DANGLING_SKILL",
                             "GIVEN_INDEX", "MULTI_TYPE", "KEY_WITHOUT_SUBTYPE", "DUPLICATE_ID", "GRAPH_OWNER",
                             "ORPHAN_GRAPH", "BAD_STATEMENT", "UNUSED_SKILL", "NO_GRAPHS"}) {
        EXPECT_TRUE(found.count(code)) << code;
    }
}

TEST(Lint, IsDeterministicAndSorted)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto c = oracle::random_catalog(rng);
        const auto a = lint_catalog(c);
        EXPECT_EQ(a, lint_catalog(c));
        EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), [](const Diagnostic& x, const Diagnostic& y) {
            return std::tie(x.subject, x.code, x.message) < std::tie(y.subject, y.code, y.message);
        }));
        EXPECT_EQ(count_errors(a), 0u) << (a.empty() ? "" : a.front().code + " " + a.front().message);
    }
}

TEST(Ontology, EnumNamesRoundTrip)
{
    for (std::size_t i = 0; i < kAttributeCount; ++i) {
        const auto a = static_cast<Attribute>(i);
        EXPECT_EQ(attribute_from_string(to_string(a)), a);
    }
    for (std::size_t i = 0; i < kProblemTypeCount; ++i) {
        const auto t = static_cast<ProblemType>(i);
        EXPECT_EQ(problem_type_from_string(to_string(t)), t);
    }
    for (auto v : {AttributeValue::No, AttributeValue::Perhaps, AttributeValue::Yes}) {
        EXPECT_EQ(attribute_value_from_string(to_string(v)), v);
    }
    for (auto k : {SkillKind::Fact, SkillKind::Object, SkillKind::Method}) {
        EXPECT_EQ(skill_kind_from_string(to_string(k)), k);
    }
    EXPECT_LT(AttributeValue::No, AttributeValue::Perhaps);
    EXPECT_LT(AttributeValue::Perhaps, AttributeValue::Yes);
}
