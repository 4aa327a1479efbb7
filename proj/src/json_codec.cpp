#include "geom/json_codec.hpp"

#include <algorithm>
#include <cstdio>
#include <initializer_list>
#include <set>
#include <sstream>

namespace geom {

std::string dump_canonical(const json& j)
{
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

json to_json(const Skill& s)
{
    return {
        {"id", s.id},
        {"kind", to_string(s.kind)},
        {"name", s.name},
        {"description", s.description},
        {"aliases", s.aliases},
    };
}

json to_json(const Diagnostic& d)
{
    return {
        {"severity", to_string(d.severity)},
        {"code", d.code},
        {"subject", d.subject},
        {"message", d.message},
    };
}

json to_json(const std::vector<Diagnostic>& diags)
{
    json items = json::array();
    for (const auto& d : diags) items.push_back(to_json(d));
    const auto errors = count_errors(diags);
    return {{"errors", errors}, {"warnings", diags.size() - errors}, {"diagnostics", items}};
}

json to_json(const MatchResult& m)
{
    return {
        {"graph_id", m.graph_id},
        {"step_id", m.step_id},
        {"confidence", m.confidence},
        {"method", to_string(m.method)},
    };
}

json to_json(const LineVerdict& v)
{
    return {
        {"index", v.index},
        {"class", to_string(v.verdict)},
        {"matched", v.matched ? to_json(*v.matched) : json(nullptr)},
        {"justified_in", v.justified_in},
        {"notes", v.notes},
    };
}

json to_json(const ProofLine& l)
{
    return {
        {"index", l.index},
        {"statement_text", l.statement_text},
        {"reason_text", l.reason_text},
        {"refs", l.refs},
    };
}

json to_json(const TeacherReport& r)
{
    json lines = json::array();
    for (const auto& rl : r.lines) {
        auto j = to_json(rl.line);
        j["verdict"] = to_json(rl.verdict);
        lines.push_back(std::move(j));
    }
    json graphs = json::array();
    for (const auto& g : r.graphs) {
        graphs.push_back({
            {"id", g.graph_id},
            {"established", g.established},
            {"total", g.total},
            {"coverage", g.coverage},
        });
    }
    return {
        {"problem_id", r.problem_id},
        {"status", to_string(r.status)},
        {"best_graph", r.best_graph},
        {"coverage", r.coverage},
        {"manual_review", r.manual_review},
        {"unmatched_lines", r.unmatched_lines},
        {"lines", lines},
        {"graphs", graphs},
    };
}

json to_json(const SessionSummary& s)
{
    return {
        {"status", to_string(s.status)},
        {"best_graph", s.best_graph},
        {"coverage", s.coverage},
        {"line_count", s.line_count},
    };
}

json to_json(const Hint& h)
{
    return {
        {"graph_id", h.graph_id},
        {"step_id", h.step_id},
        {"level", h.level},
        {"text", h.text},
    };
}

namespace {

json criteria_json(const CriteriaRecord& c)
{
    return {
        {"c1_feasible", c.c1},
        {"c2_integration", c.c2},
        {"c3_necessity", c.c3},
        {"eligible", c.eligible},
        {"witness", c.witness},
        {"witness_cost", c.witness_cost},
        {"feasible_graphs", c.feasible},
        {"shortcuts", c.shortcuts},
        {"shortcut_cost", c.shortcut_cost ? json(*c.shortcut_cost) : json(nullptr)},
    };
}

} // namespace

json to_json(const SetReport& r)
{
    json blocks = json::array();
    for (const auto& b : r.blocks) {
        blocks.push_back({
            {"problem_id", b.problem_id},
            {"difficulty", b.difficulty},
            {"band", to_string(b.band)},
            {"witness_graph", b.witness},
            {"criteria", criteria_json(b.criteria)},
        });
    }
    json out = {
        {"target", r.target},
        {"mode", to_string(r.mode)},
        {"requested", r.requested},
        {"problems", blocks},
        {"notes", r.notes},
    };
    if (r.mode == NecessityMode::Efficiency) out["ratio"] = r.ratio;
    return out;
}

namespace {

json step_to_json(const Step& s)
{
    json j = {{"id", s.id}, {"goal", s.is_goal}};
    if (const auto* g = std::get_if<GivenRef>(&s.statement)) {
        j["given"] = g->index;
    } else {
        j["skill"] = s.skill_id;
        j["statement"] = render(std::get<Statement>(s.statement));
    }
    return j;
}

json graph_to_json(const SolutionGraph& g)
{
    json steps = json::array();
    for (const auto& s : g.steps) steps.push_back(step_to_json(s));
    json edges = json::array();
    for (const auto& [from, to] : g.edges) edges.push_back({from, to});
    return {{"id", g.id}, {"steps", steps}, {"edges", edges}};
}

json attributes_json(const ProblemAttributes& a)
{
    json j = json::object();
    for (std::size_t i = 0; i < kAttributeCount; ++i) {
        j[std::string(to_string(static_cast<Attribute>(i)))] = to_string(a.values[i]);
    }
    if (a.key_problem_subtype) j["key_problem_subtype"] = to_string(*a.key_problem_subtype);
    return j;
}

json type_flags_json(const ProblemTypeFlags& f)
{
    json j = json::object();
    for (std::size_t i = 0; i < kProblemTypeCount; ++i) {
        j[std::string(to_string(static_cast<ProblemType>(i)))] = f.flags[i];
    }
    return j;
}

json provenance_json(const Provenance& p)
{
    json j = {{"authors", p.authors}, {"sources", p.sources}, {"competitions", p.competitions}};
    if (p.named_problem) j["named_problem"] = *p.named_problem;
    return j;
}

} // namespace

json problem_to_json(const Catalog& catalog, const Problem& p)
{
    json givens = json::array();
    for (const auto& g : p.givens) givens.push_back(render(g));
    json graphs = json::array();
    for (const auto& gid : p.graphs) {
        if (const auto* g = catalog.find_graph(gid)) graphs.push_back(graph_to_json(*g));
    }
    return {
        {"id", p.id},
        {"statement_text", p.statement_text},
        {"givens", givens},
        {"difficulty", p.difficulty},
        {"attributes", attributes_json(p.attributes)},
        {"type_flags", type_flags_json(p.type_flags)},
        {"provenance", provenance_json(p.provenance)},
        {"graphs", graphs},
    };
}

json problem_summary_json(const Problem& p)
{
    json j = {
        {"id", p.id},
        {"statement_text", p.statement_text},
        {"difficulty", p.difficulty},
        {"attributes", attributes_json(p.attributes)},
        {"type_flags", type_flags_json(p.type_flags)},
        {"provenance", provenance_json(p.provenance)},
        {"graph_count", p.graphs.size()},
    };
    if (p.difficulty >= 1 && p.difficulty <= 40) j["band"] = to_string(difficulty_band(p.difficulty));
    return j;
}

json catalog_to_json(const Catalog& catalog)
{
    json skills = json::array();
    for (const auto& s : catalog.skills()) skills.push_back(to_json(s));
    json problems = json::array();
    for (const auto& p : catalog.problems()) problems.push_back(problem_to_json(catalog, p));
    json synonyms = json::array();
    for (const auto& [alias, canonical] : catalog.synonyms()) synonyms.push_back({alias, canonical});
    return {
        {"schema_version", 1},
        {"skills", skills},
        {"problems", problems},
        {"synonyms", synonyms},
    };
}

namespace {

using Ptr = json::json_pointer;

// Strict field access with positioned failures.
class Reader {
public:
    explicit Reader(std::string_view source) : source_(source) {}

    [[noreturn]] void fail(const Ptr& at, const std::string& message) const
    {
        throw Error(ErrorCode::ParseError, message + " at " + where(at), where(at));
    }

    std::string where(const Ptr& at) const { return source_ + "#" + at.to_string(); }

    const json& object(const json& j, const Ptr& at, std::initializer_list<std::string_view> allowed) const
    {
        if (!j.is_object()) fail(at, "expected an object");
        for (const auto& [key, _] : j.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(at / key, "unknown key '" + key + "'");
            }
        }
        return j;
    }

    const json& array(const json& j, const Ptr& at) const
    {
        if (!j.is_array()) fail(at, "expected an array");
        return j;
    }

    const json* optional_field(const json& obj, const std::string& key) const
    {
        auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }

    const json& field(const json& obj, const Ptr& at, const std::string& key) const
    {
        auto* f = optional_field(obj, key);
        if (!f) fail(at / key, "missing required key '" + key + "'");
        return *f;
    }

    std::string string(const json& j, const Ptr& at) const
    {
        if (!j.is_string()) fail(at, "expected a string");
        return j.get<std::string>();
    }

    long long integer(const json& j, const Ptr& at) const
    {
        if (!j.is_number_integer()) fail(at, "expected an integer");
        return j.get<long long>();
    }

    bool boolean(const json& j, const Ptr& at) const
    {
        if (!j.is_boolean()) fail(at, "expected a boolean");
        return j.get<bool>();
    }

    double number(const json& j, const Ptr& at) const
    {
        if (!j.is_number()) fail(at, "expected a number");
        return j.get<double>();
    }

    std::vector<std::string> strings(const json& j, const Ptr& at) const
    {
        std::vector<std::string> out;
        const auto& arr = array(j, at);
        for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(string(arr[i], at / i));
        return out;
    }

    std::vector<std::string> optional_strings(const json& obj, const Ptr& at, const std::string& key) const
    {
        auto* f = optional_field(obj, key);
        return f ? strings(*f, at / key) : std::vector<std::string>{};
    }

    Statement statement(const json& j, const Ptr& at) const
    {
        const auto text = string(j, at);
        try {
            return parse_statement(text);
        } catch (const ParseError& e) {
            throw ParseError(e.position(), e.expected(), std::string(e.what()) + " at " + where(at), e.code(),
                             where(at));
        }
    }

private:
    std::string source_;
};

template <typename Enum, typename Fn>
Enum enum_value(const Reader& rd, const json& j, const Ptr& at, Fn from_string, std::string_view what)
{
    const auto s = rd.string(j, at);
    auto v = from_string(s);
    if (!v) rd.fail(at, "unknown " + std::string(what) + " '" + s + "'");
    return *v;
}

Skill read_skill(const Reader& rd, const json& j, const Ptr& at)
{
    rd.object(j, at, {"id", "kind", "name", "description", "aliases"});
    Skill s;
    s.id = rd.string(rd.field(j, at, "id"), at / "id");
    s.kind = enum_value<SkillKind>(rd, rd.field(j, at, "kind"), at / "kind", skill_kind_from_string, "skill kind");
    s.name = rd.string(rd.field(j, at, "name"), at / "name");
    if (auto* d = rd.optional_field(j, "description")) s.description = rd.string(*d, at / "description");
    s.aliases = rd.optional_strings(j, at, "aliases");
    return s;
}

Step read_step(const Reader& rd, const json& j, const Ptr& at)
{
    rd.object(j, at, {"id", "skill", "statement", "given", "goal"});
    Step s;
    s.id = rd.string(rd.field(j, at, "id"), at / "id");
    if (auto* g = rd.optional_field(j, "goal")) s.is_goal = rd.boolean(*g, at / "goal");
    auto* given = rd.optional_field(j, "given");
    auto* stmt = rd.optional_field(j, "statement");
    if (given && (stmt || rd.optional_field(j, "skill"))) rd.fail(at, "a Given step has no skill or statement");
    if (given) {
        const auto k = rd.integer(*given, at / "given");
        if (k < 0) rd.fail(at / "given", "given index must be non-negative");
        s.statement = GivenRef{static_cast<std::size_t>(k)};
        return s;
    }
    s.skill_id = rd.string(rd.field(j, at, "skill"), at / "skill");
    s.statement = rd.statement(rd.field(j, at, "statement"), at / "statement");
    return s;
}

SolutionGraph read_graph(const Reader& rd, const json& j, const Ptr& at, const std::string& problem_id)
{
    rd.object(j, at, {"id", "steps", "edges"});
    SolutionGraph g;
    g.id = rd.string(rd.field(j, at, "id"), at / "id");
    g.problem_id = problem_id;
    const auto& steps = rd.array(rd.field(j, at, "steps"), at / "steps");
    for (std::size_t i = 0; i < steps.size(); ++i) g.steps.push_back(read_step(rd, steps[i], at / "steps" / i));
    if (auto* e = rd.optional_field(j, "edges")) {
        const auto& edges = rd.array(*e, at / "edges");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto p = at / "edges" / i;
            const auto& pair = rd.array(edges[i], p);
            if (pair.size() != 2) rd.fail(p, "an edge is a [from, to] pair");
            g.edges.emplace_back(rd.string(pair[0], p / 0), rd.string(pair[1], p / 1));
        }
    }
    return g;
}

Problem read_problem(const Reader& rd, const json& j, const Ptr& at, std::vector<SolutionGraph>& graphs)
{
    rd.object(j, at,
              {"id", "statement_text", "givens", "difficulty", "attributes", "type_flags", "provenance", "graphs"});
    Problem p;
    p.id = rd.string(rd.field(j, at, "id"), at / "id");
    if (auto* t = rd.optional_field(j, "statement_text")) p.statement_text = rd.string(*t, at / "statement_text");
    if (auto* gv = rd.optional_field(j, "givens")) {
        const auto& arr = rd.array(*gv, at / "givens");
        for (std::size_t i = 0; i < arr.size(); ++i) p.givens.push_back(rd.statement(arr[i], at / "givens" / i));
    }
    const auto d = rd.integer(rd.field(j, at, "difficulty"), at / "difficulty");
    if (d < -1000000 || d > 1000000) rd.fail(at / "difficulty", "difficulty is not a small integer");
    p.difficulty = static_cast<int>(d);

    if (auto* a = rd.optional_field(j, "attributes")) {
        const auto ap = at / "attributes";
        if (!a->is_object()) rd.fail(ap, "expected an object");
        for (const auto& [key, value] : a->items()) {
            if (key == "key_problem_subtype") {
                p.attributes.key_problem_subtype = enum_value<KeyProblemSubtype>(
                    rd, value, ap / key, key_problem_subtype_from_string, "key problem subtype");
                continue;
            }
            auto attr = attribute_from_string(key);
            if (!attr) rd.fail(ap / key, "unknown key '" + key + "'");
            p.attributes.set(*attr, enum_value<AttributeValue>(rd, value, ap / key, attribute_value_from_string,
                                                              "attribute value"));
        }
    }
    if (auto* f = rd.optional_field(j, "type_flags")) {
        const auto fp = at / "type_flags";
        if (!f->is_object()) rd.fail(fp, "expected an object");
        for (const auto& [key, value] : f->items()) {
            auto type = problem_type_from_string(key);
            if (!type) rd.fail(fp / key, "unknown key '" + key + "'");
            p.type_flags.set(*type, rd.boolean(value, fp / key));
        }
    }
    if (auto* pv = rd.optional_field(j, "provenance")) {
        const auto pp = at / "provenance";
        rd.object(*pv, pp, {"authors", "sources", "named_problem", "competitions"});
        p.provenance.authors = rd.optional_strings(*pv, pp, "authors");
        p.provenance.sources = rd.optional_strings(*pv, pp, "sources");
        p.provenance.competitions = rd.optional_strings(*pv, pp, "competitions");
        if (auto* n = rd.optional_field(*pv, "named_problem")) {
            p.provenance.named_problem = rd.string(*n, pp / "named_problem");
        }
    }
    if (auto* gs = rd.optional_field(j, "graphs")) {
        const auto& arr = rd.array(*gs, at / "graphs");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            auto g = read_graph(rd, arr[i], at / "graphs" / i, p.id);
            p.graphs.push_back(g.id);
            graphs.push_back(std::move(g));
        }
    }
    return p;
}

} // namespace

Catalog catalog_from_json(const json& j, std::string_view source)
{
    Reader rd(source);
    const Ptr root;
    rd.object(j, root, {"schema_version", "skills", "problems", "synonyms"});
    const auto& version = rd.field(j, root, "schema_version");
    if (!version.is_number_integer() || version.get<long long>() != 1) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "unsupported schema_version " + version.dump() + ", expected 1", rd.where(root / "schema_version"));
    }
    std::vector<Skill> skills;
    std::vector<Problem> problems;
    std::vector<SolutionGraph> graphs;
    SynonymTable synonyms;
    if (auto* s = rd.optional_field(j, "skills")) {
        const auto& arr = rd.array(*s, root / "skills");
        for (std::size_t i = 0; i < arr.size(); ++i) skills.push_back(read_skill(rd, arr[i], root / "skills" / i));
    }
    if (auto* p = rd.optional_field(j, "problems")) {
        const auto& arr = rd.array(*p, root / "problems");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            problems.push_back(read_problem(rd, arr[i], root / "problems" / i, graphs));
        }
    }
    if (auto* syn = rd.optional_field(j, "synonyms")) {
        const auto& arr = rd.array(*syn, root / "synonyms");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto at = root / "synonyms" / i;
            const auto& pair = rd.array(arr[i], at);
            if (pair.size() != 2) rd.fail(at, "a synonym is an [alias, canonical] pair");
            synonyms.emplace_back(rd.string(pair[0], at / 0), rd.string(pair[1], at / 1));
        }
    }
    return Catalog(std::move(skills), std::move(problems), std::move(graphs), std::move(synonyms));
}

ProofLine proof_line_from_json(const json& j, std::string_view source, const json::json_pointer& at)
{
    Reader rd(source);
    rd.object(j, at, {"index", "statement_text", "reason_text", "refs"});
    ProofLine l;
    const auto idx = rd.integer(rd.field(j, at, "index"), at / "index");
    if (idx < 1 || idx > 1000000) rd.fail(at / "index", "line index must be a positive integer");
    l.index = static_cast<int>(idx);
    l.statement_text = rd.string(rd.field(j, at, "statement_text"), at / "statement_text");
    if (auto* r = rd.optional_field(j, "reason_text")) l.reason_text = rd.string(*r, at / "reason_text");
    if (auto* refs = rd.optional_field(j, "refs")) {
        const auto& arr = rd.array(*refs, at / "refs");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto r = rd.integer(arr[i], at / "refs" / i);
            if (r < 1 || r >= l.index) rd.fail(at / "refs" / i, "refs must cite earlier lines");
            l.refs.push_back(static_cast<int>(r));
        }
    }
    return l;
}

TeacherReport report_from_json(const json& j, std::string_view source)
{
    Reader rd(source);
    const Ptr root;
    rd.object(j, root,
              {"problem_id", "status", "best_graph", "coverage", "manual_review", "unmatched_lines", "lines", "graphs"});
    TeacherReport r;
    r.problem_id = rd.string(rd.field(j, root, "problem_id"), root / "problem_id");
    const auto status = rd.string(rd.field(j, root, "status"), root / "status");
    if (status == "open") r.status = SessionStatus::Open;
    else if (status == "complete") r.status = SessionStatus::Complete;
    else if (status == "abandoned") r.status = SessionStatus::Abandoned;
    else rd.fail(root / "status", "unknown status '" + status + "'");
    r.best_graph = rd.string(rd.field(j, root, "best_graph"), root / "best_graph");
    r.coverage = rd.number(rd.field(j, root, "coverage"), root / "coverage");
    r.manual_review = rd.boolean(rd.field(j, root, "manual_review"), root / "manual_review");
    const auto& unmatched = rd.array(rd.field(j, root, "unmatched_lines"), root / "unmatched_lines");
    for (std::size_t i = 0; i < unmatched.size(); ++i) {
        r.unmatched_lines.push_back(static_cast<int>(rd.integer(unmatched[i], root / "unmatched_lines" / i)));
    }
    const auto& lines = rd.array(rd.field(j, root, "lines"), root / "lines");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto at = root / "lines" / i;
        json line = lines[i];
        if (!line.is_object()) rd.fail(at, "expected an object");
        const json verdict = line.contains("verdict") ? line["verdict"] : json();
        line.erase("verdict");
        ReportLine rl;
        rl.line = proof_line_from_json(line, source, at);
        const auto vp = at / "verdict";
        rd.object(verdict, vp, {"index", "class", "matched", "justified_in", "notes"});
        rl.verdict.index = static_cast<int>(rd.integer(rd.field(verdict, vp, "index"), vp / "index"));
        rl.verdict.verdict = enum_value<VerdictClass>(rd, rd.field(verdict, vp, "class"), vp / "class",
                                                      verdict_class_from_string, "verdict class");
        const auto& m = rd.field(verdict, vp, "matched");
        if (!m.is_null()) {
            const auto mp = vp / "matched";
            rd.object(m, mp, {"graph_id", "step_id", "confidence", "method"});
            MatchResult mr;
            mr.graph_id = rd.string(rd.field(m, mp, "graph_id"), mp / "graph_id");
            mr.step_id = rd.string(rd.field(m, mp, "step_id"), mp / "step_id");
            mr.confidence = rd.number(rd.field(m, mp, "confidence"), mp / "confidence");
            const auto method = rd.string(rd.field(m, mp, "method"), mp / "method");
            bool known = false;
            for (auto candidate : {MatchMethod::Exact, MatchMethod::Normalized, MatchMethod::Fuzzy,
                                   MatchMethod::External}) {
                if (to_string(candidate) == method) {
                    mr.method = candidate;
                    known = true;
                }
            }
            if (!known) rd.fail(mp / "method", "unknown match method '" + method + "'");
            rl.verdict.matched = mr;
        }
        rl.verdict.justified_in = rd.strings(rd.field(verdict, vp, "justified_in"), vp / "justified_in");
        rl.verdict.notes = rd.strings(rd.field(verdict, vp, "notes"), vp / "notes");
        r.lines.push_back(std::move(rl));
    }
    const auto& graphs = rd.array(rd.field(j, root, "graphs"), root / "graphs");
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto at = root / "graphs" / i;
        rd.object(graphs[i], at, {"id", "established", "total", "coverage"});
        GraphCoverage g;
        g.graph_id = rd.string(rd.field(graphs[i], at, "id"), at / "id");
        g.established = rd.strings(rd.field(graphs[i], at, "established"), at / "established");
        g.total = static_cast<std::size_t>(rd.integer(rd.field(graphs[i], at, "total"), at / "total"));
        g.coverage = rd.number(rd.field(graphs[i], at, "coverage"), at / "coverage");
        r.graphs.push_back(std::move(g));
    }
    return r;
}

json error_to_json(const Error& e, int status)
{
    json detail = {{"where", e.where()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        detail["position"] = pe->position();
        detail["expected"] = pe->expected();
    }
    return {
        {"status", status},
        {"code", to_string(e.code())},
        {"message", e.what()},
        {"detail", detail},
    };
}

std::string to_text(const TeacherReport& r)
{
    std::ostringstream os;
    char cov[32];
    std::snprintf(cov, sizeof cov, "%.4f", r.coverage);
    os << "problem " << r.problem_id << ", status " << to_string(r.status) << "\n";
    os << "best graph " << r.best_graph << ", coverage " << cov << "\n";
    os << "manual review: " << (r.manual_review ? "yes" : "no") << "\n";
    for (const auto& rl : r.lines) {
        os << rl.line.index << ". " << rl.line.statement_text;
        if (!rl.line.reason_text.empty()) os << "  [" << rl.line.reason_text << "]";
        if (!rl.line.refs.empty()) {
            os << "  refs";
            for (int ref : rl.line.refs) os << ' ' << ref;
        }
        os << "\n   " << to_string(rl.verdict.verdict);
        if (rl.verdict.matched) os << " -> " << rl.verdict.matched->graph_id << "/" << rl.verdict.matched->step_id;
        for (const auto& n : rl.verdict.notes) os << ' ' << n;
        os << "\n";
    }
    if (!r.unmatched_lines.empty()) {
        os << "unmatched lines:";
        for (int i : r.unmatched_lines) os << ' ' << i;
        os << "\n";
    }
    return os.str();
}

std::string to_text(const std::vector<Diagnostic>& diags)
{
    std::ostringstream os;
    for (const auto& d : diags) {
        os << to_string(d.severity) << " " << d.code << " " << d.subject << ": " << d.message << "\n";
    }
    const auto errors = count_errors(diags);
    os << errors << " errors, " << diags.size() - errors << " warnings\n";
    return os.str();
}

} // namespace geom
