#include "oracles.hpp"

#include "geom/json_codec.hpp"
#include "geom/matcher.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace geom::oracle {

std::filesystem::path data_dir() { return GEOM_DATA_DIR; }
std::filesystem::path golden_dir() { return GEOM_GOLDEN_DIR; }
std::filesystem::path sample_corpus_path() { return data_dir() / "corpus" / "sample_corpus.json"; }

std::vector<std::filesystem::path> script_paths()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(data_dir() / "scripts")) {
        if (e.path().extension() == ".json") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool cycle_by_paths(const SolutionGraph& graph)
{
    std::map<std::string, std::vector<std::string>> adj;
    std::set<std::string> ids;
    for (const auto& s : graph.steps) ids.insert(s.id);
    for (const auto& [from, to] : graph.edges) {
        if (ids.count(from) && ids.count(to)) adj[from].push_back(to);
    }
    for (const auto& start : ids) {
        std::set<std::string> on_path{start};
        std::function<bool(const std::string&)> walk = [&](const std::string& at) {
            for (const auto& next : adj[at]) {
                if (next == start) return true;
                if (on_path.count(next)) continue;
                on_path.insert(next);
                if (walk(next)) return true;
                on_path.erase(next);
            }
            return false;
        };
        if (walk(start)) return true;
    }
    return false;
}

SolutionGraph random_graph(std::mt19937& rng, int max_nodes, double edge_probability)
{
    std::uniform_int_distribution<int> size(1, max_nodes);
    std::bernoulli_distribution edge(edge_probability);
    std::bernoulli_distribution self_loop(0.02);
    SolutionGraph g;
    g.id = "rand";
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
        Step s;
        s.id = "s" + std::to_string(i);
        s.skill_id = "k";
        s.statement = parse_statement("RightAngle(ang ABC)");
        s.is_goal = i == n - 1;
        g.steps.push_back(std::move(s));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if ((i != j && edge(rng)) || (i == j && self_loop(rng))) {
                g.edges.emplace_back("s" + std::to_string(i), "s" + std::to_string(j));
            }
        }
    }
    return g;
}

namespace {

std::set<std::string> skills_used(const SolutionGraph& g)
{
    std::set<std::string> out;
    for (const auto& s : g.steps) {
        if (!s.is_given()) out.insert(s.skill_id);
    }
    return out;
}

double cost_of(const SolutionGraph& g, const SkillWeights& weights)
{
    double c = 0;
    for (const auto& s : g.steps) {
        if (s.is_given()) continue;
        auto it = weights.find(s.skill_id);
        c += it == weights.end() ? 1.0 : it->second;
    }
    return c;
}

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b)
{
    for (const auto& x : a) {
        if (!b.count(x)) return false;
    }
    return true;
}

} // namespace

OracleVerdict selector_oracle(const Catalog& catalog, const Problem& problem, const SetRequest& request)
{
    OracleVerdict v;
    auto allowed = request.known;
    allowed.insert(request.target);
    const double inf = std::numeric_limits<double>::infinity();
    double best_feasible = inf;
    std::vector<double> shortcut_costs;
    for (const auto& gid : problem.graphs) {
        const SolutionGraph* g = nullptr;
        for (const auto& cand : catalog.graphs()) {
            if (cand.id == gid) {
                g = &cand;
                break;
            }
        }
        if (!g) continue;
        const auto skills = skills_used(*g);
        const bool uses_target = skills.count(request.target) > 0;
        if (subset_of(skills, allowed)) {
            v.c1 = true;
            if (uses_target) {
                v.c2 = true;
                best_feasible = std::min(best_feasible, cost_of(*g, request.weights));
            }
        }
        if (!uses_target && subset_of(skills, request.known)) shortcut_costs.push_back(cost_of(*g, request.weights));
    }
    if (request.reinforce) {
        v.c3 = true;
    } else if (request.mode == NecessityMode::Strict) {
        v.c3 = shortcut_costs.empty();
    } else {
        v.c3 = true;
        for (double c : shortcut_costs) {
            // min over an empty feasible set is +inf, which no finite shortcut reaches
            if (!(c >= request.ratio * best_feasible)) v.c3 = false;
        }
    }
    return v;
}

SetRequest random_request(std::mt19937& rng, const Catalog& catalog)
{
    std::uniform_real_distribution<double> density(0.2, 0.9);
    const double q = density(rng);
    std::bernoulli_distribution pick(q);
    SetRequest r;
    for (const auto& s : catalog.skills()) {
        if (pick(rng)) r.known.insert(s.id);
    }
    std::vector<std::string> unknown;
    for (const auto& s : catalog.skills()) {
        if (!r.known.count(s.id)) unknown.push_back(s.id);
    }
    if (unknown.empty()) {
        r.known.erase(catalog.skills().front().id);
        unknown.push_back(catalog.skills().front().id);
    }
    r.target = unknown[std::uniform_int_distribution<std::size_t>(0, unknown.size() - 1)(rng)];
    r.mode = std::bernoulli_distribution(0.5)(rng) ? NecessityMode::Strict : NecessityMode::Efficiency;
    const double ratios[] = {1.1, 1.5, 2.0, 3.0};
    r.ratio = ratios[std::uniform_int_distribution<int>(0, 3)(rng)];
    r.count = 30;
    return r;
}

MatchConfig session_match_config(const Catalog& catalog)
{
    MatchConfig c;
    c.synonyms = catalog.synonyms();
    return c;
}

namespace {

struct Node {
    std::size_t graph;
    std::size_t step;
};

struct LineFacts {
    std::vector<std::pair<std::size_t, std::size_t>> matched;
    std::map<std::pair<std::size_t, std::size_t>, bool> reason_ok;
    std::vector<int> refs;
};

} // namespace

std::optional<std::set<std::pair<std::string, std::string>>> derivable_closure(
    const Catalog& catalog, const Problem& problem, const std::vector<ProofLine>& lines, std::size_t max_steps,
    bool* ambiguous)
{
    auto graphs = catalog.graphs_of(problem);
    std::sort(graphs.begin(), graphs.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* g : graphs) {
        const auto derived = std::count_if(g->steps.begin(), g->steps.end(), [](const Step& st) { return !st.is_given(); });
        if (static_cast<std::size_t>(derived) > max_steps) return std::nullopt;
    }

    // Raw predecessor lists by step index.
    std::vector<std::vector<std::vector<std::size_t>>> preds(graphs.size());
    std::vector<Node> nodes;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> node_of;
    for (std::size_t g = 0; g < graphs.size(); ++g) {
        const auto& steps = graphs[g]->steps;
        preds[g].resize(steps.size());
        auto index = [&](const std::string& id) -> std::optional<std::size_t> {
            for (std::size_t i = 0; i < steps.size(); ++i) {
                if (steps[i].id == id) return i;
            }
            return std::nullopt;
        };
        for (const auto& [from, to] : graphs[g]->edges) {
            auto f = index(from), t = index(to);
            if (f && t) preds[g][*t].push_back(*f);
        }
        for (std::size_t s = 0; s < steps.size(); ++s) {
            if (steps[s].is_given()) continue;
            node_of[{g, s}] = nodes.size();
            nodes.push_back({g, s});
        }
    }

    const auto config = session_match_config(catalog);
    std::vector<LineFacts> facts;
    for (const auto& line : lines) {
        LineFacts f;
        f.refs = line.refs;
        const auto results = match_statement(line.statement_text, problem, graphs, config);
        for (const auto& m : results) {
            for (std::size_t g = 0; g < graphs.size(); ++g) {
                if (graphs[g]->id != m.graph_id) continue;
                for (std::size_t s = 0; s < graphs[g]->steps.size(); ++s) {
                    if (graphs[g]->steps[s].id != m.step_id) continue;
                    f.matched.emplace_back(g, s);
                    bool ok = false;
                    const auto& step = graphs[g]->steps[s];
                    if (!step.is_given() && line.reason_text.find_first_not_of(" \t\r\n") != std::string::npos) {
                        try {
                            ok = match_reason(line.reason_text, step.skill_id, catalog).matched;
                        } catch (const Error&) {
                            ok = false;
                        }
                    }
                    f.reason_ok[{g, s}] = ok;
                }
            }
        }
        facts.push_back(std::move(f));
    }

    // A candidate set is accepted when, replaying the lines against it, every
    // member gets justified and no non-member does.
    auto sweep = [&](const std::vector<bool>& allowed, bool& rejected) {
        rejected = false;
        std::vector<std::vector<bool>> state(graphs.size());
        for (std::size_t g = 0; g < graphs.size(); ++g) {
            state[g].resize(graphs[g]->steps.size());
            for (std::size_t s = 0; s < graphs[g]->steps.size(); ++s) state[g][s] = graphs[g]->steps[s].is_given();
        }
        auto cov = [&](std::size_t g) {
            std::size_t total = 0, done = 0;
            for (std::size_t s = 0; s < graphs[g]->steps.size(); ++s) {
                if (graphs[g]->steps[s].is_given()) continue;
                ++total;
                done += state[g][s] ? 1 : 0;
            }
            return total ? static_cast<double>(done) / static_cast<double>(total) : 0.0;
        };
        for (std::size_t i = 0; i < facts.size(); ++i) {
            const auto& f = facts[i];
            std::size_t best = 0;
            for (std::size_t g = 1; g < graphs.size(); ++g) {
                if (cov(g) > cov(best)) best = g;
            }
            const double best_cov = cov(best);
            std::vector<std::pair<std::size_t, std::size_t>> add;
            for (const auto& [g, s] : f.matched) {
                if (g != best && cov(g) == 0.0 && best_cov >= 0.5) continue;
                if (state[g][s]) continue;
                bool deps = true;
                for (auto p : preds[g][s]) deps = deps && state[g][p];
                if (!deps) continue;
                bool by_refs = !f.refs.empty();
                std::set<std::size_t> covered;
                for (int r : f.refs) {
                    bool supports = false;
                    for (const auto& [mg, ms] : facts[static_cast<std::size_t>(r - 1)].matched) {
                        const auto& ps = preds[g][s];
                        if (mg == g && state[g][ms] && std::find(ps.begin(), ps.end(), ms) != ps.end()) {
                            covered.insert(ms);
                            supports = true;
                        }
                    }
                    by_refs = by_refs && supports;
                }
                bool derived_pred = false;
                for (auto p : preds[g][s]) {
                    if (graphs[g]->steps[p].is_given()) continue;
                    derived_pred = true;
                    by_refs = by_refs && covered.count(p);
                }
                by_refs = by_refs && derived_pred;
                if (!(f.reason_ok.at({g, s}) || by_refs)) continue;
                if (allowed[node_of.at({g, s})]) {
                    add.emplace_back(g, s);
                } else {
                    rejected = true;
                }
            }
            for (const auto& [g, s] : add) state[g][s] = true;
        }
        std::vector<bool> out(nodes.size());
        for (std::size_t n = 0; n < nodes.size(); ++n) out[n] = state[nodes[n].graph][nodes[n].step];
        return out;
    };

    std::vector<std::vector<bool>> accepted;
    const std::size_t count = std::size_t{1} << nodes.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<bool> subset(nodes.size());
        for (std::size_t n = 0; n < nodes.size(); ++n) subset[n] = (mask >> n) & 1;
        bool rejected = false;
        if (sweep(subset, rejected) == subset && !rejected) accepted.push_back(subset);
    }
    if (ambiguous) *ambiguous = accepted.size() != 1;
    std::set<std::pair<std::string, std::string>> out;
    if (accepted.empty()) return out;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (accepted.front()[n]) out.emplace(graphs[nodes[n].graph]->id, graphs[nodes[n].graph]->steps[nodes[n].step].id);
    }
    return out;
}

std::set<std::pair<std::string, std::string>> established_steps(const Catalog& catalog, const Problem& problem,
                                                                const std::vector<ProofLine>& lines)
{
    Derivation d(catalog, problem, session_match_config(catalog));
    for (const auto& l : lines) d.classify(l);
    std::set<std::pair<std::string, std::string>> out;
    for (std::size_t g = 0; g < d.graphs().size(); ++g) {
        const auto* graph = d.graphs()[g];
        for (std::size_t s = 0; s < graph->steps.size(); ++s) {
            if (!graph->steps[s].is_given() && d.is_established(g, s)) out.emplace(graph->id, graph->steps[s].id);
        }
    }
    return out;
}

namespace {

std::vector<std::string> distinct_points(std::mt19937& rng, std::size_t n)
{
    std::vector<std::string> pool;
    for (char c = 'A'; c <= 'Z'; ++c) {
        pool.emplace_back(1, c);
        pool.push_back(std::string(1, c) + "1");
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(n);
    return pool;
}

} // namespace

Statement random_statement(std::mt19937& rng, Predicate p)
{
    Statement s;
    s.predicate = p;
    auto pts = distinct_points(rng, 12);
    auto seg = [&](std::size_t i) { return Entity::segment(pts[i], pts[i + 1]); };
    auto ang = [&](std::size_t i) { return Entity::angle(pts[i], pts[i + 1], pts[i + 2]); };
    auto tri = [&](std::size_t i) { return Entity::triangle(pts[i], pts[i + 1], pts[i + 2]); };
    switch (p) {
    case Predicate::Midpoint:
        s.args = {Entity::point(pts[0]), Entity::point(pts[1]), Entity::point(pts[2])};
        break;
    case Predicate::Congruent:
    case Predicate::Similar:
        s.args = {tri(0), tri(3)};
        break;
    case Predicate::Parallel:
    case Predicate::Perpendicular:
    case Predicate::EqualLength:
        s.args = {seg(0), seg(2)};
        break;
    case Predicate::EqualAngle:
        s.args = {ang(0), ang(3)};
        break;
    case Predicate::OnCircle: {
        const char* names[] = {"k", "w", "omega", "c1"};
        s.args = {Entity::point(pts[0]), Entity::circle(names[std::uniform_int_distribution<int>(0, 3)(rng)])};
        break;
    }
    case Predicate::Collinear:
    case Predicate::Concyclic: {
        const std::size_t lo = p == Predicate::Collinear ? 3 : 4;
        const auto n = std::uniform_int_distribution<std::size_t>(lo, lo + 2)(rng);
        for (std::size_t i = 0; i < n; ++i) s.args.push_back(Entity::point(pts[i]));
        break;
    }
    case Predicate::Bisects:
        s.args = {seg(0), std::bernoulli_distribution(0.5)(rng) ? ang(2) : seg(2)};
        break;
    case Predicate::RightAngle:
        s.args = {ang(0)};
        break;
    case Predicate::ProductEqual:
        s.args = {seg(0), seg(2), seg(4), seg(6)};
        break;
    }
    return canonicalize(std::move(s));
}

namespace {

std::string random_text(std::mt19937& rng, const std::string& stem)
{
    static const std::vector<std::string> flavours = {"", " (revisited)", " \xC3\xA9tude", " \xE2\x88\xA0 chase",
                                                      " \"quoted\"", " tab\there", " \xCE\xB1\xCE\xB2"};
    return stem + flavours[std::uniform_int_distribution<std::size_t>(0, flavours.size() - 1)(rng)];
}

} // namespace

Catalog random_catalog(std::mt19937& rng)
{
    std::uniform_int_distribution<int> n_skills(1, 8), n_problems(0, 5), n_graphs(1, 3), n_steps(1, 6);
    std::uniform_int_distribution<int> value(0, 2), difficulty(1, 40);
    std::bernoulli_distribution coin(0.5);

    std::vector<Skill> skills;
    const int ns = n_skills(rng);
    for (int i = 0; i < ns; ++i) {
        Skill s;
        s.id = "sk" + std::to_string(i);
        s.kind = static_cast<SkillKind>(i % 3);
        s.name = random_text(rng, "skill number " + std::to_string(i));
        if (coin(rng)) s.description = random_text(rng, "about skill " + std::to_string(i));
        if (coin(rng)) s.aliases.push_back("alias " + std::to_string(i));
        skills.push_back(std::move(s));
    }

    std::vector<Problem> problems;
    std::vector<SolutionGraph> graphs;
    const int np = n_problems(rng);
    for (int i = 0; i < np; ++i) {
        Problem p;
        p.id = "Q" + std::to_string(i);
        p.statement_text = random_text(rng, "Problem " + std::to_string(i));
        p.difficulty = difficulty(rng);
        for (std::size_t a = 0; a < kAttributeCount; ++a) {
            p.attributes.set(static_cast<Attribute>(a), static_cast<AttributeValue>(value(rng)));
        }
        if (p.attributes.get(Attribute::KeyProblem) == AttributeValue::Yes && coin(rng)) {
            p.attributes.key_problem_subtype =
                coin(rng) ? KeyProblemSubtype::ProblemTheorem : KeyProblemSubtype::ProblemMethod;
        }
        p.type_flags.set(static_cast<ProblemType>(std::uniform_int_distribution<int>(0, 6)(rng)));
        if (coin(rng)) p.provenance.authors.push_back(random_text(rng, "Author"));
        if (coin(rng)) p.provenance.sources.push_back("source " + std::to_string(i));
        if (coin(rng)) p.provenance.competitions.push_back("olympiad " + std::to_string(i));
        if (coin(rng)) p.provenance.named_problem = random_text(rng, "Named");
        const int ngivens = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int k = 0; k < ngivens; ++k) {
            p.givens.push_back(random_statement(rng, kAllPredicates[std::uniform_int_distribution<int>(0, 12)(rng)]));
        }
        const int ng = n_graphs(rng);
        for (int gi = 0; gi < ng; ++gi) {
            SolutionGraph g;
            g.id = p.id + "_g" + std::to_string(gi);
            g.problem_id = p.id;
            for (int k = 0; k < ngivens; ++k) {
                Step s;
                s.id = "h" + std::to_string(k);
                s.statement = GivenRef{static_cast<std::size_t>(k)};
                g.steps.push_back(std::move(s));
            }
            const int n = n_steps(rng);
            for (int k = 0; k < n; ++k) {
                Step s;
                s.id = "s" + std::to_string(k);
                s.skill_id = skills[std::uniform_int_distribution<int>(0, ns - 1)(rng)].id;
                s.statement = random_statement(rng, kAllPredicates[std::uniform_int_distribution<int>(0, 12)(rng)]);
                s.is_goal = k == n - 1;
                g.steps.push_back(std::move(s));
            }
            // forward edges only, so the graph stays acyclic; every step
            // feeds some later derived step so none is dead
            const std::size_t first = static_cast<std::size_t>(ngivens);
            for (std::size_t a = 0; a + 1 < g.steps.size(); ++a) {
                const auto lo = std::max(a + 1, first);
                const auto must = std::uniform_int_distribution<std::size_t>(lo, g.steps.size() - 1)(rng);
                for (std::size_t b = lo; b < g.steps.size(); ++b) {
                    if (b == must || std::bernoulli_distribution(0.25)(rng)) {
                        g.edges.emplace_back(g.steps[a].id, g.steps[b].id);
                    }
                }
            }
            p.graphs.push_back(g.id);
            graphs.push_back(std::move(g));
        }
        problems.push_back(std::move(p));
    }
    SynonymTable synonyms;
    if (coin(rng)) synonyms.emplace_back("side", "segment");
    if (coin(rng)) synonyms.emplace_back("equals", "=");
    return Catalog(std::move(skills), std::move(problems), std::move(graphs), std::move(synonyms));
}

std::string mutate_corpus(std::mt19937& rng, const std::string& text)
{
    std::string out = text;
    const int kind = std::uniform_int_distribution<int>(0, 7)(rng);
    auto pos = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n ? n - 1 : 0)(rng); };
    switch (kind) {
    case 0: // truncate
        out.resize(pos(out.size()));
        break;
    case 1: { // flip bytes
        const int flips = std::uniform_int_distribution<int>(1, 8)(rng);
        for (int i = 0; i < flips && !out.empty(); ++i) out[pos(out.size())] ^= static_cast<char>(1 << (i % 8));
        break;
    }
    case 2: { // delete a span
        const auto at = pos(out.size());
        out.erase(at, std::uniform_int_distribution<std::size_t>(1, 40)(rng));
        break;
    }
    case 3: { // insert junk
        static const std::string junk[] = {"{", "}", "[", "]", ",", "\"", ":", "null", "\xff\xfe", "1e999"};
        out.insert(pos(out.size()), junk[pos(std::size(junk))]);
        break;
    }
    default: { // structural edit of a valid document
        json j = json::parse(text);
        std::vector<json::json_pointer> ptrs;
        std::function<void(const json&, const json::json_pointer&)> collect = [&](const json& v,
                                                                                  const json::json_pointer& at) {
            ptrs.push_back(at);
            if (v.is_object()) {
                for (const auto& [k, c] : v.items()) collect(c, at / k);
            } else if (v.is_array()) {
                for (std::size_t i = 0; i < v.size(); ++i) collect(v[i], at / i);
            }
        };
        collect(j, json::json_pointer());
        const auto target = ptrs[1 + pos(ptrs.size() - 1)];
        const json replacements[] = {json(), json(42), json("Midpoint(M;M,M)"), json::array(), json::object(),
                                     json(-3), json("x"), json(true), json("P01")};
        if (kind == 4) {
            j.at(target.parent_pointer()).is_object()
                ? static_cast<void>(j.at(target.parent_pointer()).erase(target.back()))
                : static_cast<void>(j.at(target.parent_pointer()).erase(std::stoul(target.back())));
        } else if (kind == 5) {
            j.at(target.parent_pointer()).is_object() ? j.at(target.parent_pointer())["surprise"] = 1
                                                      : j.at(target) = replacements[pos(std::size(replacements))];
        } else {
            j.at(target) = replacements[pos(std::size(replacements))];
        }
        out = j.dump(2);
        break;
    }
    }
    return out;
}

} // namespace geom::oracle
