#pragma once

// Brute-force reference implementations used by the unit tests and the
// acceptance binary. They deliberately avoid the engine's graph helpers and
// work from the raw corpus structures.

#include "geom/corpus_io.hpp"
#include "geom/ontology.hpp"
#include "geom/selector.hpp"
#include "geom/validation.hpp"

#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace geom::oracle {

std::filesystem::path data_dir();
std::filesystem::path golden_dir();
std::filesystem::path sample_corpus_path();
std::vector<std::filesystem::path> script_paths(); // sorted

// Cycle check by enumerating every simple path from every node.
bool cycle_by_paths(const SolutionGraph& graph);

// Random graph over at most `max_nodes` steps; edges may form cycles.
SolutionGraph random_graph(std::mt19937& rng, int max_nodes, double edge_probability);

struct OracleVerdict {
    bool c1 = false;
    bool c2 = false;
    bool c3 = false;
    bool eligible() const { return c1 && c2 && c3; }
};

// C1-C3 evaluated literally from the definitions, graph by graph.
OracleVerdict selector_oracle(const Catalog& catalog, const Problem& problem, const SetRequest& request);

// Random (known, target, mode, ratio) request over the catalog's skills.
SetRequest random_request(std::mt19937& rng, const Catalog& catalog);

// The (graph id, step id) pairs established after feeding `lines`, computed
// by trying every subset of non-Given steps and keeping the one that is
// exactly the set the derivation rules justify against itself.
// Returns nullopt when some graph of the problem has more than `max_steps`
// non-Given steps. `ambiguous` is set unless exactly one subset qualifies.
std::optional<std::set<std::pair<std::string, std::string>>> derivable_closure(
    const Catalog& catalog, const Problem& problem, const std::vector<ProofLine>& lines, std::size_t max_steps,
    bool* ambiguous = nullptr);

// The established set a Derivation reports after the same lines.
std::set<std::pair<std::string, std::string>> established_steps(const Catalog& catalog, const Problem& problem,
                                                                const std::vector<ProofLine>& lines);

// Canonical random statement of the given predicate.
Statement random_statement(std::mt19937& rng, Predicate p);

// Random lint-clean-shaped catalog: unique ids, acyclic graphs, canonical
// statements, non-ASCII text in free-form fields.
Catalog random_catalog(std::mt19937& rng);

// Byte-level and structural mutations of a corpus text.
std::string mutate_corpus(std::mt19937& rng, const std::string& text);

MatchConfig session_match_config(const Catalog& catalog);

} // namespace geom::oracle
