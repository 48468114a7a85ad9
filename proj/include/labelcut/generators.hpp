#pragma once

#include <labelcut/graph.hpp>
#include <labelcut/instances.hpp>
#include <labelcut/rng.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace labelcut::generators
{
    /// Random simple graph with maximum degree 3 and up to `edges` edges
    /// (fewer when the degree limit leaves no room).
    auto random_max_degree3(int vertices, int edges, Rng & rng) -> Graph;

    /// Random max-degree-3 graph whose n + m is close to `size`.
    auto random_max_degree3_sized(int size, Rng & rng) -> Graph;

    auto random_graph(int vertices, double edge_probability, Rng & rng) -> Graph;

    /// Random colored multigraph where every color 1..colors is used.
    auto random_cmc(int vertices, int edges, int colors, int budget, Rng & rng) -> ColoredMultigraph;

    /// Random formula with clauses of 1..3 literals on distinct variables.
    auto random_cnf(int variables, int clauses, Rng & rng) -> CnfFormula;

    /// Every clause over `variables` variables with 1..3 distinct-variable literals, in canonical order.
    auto all_clauses(int variables) -> std::vector<std::vector<int>>;

    /// Calls `visit` on every formula with the given variable count and a set of
    /// exactly `clauses` distinct clauses.
    auto for_each_cnf(int variables, int clauses, const std::function<void(const CnfFormula &)> & visit) -> void;

    /// Connected pattern graphs on h labelled vertices with 1 <= |E| <= max_edges.
    auto connected_patterns(int h, int max_edges) -> std::vector<Graph>;

    /// All host edges the pattern permits with blocks {x n, ..., x n + n - 1}.
    auto candidate_host_edges(const Graph & pattern, int n) -> std::vector<Edge>;

    /// PSI instance keeping candidate host edge i iff bit i of mask is set.
    auto psi_from_mask(const Graph & pattern, int n, std::uint64_t mask) -> PsiInstance;

    /// Random PSI instance on the given pattern keeping each candidate with probability q.
    auto random_psi(const Graph & pattern, int n, double q, Rng & rng) -> PsiInstance;
}
