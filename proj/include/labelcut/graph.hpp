#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace labelcut
{
    /// Undirected edge, always stored with u < v.
    struct Edge
    {
        int u = 0;
        int v = 0;

        auto operator<=> (const Edge &) const = default;
    };

    /// Builds the canonical edge {a, b}; throws InvalidInstance on a self-loop.
    auto make_edge(int a, int b) -> Edge;

    /// Sorts and deduplicates in place.
    auto canonicalize_edges(std::vector<Edge> & edges) -> void;

    /// Simple undirected graph on vertices 0..vertex_count-1.
    struct Graph
    {
        int vertex_count = 0;
        std::vector<Edge> edges;

        auto operator== (const Graph &) const -> bool = default;

        /// Validates endpoint range, canonicalizes and drops duplicates.
        auto normalize() -> void;
        auto adjacency() const -> std::vector<std::vector<int>>;
        auto degrees() const -> std::vector<int>;
        auto has_edge(int a, int b) const -> bool;
        auto max_degree() const -> int;
    };

    class UnionFind
    {
    public:
        explicit UnionFind(std::size_t size);

        auto find(int x) -> int;
        /// Returns true when the two classes were distinct.
        auto unite(int a, int b) -> bool;
        auto components() const -> int { return components_; }

    private:
        std::vector<int> parent_;
        std::vector<int> rank_;
        int components_;
    };

    /// True iff the graph on vertex_count vertices has exactly one component.
    /// Zero or one vertices count as connected.
    auto is_connected(int vertex_count, std::span<const Edge> edges) -> bool;

    auto count_components(int vertex_count, std::span<const Edge> edges) -> int;

    /// True iff the vertices listed in `subset` induce a connected subgraph.
    /// The empty set is reported as not connected.
    auto induces_connected(const Graph & g, std::span<const int> subset) -> bool;
}
