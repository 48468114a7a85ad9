#include <labelcut/errors.hpp>
#include <labelcut/graph.hpp>

#include <algorithm>
#include <numeric>
#include <string>

namespace labelcut
{
    auto make_edge(int a, int b) -> Edge
    {
        if (a == b)
            throw InvalidInstance("self-loop on vertex " + std::to_string(a));
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    auto canonicalize_edges(std::vector<Edge> & edges) -> void
    {
        for (auto & e : edges)
            e = make_edge(e.u, e.v);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    auto Graph::normalize() -> void
    {
        if (vertex_count < 0)
            throw InvalidInstance("negative vertex count");
        for (const auto & e : edges)
            if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
                throw InvalidInstance("edge endpoint out of range");
        canonicalize_edges(edges);
    }

    auto Graph::adjacency() const -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> adj(vertex_count);
        for (const auto & e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        for (auto & a : adj)
            std::sort(a.begin(), a.end());
        return adj;
    }

    auto Graph::degrees() const -> std::vector<int>
    {
        std::vector<int> deg(vertex_count, 0);
        for (const auto & e : edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        return deg;
    }

    auto Graph::has_edge(int a, int b) const -> bool
    {
        if (a == b)
            return false;
        auto e = make_edge(a, b);
        return std::binary_search(edges.begin(), edges.end(), e);
    }

    auto Graph::max_degree() const -> int
    {
        auto deg = degrees();
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    UnionFind::UnionFind(std::size_t size) :
        parent_(size),
        rank_(size, 0),
        components_(static_cast<int>(size))
    {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    auto UnionFind::find(int x) -> int
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    auto UnionFind::unite(int a, int b) -> bool
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (rank_[a] < rank_[b])
            std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b])
            ++rank_[a];
        --components_;
        return true;
    }

    auto count_components(int vertex_count, std::span<const Edge> edges) -> int
    {
        UnionFind uf(vertex_count);
        for (const auto & e : edges)
            uf.unite(e.u, e.v);
        return uf.components();
    }

    auto is_connected(int vertex_count, std::span<const Edge> edges) -> bool
    {
        if (vertex_count <= 1)
            return true;
        UnionFind uf(vertex_count);
        for (const auto & e : edges)
            if (uf.unite(e.u, e.v) && uf.components() == 1)
                return true;
        return uf.components() == 1;
    }

    auto induces_connected(const Graph & g, std::span<const int> subset) -> bool
    {
        if (subset.empty())
            return false;
        std::vector<char> inside(g.vertex_count, 0);
        for (int v : subset)
            inside[v] = 1;
        UnionFind uf(g.vertex_count);
        for (const auto & e : g.edges)
            if (inside[e.u] && inside[e.v])
                uf.unite(e.u, e.v);
        int root = uf.find(subset.front());
        return std::all_of(subset.begin(), subset.end(), [&](int v) { return uf.find(v) == root; });
    }
}
