#include <labelcut/errors.hpp>
#include <labelcut/generators.hpp>

#include <algorithm>
#include <set>

namespace labelcut::generators
{
    auto random_max_degree3(int vertices, int edges, Rng & rng) -> Graph
    {
        Graph g{vertices, {}};
        if (vertices < 2)
            return g;
        std::vector<int> deg(vertices, 0);
        std::set<Edge> used;
        int failures = 0;
        while (static_cast<int>(used.size()) < edges && failures < 50 * (edges + 1)) {
            int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices)));
            int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices)));
            if (a == b || deg[a] >= 3 || deg[b] >= 3 || ! used.insert(make_edge(a, b)).second) {
                ++failures;
                continue;
            }
            ++deg[a];
            ++deg[b];
        }
        g.edges.assign(used.begin(), used.end());
        return g;
    }

    auto random_max_degree3_sized(int size, Rng & rng) -> Graph
    {
        // n + m = size with m close to 1.4 n keeps the degree limit reachable.
        const int n = std::max(2, (size * 5 + 11) / 12);
        return random_max_degree3(n, size - n, rng);
    }

    auto random_graph(int vertices, double edge_probability, Rng & rng) -> Graph
    {
        Graph g{vertices, {}};
        for (int u = 0; u < vertices; ++u)
            for (int v = u + 1; v < vertices; ++v)
                if (rng.unit() < edge_probability)
                    g.edges.push_back(Edge{u, v});
        return g;
    }

    auto random_cmc(int vertices, int edges, int colors, int budget, Rng & rng) -> ColoredMultigraph
    {
        if (vertices < 2 || colors < 1 || edges < colors)
            throw InvalidInstance("random_cmc needs two vertices and at least one edge per color");
        ColoredMultigraph g;
        g.vertex_count = vertices;
        g.colors = colors;
        g.budget = budget;
        for (int i = 0; i < edges; ++i) {
            int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices)));
            int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices - 1)));
            if (b >= a)
                ++b;
            int c = i < colors ? i + 1 : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(colors)));
            g.edges.push_back({std::min(a, b), std::max(a, b), c});
        }
        g.canonicalize();
        return g;
    }

    auto random_cnf(int variables, int clauses, Rng & rng) -> CnfFormula
    {
        CnfFormula f;
        f.variable_count = variables;
        for (int j = 0; j < clauses; ++j) {
            int width = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(3, variables))));
            std::vector<int> vars(variables);
            for (int i = 0; i < variables; ++i)
                vars[i] = i + 1;
            for (int i = 0; i < width; ++i)
                std::swap(vars[i], vars[i + rng.below(static_cast<std::uint64_t>(variables - i))]);
            std::vector<int> clause;
            for (int i = 0; i < width; ++i)
                clause.push_back(rng.below(2) ? vars[i] : -vars[i]);
            f.clauses.push_back(std::move(clause));
        }
        return f;
    }

    auto all_clauses(int variables) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (int mask = 1; mask < (1 << variables); ++mask) {
            std::vector<int> vars;
            for (int v = 0; v < variables; ++v)
                if ((mask >> v) & 1)
                    vars.push_back(v + 1);
            if (vars.size() > 3)
                continue;
            for (int signs = 0; signs < (1 << vars.size()); ++signs) {
                std::vector<int> clause;
                for (std::size_t i = 0; i < vars.size(); ++i)
                    clause.push_back((signs >> i) & 1 ? -vars[i] : vars[i]);
                out.push_back(std::move(clause));
            }
        }
        std::sort(out.begin(), out.end(), [](const auto & a, const auto & b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out;
    }

    auto for_each_cnf(int variables, int clauses, const std::function<void(const CnfFormula &)> & visit) -> void
    {
        const auto pool = all_clauses(variables);
        const int total = static_cast<int>(pool.size());
        if (clauses > total)
            return;
        std::vector<int> pick(clauses);
        for (int i = 0; i < clauses; ++i)
            pick[i] = i;
        while (true) {
            CnfFormula f;
            f.variable_count = variables;
            for (int i : pick)
                f.clauses.push_back(pool[i]);
            visit(f);
            int i = clauses - 1;
            while (i >= 0 && pick[i] == total - clauses + i)
                --i;
            if (i < 0)
                return;
            ++pick[i];
            for (int j = i + 1; j < clauses; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }

    auto connected_patterns(int h, int max_edges) -> std::vector<Graph>
    {
        std::vector<Edge> all;
        for (int u = 0; u < h; ++u)
            for (int v = u + 1; v < h; ++v)
                all.push_back(Edge{u, v});
        std::vector<Graph> out;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << all.size()); ++mask) {
            Graph g{h, {}};
            for (std::size_t i = 0; i < all.size(); ++i)
                if ((mask >> i) & 1)
                    g.edges.push_back(all[i]);
            if (static_cast<int>(g.edges.size()) <= max_edges && is_connected(h, g.edges))
                out.push_back(std::move(g));
        }
        return out;
    }

    auto candidate_host_edges(const Graph & pattern, int n) -> std::vector<Edge>
    {
        std::vector<Edge> out;
        for (const auto & e : pattern.edges)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out.push_back(make_edge(e.u * n + i, e.v * n + j));
        std::sort(out.begin(), out.end());
        return out;
    }

    namespace
    {
        auto empty_instance(const Graph & pattern, int n) -> PsiInstance
        {
            PsiInstance inst;
            inst.pattern = pattern;
            inst.block_size = n;
            inst.host.vertex_count = pattern.vertex_count * n;
            for (int x = 0; x < pattern.vertex_count; ++x) {
                std::vector<int> block;
                for (int i = 0; i < n; ++i)
                    block.push_back(x * n + i);
                inst.blocks.push_back(std::move(block));
            }
            return inst;
        }
    }

    auto psi_from_mask(const Graph & pattern, int n, std::uint64_t mask) -> PsiInstance
    {
        auto inst = empty_instance(pattern, n);
        const auto candidates = candidate_host_edges(pattern, n);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if ((mask >> i) & 1)
                inst.host.edges.push_back(candidates[i]);
        inst.validate();
        return inst;
    }

    auto random_psi(const Graph & pattern, int n, double q, Rng & rng) -> PsiInstance
    {
        auto inst = empty_instance(pattern, n);
        for (const auto & e : candidate_host_edges(pattern, n))
            if (rng.unit() < q)
                inst.host.edges.push_back(e);
        inst.validate();
        return inst;
    }
}
