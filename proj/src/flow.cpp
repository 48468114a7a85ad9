#include <labelcut/errors.hpp>
#include <labelcut/flow.hpp>
#include <labelcut/lp.hpp>
#include <labelcut/rng.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace labelcut::embedding
{
    auto to_string(FlowMethod m) -> std::string
    {
        return m == FlowMethod::exact ? "exact" : "iterative";
    }

    namespace
    {
        constexpr double tiny = 1e-12;

        struct Arc
        {
            int tail;
            int head;
        };

        auto arcs_of(const Graph & h) -> std::vector<Arc>
        {
            std::vector<Arc> arcs;
            for (const auto & e : h.edges) {
                arcs.push_back({e.u, e.v});
                arcs.push_back({e.v, e.u});
            }
            return arcs;
        }

        auto bfs_path(const std::vector<std::vector<int>> & adj, int s, int t) -> std::vector<int>
        {
            std::vector<int> parent(adj.size(), -1);
            parent[s] = s;
            std::queue<int> q;
            q.push(s);
            while (! q.empty()) {
                int u = q.front();
                q.pop();
                for (int w : adj[u])
                    if (parent[w] < 0) {
                        parent[w] = u;
                        q.push(w);
                    }
            }
            std::vector<int> path{t};
            while (path.back() != s)
                path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            return path;
        }

        auto normalize_pair(std::vector<WeightedPath> & paths) -> void
        {
            std::erase_if(paths, [](const WeightedPath & p) { return p.weight <= 1e-9; });
            double total = 0.0;
            for (const auto & p : paths)
                total += p.weight;
            for (auto & p : paths)
                p.weight /= total;
            std::sort(paths.begin(), paths.end(),
                [](const WeightedPath & a, const WeightedPath & b) { return a.vertices < b.vertices; });
        }

        /// Strips s-v paths out of the single-source flow x over `arcs`.
        auto decompose_source(int n, int s, const std::vector<Arc> & arcs, std::vector<double> x,
            const std::vector<std::vector<int>> & adj) -> std::vector<std::vector<WeightedPath>>
        {
            std::vector<std::vector<int>> incoming(n);
            for (std::size_t a = 0; a < arcs.size(); ++a)
                incoming[arcs[a].head].push_back(static_cast<int>(a));

            std::vector<std::vector<WeightedPath>> out(n);
            for (int v = 0; v < n; ++v) {
                if (v == s)
                    continue;
                double demand = 1.0;
                for (int guard = 0; demand > 1e-9 && guard < 100000; ++guard) {
                    std::vector<int> chain;      // arcs, walking backwards from v
                    std::vector<int> seen(n, -1); // position in walk
                    int u = v;
                    seen[v] = 0;
                    bool stuck = false;
                    while (u != s) {
                        int best = -1;
                        for (int a : incoming[u])
                            if (x[a] > tiny && (best < 0 || x[a] > x[best]))
                                best = a;
                        if (best < 0) {
                            stuck = true;
                            break;
                        }
                        chain.push_back(best);
                        u = arcs[best].tail;
                        if (seen[u] >= 0) {
                            // cycle: cancel it and restart the walk
                            std::vector<int> cycle(chain.begin() + seen[u], chain.end());
                            double m = std::numeric_limits<double>::max();
                            for (int a : cycle)
                                m = std::min(m, x[a]);
                            for (int a : cycle)
                                x[a] -= m;
                            chain.clear();
                            break;
                        }
                        seen[u] = static_cast<int>(chain.size());
                    }
                    if (stuck)
                        break;
                    if (u != s)
                        continue;
                    double amount = demand;
                    for (int a : chain)
                        amount = std::min(amount, x[a]);
                    for (int a : chain)
                        x[a] -= amount;
                    demand -= amount;
                    WeightedPath p;
                    p.vertices.push_back(s);
                    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                        p.vertices.push_back(arcs[*it].head);
                    p.weight = amount;
                    out[v].push_back(std::move(p));
                }
                // Merge repeated paths.
                std::map<std::vector<int>, double> merged;
                for (auto & p : out[v])
                    merged[p.vertices] += p.weight;
                out[v].clear();
                for (auto & [verts, w] : merged)
                    out[v].push_back({verts, w});
                if (out[v].empty())
                    out[v].push_back({bfs_path(adj, s, v), 1.0});
                normalize_pair(out[v]);
            }
            return out;
        }

        auto exact_flow(const Graph & h, const FlowOptions & options) -> ConcurrentFlow
        {
            const int n = h.vertex_count;
            const auto arcs = arcs_of(h);
            const auto adj = h.adjacency();
            lp::LinearProgram program;
            // var_of[s][a] = column of x_s(a), or -1 for arcs entering s.
            std::vector<std::vector<int>> var_of(n, std::vector<int>(arcs.size(), -1));
            for (int s = 0; s < n; ++s)
                for (std::size_t a = 0; a < arcs.size(); ++a)
                    if (arcs[a].head != s)
                        var_of[s][a] = program.add_variable(0.0);
            const int gamma = program.add_variable(1.0);

            for (int s = 0; s < n; ++s)
                for (int v = 0; v < n; ++v) {
                    if (v == s)
                        continue;
                    std::vector<std::pair<int, double>> terms;
                    for (std::size_t a = 0; a < arcs.size(); ++a) {
                        if (var_of[s][a] < 0)
                            continue;
                        if (arcs[a].head == v)
                            terms.emplace_back(var_of[s][a], 1.0);
                        else if (arcs[a].tail == v)
                            terms.emplace_back(var_of[s][a], -1.0);
                    }
                    program.add_row(std::move(terms), lp::Sense::equal, 1.0);
                }
            for (int w = 0; w < n; ++w) {
                std::vector<std::pair<int, double>> terms;
                for (int s = 0; s < n; ++s) {
                    if (s == w)
                        continue;
                    for (std::size_t a = 0; a < arcs.size(); ++a)
                        if (arcs[a].head == w)
                            terms.emplace_back(var_of[s][a], 1.0);
                }
                terms.emplace_back(gamma, -1.0);
                program.add_row(std::move(terms), lp::Sense::less_equal, -static_cast<double>(n));
            }

            lp::SimplexOptions simplex;
            simplex.tolerance = options.lp_tolerance;
            auto solution = lp::solve(program, simplex);
            if (solution.status != lp::Status::optimal)
                throw Infeasible("concurrent flow LP did not reach optimality");

            ConcurrentFlow flow;
            flow.vertex_count = n;
            flow.method = FlowMethod::exact;
            flow.iterations = static_cast<int>(solution.pivots);
            flow.paths.assign(static_cast<std::size_t>(n) * n, {});
            for (int s = 0; s < n; ++s) {
                std::vector<double> x(arcs.size(), 0.0);
                for (std::size_t a = 0; a < arcs.size(); ++a)
                    if (var_of[s][a] >= 0)
                        x[a] = std::max(0.0, solution.x[var_of[s][a]]);
                auto per_sink = decompose_source(n, s, arcs, std::move(x), adj);
                for (int v = 0; v < n; ++v)
                    flow.paths[static_cast<std::size_t>(s) * n + v] =
                        v == s ? std::vector<WeightedPath>{{{s}, 1.0}} : std::move(per_sink[v]);
            }
            recompute_load(flow);
            flow.lower_bound = std::min(solution.objective, flow.congestion);
            return flow;
        }

        /// Vertex-weighted shortest paths from s; the weight of a path counts
        /// every vertex on it, endpoints included.
        auto dijkstra(const std::vector<std::vector<int>> & adj, const std::vector<double> & y, int s,
            std::vector<double> & dist, std::vector<int> & parent) -> void
        {
            const auto n = adj.size();
            dist.assign(n, std::numeric_limits<double>::infinity());
            parent.assign(n, -1);
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            dist[s] = y[s];
            parent[s] = s;
            heap.push({dist[s], s});
            while (! heap.empty()) {
                auto [d, u] = heap.top();
                heap.pop();
                if (d > dist[u])
                    continue;
                for (int w : adj[u]) {
                    double nd = d + y[w];
                    if (nd < dist[w]) {
                        dist[w] = nd;
                        parent[w] = u;
                        heap.push({nd, w});
                    }
                }
            }
        }

        auto trace(const std::vector<int> & parent, int s, int v) -> std::vector<int>
        {
            std::vector<int> path{v};
            while (path.back() != s)
                path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            return path;
        }

        auto iterative_flow(const Graph & h, const FlowOptions & options) -> ConcurrentFlow
        {
            // Frank-Wolfe on a soft maximum of the vertex loads. The weights of
            // each step also give a dual bound sum dist_y / sum y, so the
            // method stops once the routing is within 1 + epsilon of it.
            const int n = h.vertex_count;
            const auto adj = h.adjacency();
            const auto pair_index = [n](int s, int v) { return static_cast<std::size_t>(s) * n + v; };

            std::vector<std::map<std::vector<int>, double>> routing(static_cast<std::size_t>(n) * n);
            std::vector<double> load(n, 0.0);
            for (int s = 0; s < n; ++s)
                for (int v = 0; v < n; ++v) {
                    auto path = s == v ? std::vector<int>{s} : bfs_path(adj, s, v);
                    for (int w : path)
                        load[w] += 1.0;
                    routing[pair_index(s, v)][std::move(path)] = 1.0;
                }

            const double beta = 2.0 * std::log(static_cast<double>(n)) / options.epsilon + 1.0;
            double lower = 0.0;
            int iteration = 0;
            std::vector<double> y(n), dist;
            std::vector<int> parent;
            for (; iteration < options.max_iterations; ++iteration) {
                const double peak = *std::max_element(load.begin(), load.end());
                for (int w = 0; w < n; ++w)
                    y[w] = std::exp(beta * (load[w] - peak) / peak);
                double y_total = 0.0;
                for (double v : y)
                    y_total += v;

                std::vector<std::vector<int>> parents(n);
                double dist_total = 0.0;
                std::vector<double> target(n, 0.0);
                for (int s = 0; s < n; ++s) {
                    dijkstra(adj, y, s, dist, parent);
                    parents[s] = parent;
                    for (int v = 0; v < n; ++v) {
                        dist_total += dist[v];
                        for (int w : trace(parent, s, v))
                            target[w] += 1.0;
                    }
                }
                lower = std::max(lower, dist_total / y_total);
                if (peak <= (1.0 + options.epsilon) * lower)
                    break;

                // Golden-section line search on the soft maximum along the segment.
                auto potential = [&](double tau) {
                    double sum = 0.0;
                    for (int w = 0; w < n; ++w)
                        sum += std::exp(beta * (((1 - tau) * load[w] + tau * target[w]) - peak) / peak);
                    return sum;
                };
                double lo = 0.0, hi = 1.0;
                const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
                for (int step = 0; step < 60; ++step) {
                    double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
                    if (potential(m1) < potential(m2))
                        hi = m2;
                    else
                        lo = m1;
                }
                const double tau = (lo + hi) / 2.0;
                if (tau <= 1e-12)
                    break;
                for (int w = 0; w < n; ++w)
                    load[w] = (1 - tau) * load[w] + tau * target[w];
                for (int s = 0; s < n; ++s)
                    for (int v = 0; v < n; ++v) {
                        auto & paths = routing[pair_index(s, v)];
                        for (auto & [verts, weight] : paths)
                            weight *= 1 - tau;
                        paths[trace(parents[s], s, v)] += tau;
                        std::erase_if(paths, [](const auto & kv) { return kv.second < 1e-10; });
                    }
            }

            ConcurrentFlow flow;
            flow.vertex_count = n;
            flow.method = FlowMethod::iterative;
            flow.iterations = iteration;
            flow.paths.resize(routing.size());
            for (std::size_t i = 0; i < routing.size(); ++i) {
                for (auto & [verts, weight] : routing[i])
                    flow.paths[i].push_back({verts, weight});
                normalize_pair(flow.paths[i]);
            }
            recompute_load(flow);
            flow.lower_bound = std::min(lower, flow.congestion);
            return flow;
        }
    }

    auto min_congestion_flow(const Graph & h, const FlowOptions & options) -> ConcurrentFlow
    {
        if (h.vertex_count < 1)
            throw InvalidInstance("flow on an empty graph");
        if (! is_connected(h.vertex_count, h.edges))
            throw InvalidInstance("flow needs a connected graph");
        if (h.vertex_count <= options.exact_cap)
            return exact_flow(h, options);
        return iterative_flow(h, options);
    }

    auto recompute_load(ConcurrentFlow & flow) -> void
    {
        flow.load.assign(flow.vertex_count, 0.0);
        for (const auto & pair : flow.paths)
            for (const auto & p : pair)
                for (int w : p.vertices)
                    flow.load[w] += p.weight;
        flow.congestion = flow.load.empty() ? 0.0 : *std::max_element(flow.load.begin(), flow.load.end());
    }

    auto sample_path(const ConcurrentFlow & flow, int u, int v, double r) -> const std::vector<int> &
    {
        const auto & paths = flow.between(u, v);
        double acc = 0.0;
        for (const auto & p : paths) {
            acc += p.weight;
            if (r < acc)
                return p.vertices;
        }
        return paths.back().vertices;
    }

    auto sample_path_family(const ConcurrentFlow & flow, int p, std::uint64_t seed) -> std::vector<int>
    {
        const int n = flow.vertex_count;
        std::vector<int> hits(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < p; ++j) {
                Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
                int z = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                for (int w : sample_path(flow, i, z, rng.unit()))
                    ++hits[w];
            }
        return hits;
    }
}
