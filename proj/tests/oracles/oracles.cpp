#include "oracles.hpp"

#include <labelcut/rng.hpp>

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace oracle
{
    auto bfs_connected(int n, const std::vector<Edge> & edges) -> bool
    {
        if (n <= 1)
            return true;
        std::vector<std::vector<int>> adj(n);
        for (const auto & e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (! q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[u])
                if (! seen[w]) {
                    seen[w] = 1;
                    ++count;
                    q.push(w);
                }
        }
        return count == n;
    }

    auto cmc_min_colors(const labelcut::ColoredMultigraph & g) -> std::optional<int>
    {
        const int n = g.vertex_count;
        if (n < 2)
            return std::nullopt;
        int best = g.colors + 1;
        for (std::uint32_t s = 1; s + 1 < (1u << n); ++s) {
            std::set<int> crossing;
            for (const auto & e : g.edges)
                if (((s >> e.u) & 1) != ((s >> e.v) & 1))
                    crossing.insert(e.color);
            best = std::min(best, static_cast<int>(crossing.size()));
        }
        return best;
    }

    auto dual_decision(const labelcut::DualCmcInstance & d) -> bool
    {
        const int p = static_cast<int>(d.color_graphs.size());
        std::vector<int> pick;
        std::function<bool(int)> go = [&](int next) -> bool {
            if (static_cast<int>(pick.size()) == d.budget) {
                std::vector<Edge> all;
                for (int c : pick)
                    all.insert(all.end(), d.color_graphs[c].begin(), d.color_graphs[c].end());
                return ! bfs_connected(d.vertex_count, all);
            }
            for (int c = next; c < p; ++c) {
                pick.push_back(c);
                if (go(c + 1))
                    return true;
                pick.pop_back();
            }
            return false;
        };
        return d.budget >= 0 && d.budget <= p && go(0);
    }

    auto psi_decision(const labelcut::PsiInstance & inst) -> bool
    {
        const int h = inst.pattern.vertex_count;
        std::set<Edge> host(inst.host.edges.begin(), inst.host.edges.end());
        std::vector<std::size_t> digit(h, 0);
        while (true) {
            bool ok = true;
            for (const auto & e : inst.pattern.edges) {
                int a = inst.blocks[e.u][digit[e.u]], b = inst.blocks[e.v][digit[e.v]];
                if (! host.count(Edge{std::min(a, b), std::max(a, b)})) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                return true;
            int i = 0;
            while (i < h && ++digit[i] == inst.blocks[i].size())
                digit[i++] = 0;
            if (i == h)
                return false;
        }
    }

    auto csp_decision(const labelcut::BinaryCsp & csp) -> bool
    {
        const int n = csp.variable_count();
        for (int v = 0; v < n; ++v)
            if (csp.domain(v).empty())
                return false;
        std::vector<std::size_t> digit(n, 0);
        while (true) {
            bool ok = true;
            for (const auto & [key, c] : csp.constraints()) {
                auto pair = std::pair{csp.domain(c.first)[digit[c.first]], csp.domain(c.second)[digit[c.second]]};
                if (std::find(c.allowed.begin(), c.allowed.end(), pair) == c.allowed.end()) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                return true;
            int i = 0;
            while (i < n && ++digit[i] == csp.domain(i).size())
                digit[i++] = 0;
            if (i == n)
                return false;
        }
    }

    namespace
    {
        auto dpll_rec(std::vector<std::vector<int>> clauses) -> bool
        {
            while (true) {
                if (clauses.empty())
                    return true;
                int unit = 0;
                for (const auto & c : clauses) {
                    if (c.empty())
                        return false;
                    if (c.size() == 1)
                        unit = c[0];
                }
                if (unit == 0)
                    break;
                std::vector<std::vector<int>> next;
                for (const auto & c : clauses) {
                    if (std::find(c.begin(), c.end(), unit) != c.end())
                        continue;
                    std::vector<int> kept;
                    for (int l : c)
                        if (l != -unit)
                            kept.push_back(l);
                    next.push_back(kept);
                }
                clauses = std::move(next);
            }
            const int branch = clauses.front().front();
            for (int lit : {branch, -branch}) {
                auto copy = clauses;
                copy.push_back({lit});
                if (dpll_rec(copy))
                    return true;
            }
            return false;
        }
    }

    auto dpll(const labelcut::CnfFormula & f) -> bool
    {
        return dpll_rec(f.clauses);
    }

    auto is_prime(int n) -> bool
    {
        if (n < 2)
            return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    auto prime_scan(int n, int a) -> int
    {
        int root = 1;
        auto power = [a](long long x) {
            long long r = 1;
            for (int i = 0; i < a; ++i)
                r *= x;
            return r;
        };
        while (power(root) < n)
            ++root;
        int p = root + 1;
        while (! is_prime(p))
            ++p;
        return p;
    }

    auto min_sparsity_3l(const Graph & g) -> Rational
    {
        const int n = g.vertex_count;
        std::vector<int> side(n, 0); // 0: A only, 1: B only, 2: both
        std::int64_t best_num = 0, best_den = 0;
        while (true) {
            bool separation = true;
            for (const auto & e : g.edges)
                if ((side[e.u] == 0 && side[e.v] == 1) || (side[e.u] == 1 && side[e.v] == 0))
                    separation = false;
            std::int64_t a = 0, b = 0, both = 0;
            for (int s : side) {
                a += s != 1;
                b += s != 0;
                both += s == 2;
            }
            if (separation && a > 0 && b > 0 && (best_den == 0 || both * best_den < best_num * a * b)) {
                best_num = both;
                best_den = a * b;
            }
            int i = 0;
            while (i < n && ++side[i] == 3)
                side[i++] = 0;
            if (i == n)
                break;
        }
        return Rational(best_num, best_den);
    }

    auto edge_expansion(const Graph & g) -> Rational
    {
        const int n = g.vertex_count;
        std::optional<Rational> best;
        std::vector<int> members;
        std::function<void(int)> grow = [&](int next) {
            if (! members.empty()) {
                std::vector<char> in(n, 0);
                for (int v : members)
                    in[v] = 1;
                std::int64_t cut = 0;
                for (const auto & e : g.edges)
                    cut += in[e.u] != in[e.v];
                Rational r(cut, static_cast<std::int64_t>(members.size()));
                if (! best || r < *best)
                    best = r;
            }
            if (2 * static_cast<int>(members.size() + 1) > n)
                return;
            for (int v = next; v < n; ++v) {
                members.push_back(v);
                grow(v + 1);
                members.pop_back();
            }
        };
        grow(0);
        return best.value_or(Rational(0));
    }

    auto embedding_valid(const Graph & g, const Graph & host, const std::vector<std::vector<int>> & branch) -> bool
    {
        if (static_cast<int>(branch.size()) != g.vertex_count)
            return false;
        for (const auto & b : branch) {
            if (b.empty())
                return false;
            std::vector<int> index(host.vertex_count, -1);
            for (std::size_t i = 0; i < b.size(); ++i)
                index[b[i]] = static_cast<int>(i);
            std::vector<Edge> inside;
            for (const auto & e : host.edges)
                if (index[e.u] >= 0 && index[e.v] >= 0)
                    inside.push_back(Edge{std::min(index[e.u], index[e.v]), std::max(index[e.u], index[e.v])});
            if (! bfs_connected(static_cast<int>(b.size()), inside))
                return false;
        }
        for (const auto & e : g.edges) {
            std::set<int> a(branch[e.u].begin(), branch[e.u].end()), b(branch[e.v].begin(), branch[e.v].end());
            bool touch = std::any_of(a.begin(), a.end(), [&](int w) { return b.count(w) > 0; });
            for (const auto & h : host.edges)
                touch = touch || (a.count(h.u) && b.count(h.v)) || (a.count(h.v) && b.count(h.u));
            if (! touch)
                return false;
        }
        return true;
    }

    auto random_shallow_embedding(const Graph & g, std::uint64_t seed) -> labelcut::embedding::Embedding
    {
        labelcut::Rng rng(seed);
        labelcut::embedding::Embedding e;
        const int n = g.vertex_count;
        e.host.vertex_count = n;
        e.branch_sets.resize(n);
        std::vector<int> load(n, 1);
        for (int v = 0; v < n; ++v)
            e.branch_sets[v] = {v};
        for (const auto & edge : g.edges) {
            auto roll = rng.below(3);
            if (roll == 0) {
                const int s = e.host.vertex_count++;
                load.push_back(0);
                e.host.edges.push_back(Edge{edge.u, s});
                e.host.edges.push_back(Edge{edge.v, s});
                auto who = rng.below(3);
                if (who != 1) {
                    e.branch_sets[edge.u].push_back(s);
                    ++load[s];
                }
                if (who != 0) {
                    e.branch_sets[edge.v].push_back(s);
                    ++load[s];
                }
            }
            else {
                e.host.edges.push_back(edge);
                if (roll == 2) {
                    auto [owner, target] = rng.below(2) ? std::pair{edge.u, edge.v} : std::pair{edge.v, edge.u};
                    if (load[target] < 2) {
                        e.branch_sets[owner].push_back(target);
                        ++load[target];
                    }
                }
            }
        }
        for (auto & b : e.branch_sets) {
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
        }
        e.host.normalize();
        e.zeta.resize(n);
        for (int v = 0; v < n; ++v)
            e.zeta[v] = v;
        return e;
    }
}
