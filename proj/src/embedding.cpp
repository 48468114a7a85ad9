#include <labelcut/embedding.hpp>
#include <labelcut/errors.hpp>
#include <labelcut/rng.hpp>

#include "lines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <tuple>

namespace labelcut::embedding
{
    auto to_string(EmbedMode m) -> std::string
    {
        switch (m) {
            case EmbedMode::single_vertex: return "single_vertex";
            case EmbedMode::direct: return "direct";
            case EmbedMode::expander: return "expander";
        }
        return "?";
    }

    auto reduce_degree(const Graph & g) -> DegreeReduction
    {
        const auto deg = g.degrees();
        DegreeReduction out;
        std::vector<int> first(g.vertex_count);
        for (int v = 0; v < g.vertex_count; ++v) {
            first[v] = static_cast<int>(out.origin.size());
            int copies = deg[v] > 3 ? deg[v] : 1;
            for (int i = 0; i < copies; ++i)
                out.origin.push_back(v);
        }
        out.graph.vertex_count = static_cast<int>(out.origin.size());
        for (int v = 0; v < g.vertex_count; ++v)
            if (deg[v] > 3)
                for (int i = 0; i < deg[v]; ++i)
                    out.graph.edges.push_back(make_edge(first[v] + i, first[v] + (i + 1) % deg[v]));
        std::vector<int> next_slot(g.vertex_count, 0);
        auto slot = [&](int v) { return deg[v] > 3 ? first[v] + next_slot[v]++ : first[v]; };
        for (const auto & e : g.edges) {
            int a = slot(e.u);
            int b = slot(e.v);
            out.graph.edges.push_back(make_edge(a, b));
        }
        out.graph.normalize();
        return out;
    }

    auto contract(const DegreeReduction & reduction, int vertex_count) -> Graph
    {
        Graph out{vertex_count, {}};
        for (const auto & e : reduction.graph.edges) {
            int a = reduction.origin[e.u], b = reduction.origin[e.v];
            if (a != b)
                out.edges.push_back(make_edge(a, b));
        }
        out.normalize();
        return out;
    }

    auto is_minor_model(const Graph & g, const DegreeReduction & reduction) -> bool
    {
        std::vector<std::vector<int>> classes(g.vertex_count);
        for (int v = 0; v < static_cast<int>(reduction.origin.size()); ++v)
            classes.at(reduction.origin[v]).push_back(v);
        for (const auto & c : classes)
            if (! induces_connected(reduction.graph, c))
                return false;
        const auto contracted = contract(reduction, g.vertex_count);
        return std::includes(contracted.edges.begin(), contracted.edges.end(), g.edges.begin(), g.edges.end());
    }

    auto depth_bound(const Graph & g, int k, double C_hat) -> double
    {
        const double size = g.vertex_count + static_cast<double>(g.edges.size());
        return C_hat * (1.0 + size / k) * std::log(static_cast<double>(k));
    }

    auto expander_flow(int ell, const EmbedOptions & options) -> std::shared_ptr<const ExpanderFlow>
    {
        using Key = std::tuple<int, std::uint64_t, double, int, int, int, double, double, int>;
        static std::mutex mutex;
        static std::map<Key, std::shared_ptr<const ExpanderFlow>> cache;
        const auto & x = options.expander;
        const auto & f = options.flow;
        Key key{ell, x.seed, x.delta_target, x.exhaustive_cap, x.max_retries, f.exact_cap, f.lp_tolerance, f.epsilon,
            f.max_iterations};
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
        auto bundle = std::make_shared<ExpanderFlow>();
        bundle->certificate = build_expander(ell, x);
        bundle->flow = min_congestion_flow(bundle->certificate.graph, f);
        cache.emplace(key, bundle);
        return bundle;
    }

    namespace
    {
        auto finish(const Graph & g, Embedding & e) -> void
        {
            const auto & origin = e.trace.reduction.origin;
            e.branch_sets.assign(g.vertex_count, {});
            e.zeta.assign(g.vertex_count, -1);
            for (int v = 0; v < static_cast<int>(origin.size()); ++v) {
                auto & target = e.branch_sets[origin[v]];
                target.insert(target.end(), e.trace.branch_sets[v].begin(), e.trace.branch_sets[v].end());
                if (e.zeta[origin[v]] < 0)
                    e.zeta[origin[v]] = e.trace.zeta[v];
            }
            for (auto & b : e.branch_sets) {
                std::sort(b.begin(), b.end());
                b.erase(std::unique(b.begin(), b.end()), b.end());
            }
        }
    }

    auto embed_once(const Graph & g, int k, std::uint64_t seed, const EmbedOptions & options) -> Embedding
    {
        if (k < 2)
            throw InvalidK("k must be at least 2, got " + std::to_string(k));
        Embedding e;
        e.seed = seed;
        e.depth_bound = depth_bound(g, k, options.C_hat);
        auto & t = e.trace;
        t.reduction = reduce_degree(g);
        const auto & reduced = t.reduction.graph;
        const int n = reduced.vertex_count;
        t.branch_sets.assign(n, {});
        t.zeta.assign(n, 0);

        if (k < options.small_k_threshold) {
            t.mode = EmbedMode::single_vertex;
            t.ell = 1;
            e.host = Graph{1, {}};
            for (int v = 0; v < n; ++v)
                t.branch_sets[v] = {0};
            finish(g, e);
            return e;
        }

        const auto deg = reduced.degrees();
        std::vector<int> order; // non-isolated vertices first, then isolated ones
        for (int v = 0; v < n; ++v)
            if (deg[v] > 0)
                order.push_back(v);
        const auto active = static_cast<int>(order.size());
        for (int v = 0; v < n; ++v)
            if (deg[v] == 0)
                order.push_back(v);
        const int ell = k / 4;

        if (active + static_cast<int>(reduced.edges.size()) <= k) {
            t.mode = EmbedMode::direct;
            std::vector<int> index(n, -1);
            for (int i = 0; i < active; ++i)
                index[order[i]] = i;
            e.host.vertex_count = std::max(active, ell);
            for (const auto & edge : reduced.edges)
                e.host.edges.push_back(make_edge(index[edge.u], index[edge.v]));
            e.host.normalize();
            t.ell = e.host.vertex_count;
            for (int i = 0; i < n; ++i) {
                int v = order[i];
                t.zeta[v] = i < active ? i : (i - active) % t.ell;
                t.branch_sets[v] = {t.zeta[v]};
            }
            finish(g, e);
            return e;
        }

        t.mode = EmbedMode::expander;
        t.ell = ell;
        t.expander = expander_flow(ell, options);
        e.host = t.expander->certificate.graph;
        const auto & flow = t.expander->flow;
        for (int i = 0; i < n; ++i)
            t.zeta[order[i]] = i % ell;
        std::vector<std::set<int>> members(n);
        for (int v = 0; v < n; ++v)
            members[v].insert(t.zeta[v]);
        for (std::size_t idx = 0; idx < reduced.edges.size(); ++idx) {
            auto [x, y] = reduced.edges[idx];
            if (t.zeta[x] == t.zeta[y])
                continue;
            if (t.zeta[x] > t.zeta[y])
                std::swap(x, y);
            Rng rng(derive_seed(seed, idx));
            const int z = static_cast<int>(rng.below(static_cast<std::uint64_t>(ell)));
            const auto & px = sample_path(flow, t.zeta[x], z, rng.unit());
            const auto & py = sample_path(flow, t.zeta[y], z, rng.unit());
            t.paths.push_back({static_cast<int>(idx), x, 1, px});
            t.paths.push_back({static_cast<int>(idx), y, 2, py});
            members[x].insert(px.begin(), px.end());
            members[y].insert(py.begin(), py.end());
        }
        for (int v = 0; v < n; ++v)
            t.branch_sets[v].assign(members[v].begin(), members[v].end());
        finish(g, e);
        return e;
    }

    auto embed(const Graph & g, int k, std::uint64_t seed, const EmbedOptions & options) -> Embedding
    {
        for (int attempt = 0; attempt < options.retries; ++attempt) {
            auto e = embed_once(g, k, derive_seed(seed, 0xe3bed, static_cast<std::uint64_t>(attempt)), options);
            if (e.accepted())
                return e;
        }
        throw EmbeddingFailed("no accepted embedding in " + std::to_string(options.retries) + " attempts");
    }

    auto Embedding::loads() const -> std::vector<int>
    {
        std::vector<int> load(host.vertex_count, 0);
        for (const auto & b : branch_sets)
            for (int w : b)
                ++load[w];
        return load;
    }

    auto Embedding::depth() const -> int
    {
        auto load = loads();
        return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
    }

    auto validate_embedding(const Graph & g, const Embedding & e) -> void
    {
        if (static_cast<int>(e.branch_sets.size()) != g.vertex_count)
            throw InvalidEmbedding("branch set count differs from the vertex count");
        std::vector<std::vector<char>> in(g.vertex_count, std::vector<char>(e.host.vertex_count, 0));
        for (int v = 0; v < g.vertex_count; ++v) {
            const auto & b = e.branch_sets[v];
            for (int w : b) {
                if (w < 0 || w >= e.host.vertex_count)
                    throw InvalidEmbedding("branch set of " + std::to_string(v) + " leaves the host");
                in[v][w] = 1;
            }
            if (! induces_connected(e.host, b))
                throw InvalidEmbedding("branch set of " + std::to_string(v) + " is empty or disconnected");
        }
        for (const auto & edge : g.edges) {
            const auto & a = in[edge.u];
            const auto & b = in[edge.v];
            bool touch = false;
            for (int w = 0; w < e.host.vertex_count && ! touch; ++w)
                touch = a[w] && b[w];
            for (const auto & h : e.host.edges) {
                if (touch)
                    break;
                touch = (a[h.u] && b[h.v]) || (a[h.v] && b[h.u]);
            }
            if (! touch)
                throw InvalidEmbedding("branch sets of " + std::to_string(edge.u) + " and " + std::to_string(edge.v)
                    + " do not touch");
        }
    }

    auto default_audit_p(const Embedding & e) -> double
    {
        return 3.0 * (1.0 + static_cast<double>(e.trace.reduction.graph.vertex_count) / e.trace.ell);
    }

    auto audit_congestion(const Embedding & e, double p, double c_hat) -> AuditReport
    {
        AuditReport report;
        report.p = p;
        const auto & t = e.trace;
        const int h = e.host.vertex_count;
        report.vertices.assign(h, {});
        for (int v = 0; v < static_cast<int>(t.zeta.size()); ++v)
            ++report.vertices.at(t.zeta[v]).type0;
        // A vertex counts once per branch set it joins through a type, however
        // many of that branch set's paths pass it.
        std::set<std::pair<int, int>> seen1, seen2;
        for (const auto & path : t.paths)
            for (int w : path.vertices) {
                auto & seen = path.type == 1 ? seen1 : seen2;
                if (seen.insert({w, path.owner}).second)
                    ++(path.type == 1 ? report.vertices[w].type1 : report.vertices[w].type2);
            }
        const auto load = e.loads();
        for (int w = 0; w < h; ++w) {
            report.vertices[w].depth = load[w];
            report.max_type1 = std::max(report.max_type1, report.vertices[w].type1);
            report.max_type2 = std::max(report.max_type2, report.vertices[w].type2);
        }
        if (t.mode == EmbedMode::expander && t.ell >= 2)
            report.threshold = 10.0 * c_hat * p * std::log(static_cast<double>(t.ell));
        return report;
    }

    auto write_embedding(std::ostream & out, const Embedding & e) -> void
    {
        out << "embed " << e.branch_sets.size() << ' ' << e.host.vertex_count << '\n';
        for (const auto & h : e.host.edges)
            out << "host " << h.u << ' ' << h.v << '\n';
        for (std::size_t v = 0; v < e.branch_sets.size(); ++v) {
            out << "branch " << v;
            for (int w : e.branch_sets[v])
                out << ' ' << w;
            out << '\n';
        }
        for (std::size_t v = 0; v < e.zeta.size(); ++v)
            out << "zeta " << v << ' ' << e.zeta[v] << '\n';
    }

    auto read_embedding(std::istream & in) -> Embedding
    {
        using namespace detail;
        const auto lines = read_lines(in);
        const auto & head = header(lines, "embed", 2);
        const int g_count = to_int(head, 1);
        const int h_count = to_int(head, 2);
        if (g_count < 0 || h_count < 1)
            throw ParseError(head.number, "bad embed header");
        Embedding e;
        e.host.vertex_count = h_count;
        e.branch_sets.assign(g_count, {});
        e.zeta.assign(g_count, -1);
        std::vector<char> has_branch(g_count, 0);
        auto vertex = [](const Line & line, std::size_t i, int bound) {
            int v = to_int(line, i);
            if (v < 0 || v >= bound)
                throw ParseError(line.number, "vertex " + std::to_string(v) + " out of range");
            return v;
        };
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto & line = lines[i];
            const auto & kw = line.tokens[0];
            if (kw == "host") {
                expect(line, "host", 2);
                int a = vertex(line, 1, h_count), b = vertex(line, 2, h_count);
                if (a == b)
                    throw ParseError(line.number, "host self-loop");
                e.host.edges.push_back(make_edge(a, b));
            }
            else if (kw == "branch") {
                if (line.tokens.size() < 3)
                    throw ParseError(line.number, "'branch' needs a vertex and at least one host vertex");
                int v = vertex(line, 1, g_count);
                if (has_branch[v])
                    throw ParseError(line.number, "repeated branch set");
                has_branch[v] = 1;
                for (std::size_t j = 2; j < line.tokens.size(); ++j)
                    e.branch_sets[v].push_back(vertex(line, j, h_count));
                std::sort(e.branch_sets[v].begin(), e.branch_sets[v].end());
                e.branch_sets[v].erase(std::unique(e.branch_sets[v].begin(), e.branch_sets[v].end()), e.branch_sets[v].end());
            }
            else if (kw == "zeta") {
                expect(line, "zeta", 2);
                e.zeta[vertex(line, 1, g_count)] = vertex(line, 2, h_count);
            }
            else
                throw ParseError(line.number, "unknown record '" + kw + "'");
        }
        for (int v = 0; v < g_count; ++v)
            if (! has_branch[v] || e.zeta[v] < 0)
                throw ParseError(0, "vertex " + std::to_string(v) + " lacks a branch set or bucket");
        e.host.normalize();
        return e;
    }

    auto write_audit(std::ostream & out, const AuditReport & report) -> void
    {
        out << "vertex\ttype0\ttype1\ttype2\tdepth\n";
        for (std::size_t w = 0; w < report.vertices.size(); ++w) {
            const auto & v = report.vertices[w];
            out << w << '\t' << v.type0 << '\t' << v.type1 << '\t' << v.type2 << '\t' << v.depth << '\n';
        }
    }
}
