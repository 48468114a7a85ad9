#include <labelcut/errors.hpp>
#include <labelcut/pipeline.hpp>

#include <algorithm>
#include <ostream>
#include <set>

namespace labelcut::pipeline
{
    auto sat_to_csp_g(const CnfFormula & f) -> IncidenceCsp
    {
        f.validate();
        IncidenceCsp out;
        out.variable_count = f.variable_count;
        out.clause_count = static_cast<int>(f.clauses.size());
        for (int i = 0; i < f.variable_count; ++i)
            out.csp.add_variable({false_token, true_token});
        for (const auto & clause : f.clauses) {
            std::vector<Token> choices;
            for (int i = 1; i <= static_cast<int>(clause.size()); ++i)
                choices.push_back(i);
            out.csp.add_variable(std::move(choices));
        }
        out.graph.vertex_count = out.variable_count + out.clause_count;
        for (int j = 0; j < out.clause_count; ++j) {
            const auto & clause = f.clauses[j];
            const int z = out.variable_count + j;
            const int width = static_cast<int>(clause.size());
            for (int i = 1; i <= width; ++i) {
                const int literal = clause[i - 1];
                const int v = std::abs(literal) - 1;
                std::vector<TokenPair> allowed;
                for (Token value : {false_token, true_token})
                    for (int other = 1; other <= width; ++other)
                        if (other != i)
                            allowed.emplace_back(value, other);
                allowed.emplace_back(literal > 0 ? true_token : false_token, i);
                out.csp.add_constraint(v, z, std::move(allowed));
                out.graph.edges.push_back(make_edge(v, z));
            }
        }
        out.graph.normalize();
        return out;
    }

    auto RoutedCsp::component(const BinaryCsp & base, int w, std::size_t j, Token token) const -> Token
    {
        for (std::size_t i = 0; i < j; ++i)
            token /= radix[w][i];
        return base.domain(coords[w][j])[token % radix[w][j]];
    }

    auto RoutedCsp::product_size(int w) const -> std::uint64_t
    {
        std::uint64_t size = 1;
        for (int r : radix[w])
            size *= static_cast<std::uint64_t>(r);
        return size;
    }

    namespace
    {
        auto position(const std::vector<int> & sorted, int v) -> std::size_t
        {
            return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
        }

        auto contains(const std::vector<int> & sorted, int v) -> bool
        {
            return std::binary_search(sorted.begin(), sorted.end(), v);
        }

        auto allowed_set(const BinaryCsp::Constraint & c) -> std::set<TokenPair>
        {
            return {c.allowed.begin(), c.allowed.end()};
        }
    }

    auto route_csp(const BinaryCsp & base, const embedding::Embedding & e, const Caps & caps) -> RoutedCsp
    {
        const int g_count = base.variable_count();
        const int h_count = e.host.vertex_count;
        const auto g = base.constraint_graph();
        if (static_cast<int>(e.branch_sets.size()) != g_count)
            throw InvalidEmbedding("embedding covers " + std::to_string(e.branch_sets.size()) + " vertices, CSP has "
                + std::to_string(g_count));
        embedding::validate_embedding(g, e);

        RoutedCsp out;
        out.coords.assign(h_count, {});
        out.radix.assign(h_count, {});
        for (int v = 0; v < g_count; ++v)
            for (int w : e.branch_sets[v])
                out.coords[w].push_back(v);
        for (int w = 0; w < h_count; ++w) {
            std::uint64_t size = 1;
            for (int v : out.coords[w]) {
                const auto d = static_cast<int>(base.domain(v).size());
                out.radix[w].push_back(std::max(d, 1));
                if (d == 0)
                    size = 0;
                else if (size > caps.csp_product / static_cast<std::uint64_t>(d) + 1)
                    throw CapExceeded("product domain at host vertex " + std::to_string(w) + " exceeds the cap");
                else
                    size *= static_cast<std::uint64_t>(d);
            }
            if (size > caps.csp_product)
                throw CapExceeded("product domain at host vertex " + std::to_string(w) + " exceeds the cap");
            std::vector<Token> domain(size);
            for (std::uint64_t t = 0; t < size; ++t)
                domain[t] = static_cast<Token>(t);
            out.csp.add_variable(std::move(domain));
        }

        // Vertex touching: a shared host vertex must hold an allowed pair.
        for (const auto & [key, c] : base.constraints()) {
            const auto allowed = allowed_set(c);
            for (int w = 0; w < h_count; ++w) {
                if (! contains(out.coords[w], c.first) || ! contains(out.coords[w], c.second))
                    continue;
                const auto ju = position(out.coords[w], c.first);
                const auto jv = position(out.coords[w], c.second);
                std::vector<Token> keep;
                for (Token t : out.csp.domain(w))
                    if (allowed.count({out.component(base, w, ju, t), out.component(base, w, jv, t)}))
                        keep.push_back(t);
                out.csp.restrict_domain(w, keep);
            }
        }

        auto add_relation = [&](int w, int z, auto && compatible) {
            std::vector<TokenPair> pairs;
            for (Token s : out.csp.domain(w))
                for (Token t : out.csp.domain(z))
                    if (compatible(s, t))
                        pairs.emplace_back(s, t);
            out.csp.add_constraint(w, z, std::move(pairs));
        };

        // Consistency along host edges inside one branch set.
        for (const auto & h : e.host.edges)
            for (int v : out.coords[h.u]) {
                if (! contains(out.coords[h.v], v))
                    continue;
                const auto ju = position(out.coords[h.u], v);
                const auto jv = position(out.coords[h.v], v);
                add_relation(h.u, h.v, [&](Token s, Token t) {
                    return out.component(base, h.u, ju, s) == out.component(base, h.v, jv, t);
                });
            }

        // Edge touching: a host edge wz with w in phi(u), z in phi(v).
        for (const auto & [key, c] : base.constraints()) {
            const auto allowed = allowed_set(c);
            for (const auto & h : e.host.edges)
                for (auto [w, z] : {std::pair{h.u, h.v}, std::pair{h.v, h.u}}) {
                    if (! contains(out.coords[w], c.first) || ! contains(out.coords[z], c.second))
                        continue;
                    const auto ju = position(out.coords[w], c.first);
                    const auto jv = position(out.coords[z], c.second);
                    add_relation(w, z, [&](Token s, Token t) {
                        return allowed.count({out.component(base, w, ju, s), out.component(base, z, jv, t)}) > 0;
                    });
                }
        }
        return out;
    }

    auto csp_to_psi(const BinaryCsp & routed, const Graph & host) -> PsiConversion
    {
        const int h = routed.variable_count();
        if (host.vertex_count != h)
            throw InvalidInstance("host graph and CSP disagree on the vertex count");
        for (const auto & [key, c] : routed.constraints())
            if (! host.has_edge(c.first, c.second))
                throw InvalidInstance("constraint on " + std::to_string(c.first) + "," + std::to_string(c.second)
                    + " has no host edge");
        int n = 1;
        for (int w = 0; w < h; ++w)
            n = std::max(n, static_cast<int>(routed.domain(w).size()));

        PsiConversion out;
        auto & inst = out.instance;
        inst.pattern = host;
        inst.pattern.normalize();
        inst.block_size = n;
        inst.host.vertex_count = h * n;
        out.token_of.assign(static_cast<std::size_t>(h) * n, -1);
        std::vector<char> inert(static_cast<std::size_t>(h) * n, 1);
        for (int w = 0; w < h; ++w) {
            std::vector<int> block;
            const auto & domain = routed.domain(w);
            for (int i = 0; i < n; ++i) {
                const int id = w * n + i;
                block.push_back(id);
                if (i < static_cast<int>(domain.size())) {
                    out.token_of[id] = domain[i];
                    inert[id] = 0;
                }
            }
            inst.blocks.push_back(std::move(block));
        }
        for (const auto & edge : inst.pattern.edges) {
            const auto * c = routed.find_constraint(edge.u, edge.v);
            std::set<TokenPair> allowed;
            if (c)
                allowed.insert(c->allowed.begin(), c->allowed.end());
            const auto & du = routed.domain(edge.u);
            const auto & dv = routed.domain(edge.v);
            for (std::size_t i = 0; i < du.size(); ++i)
                for (std::size_t j = 0; j < dv.size(); ++j)
                    if (! c || allowed.count({du[i], dv[j]}))
                        inst.host.edges.push_back(
                            make_edge(edge.u * n + static_cast<int>(i), edge.v * n + static_cast<int>(j)));
        }
        inst.host.normalize();
        inst.validate();

        auto connected = gadgets::connectivize_pattern(inst, inert);
        if (connected.changed) {
            out.connectivized = true;
            out.instance = std::move(connected.instance);
            out.token_of.resize(out.instance.host.vertex_count, -1);
        }
        return out;
    }

    auto default_k(const CnfFormula & f) -> int
    {
        return default_k(f.variable_count + static_cast<int>(f.clauses.size()));
    }

    auto default_k(int size) -> int
    {
        int k = 0;
        while (k * k < size)
            ++k;
        return std::max(2, k);
    }

    auto sat_to_dcmc(const CnfFormula & f, std::uint64_t seed, const PipelineOptions & options) -> PipelineResult
    {
        PipelineResult out;
        out.incidence = sat_to_csp_g(f);
        out.k = options.k > 0 ? options.k : default_k(f);
        out.embedding = embedding::embed(out.incidence.graph, out.k, seed, options.embed);
        out.routed = route_csp(out.incidence.csp, out.embedding, options.caps);
        out.psi = csp_to_psi(out.routed.csp, out.embedding.host);
        out.reduction = gadgets::reduce_psi_to_dcmc(out.psi.instance, options.reduce);
        return out;
    }

    auto PipelineResult::report() const -> std::vector<std::pair<std::string, std::string>>
    {
        std::vector<std::pair<std::string, std::string>> r;
        auto put = [&r](std::string key, auto value) {
            if constexpr (std::is_same_v<decltype(value), std::string>)
                r.emplace_back(std::move(key), std::move(value));
            else
                r.emplace_back(std::move(key), std::to_string(value));
        };
        std::size_t max_domain = 0;
        for (int w = 0; w < routed.csp.variable_count(); ++w)
            max_domain = std::max(max_domain, routed.csp.domain(w).size());
        const auto & params = reduction.params;
        put("variables", incidence.variable_count);
        put("clauses", incidence.clause_count);
        put("incidence_vertices", incidence.graph.vertex_count);
        put("incidence_edges", incidence.graph.edges.size());
        put("k", k);
        put("embed_mode", embedding::to_string(embedding.trace.mode));
        put("embed_seed", embedding.seed);
        put("host_vertices", embedding.host.vertex_count);
        put("host_edges", embedding.host.edges.size());
        put("depth", embedding.depth());
        put("routed_constraints", routed.csp.constraints().size());
        put("max_domain", max_domain);
        put("psi_h", psi.instance.pattern.vertex_count);
        put("psi_n", psi.instance.block_size);
        put("psi_host_edges", psi.instance.host.edges.size());
        put("connectivized", psi.connectivized ? 1 : 0);
        put("rho", params.rho);
        put("a", params.a);
        put("b", params.b);
        put("w", reduction.instance.vertex_count);
        put("p", reduction.instance.colors());
        put("budget", reduction.instance.budget);
        return r;
    }

    auto write_report(std::ostream & out, const std::vector<std::pair<std::string, std::string>> & report) -> void
    {
        for (const auto & [key, value] : report)
            out << key << '=' << value << '\n';
    }
}
