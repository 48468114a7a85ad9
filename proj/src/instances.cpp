#include <labelcut/errors.hpp>
#include <labelcut/instances.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <string>

namespace labelcut
{
    auto ColoredMultigraph::canonicalize() -> void
    {
        if (vertex_count < 1)
            throw InvalidInstance("cmc: vertex count must be positive");
        if (colors < 0 || budget < 0 || budget > colors)
            throw InvalidInstance("cmc: need 0 <= k <= p");
        std::vector<char> used(colors + 1, 0);
        for (auto & e : edges) {
            if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
                throw InvalidInstance("cmc: edge endpoint out of range");
            if (e.color < 1 || e.color > colors)
                throw InvalidInstance("cmc: color " + std::to_string(e.color) + " outside [1, p]");
            auto c = make_edge(e.u, e.v);
            e.u = c.u;
            e.v = c.v;
            used[e.color] = 1;
        }
        for (int c = 1; c <= colors; ++c)
            if (! used[c])
                throw InvalidInstance("cmc: color " + std::to_string(c) + " has no edge");
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    auto DualCmcInstance::canonicalize() -> void
    {
        if (vertex_count < 1)
            throw InvalidInstance("dcmc: vertex count must be positive");
        if (budget < 0)
            throw InvalidInstance("dcmc: budget must be nonnegative");
        for (auto & g : color_graphs) {
            for (const auto & e : g)
                if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
                    throw InvalidInstance("dcmc: edge endpoint out of range");
            canonicalize_edges(g);
        }
    }

    auto PsiInstance::validate() const -> void
    {
        const int h = pattern.vertex_count;
        if (h < 1)
            throw InvalidInstance("psi: pattern needs at least one vertex");
        if (block_size < 1)
            throw InvalidInstance("psi: block size must be positive");
        if (static_cast<int>(blocks.size()) != h)
            throw InvalidInstance("psi: need exactly one block per pattern vertex");
        if (host.vertex_count != h * block_size)
            throw InvalidInstance("psi: host must have h * n vertices");
        std::vector<int> owner(host.vertex_count, -1);
        for (int x = 0; x < h; ++x) {
            if (static_cast<int>(blocks[x].size()) != block_size)
                throw InvalidInstance("psi: block " + std::to_string(x) + " does not have n vertices");
            for (int v : blocks[x]) {
                if (v < 0 || v >= host.vertex_count)
                    throw InvalidInstance("psi: block vertex out of range");
                if (owner[v] != -1)
                    throw InvalidInstance("psi: blocks overlap at host vertex " + std::to_string(v));
                owner[v] = x;
            }
        }
        for (const auto & e : host.edges) {
            int x = owner[e.u], y = owner[e.v];
            if (x == y)
                throw InvalidInstance("psi: host edge inside block " + std::to_string(x));
            if (! pattern.has_edge(x, y))
                throw InvalidInstance("psi: host edge between blocks of non-adjacent pattern vertices");
        }
    }

    auto PsiInstance::block_of() const -> std::vector<int>
    {
        std::vector<int> owner(host.vertex_count, -1);
        for (int x = 0; x < static_cast<int>(blocks.size()); ++x)
            for (int v : blocks[x])
                owner[v] = x;
        return owner;
    }

    auto BinaryCsp::add_variable(std::vector<Token> domain) -> int
    {
        std::sort(domain.begin(), domain.end());
        domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
        domains_.push_back(std::move(domain));
        return variable_count() - 1;
    }

    auto BinaryCsp::add_constraint(int a, int b, std::vector<TokenPair> allowed) -> void
    {
        if (a == b || a < 0 || b < 0 || a >= variable_count() || b >= variable_count())
            throw InvalidInstance("csp: constraint needs two distinct existing variables");
        if (a > b) {
            std::swap(a, b);
            for (auto & [x, y] : allowed)
                std::swap(x, y);
        }
        const auto & da = domains_[a];
        const auto & db = domains_[b];
        for (const auto & [x, y] : allowed)
            if (! std::binary_search(da.begin(), da.end(), x) || ! std::binary_search(db.begin(), db.end(), y))
                throw InvalidInstance("csp: relation pair outside the current domains");
        std::sort(allowed.begin(), allowed.end());
        allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());

        auto [it, inserted] = constraints_.try_emplace({a, b}, Constraint{a, b, {}});
        if (inserted) {
            it->second.allowed = std::move(allowed);
            return;
        }
        std::vector<TokenPair> both;
        std::set_intersection(it->second.allowed.begin(), it->second.allowed.end(),
            allowed.begin(), allowed.end(), std::back_inserter(both));
        it->second.allowed = std::move(both);
    }

    auto BinaryCsp::restrict_domain(int var, std::span<const Token> keep) -> void
    {
        std::vector<Token> sorted_keep(keep.begin(), keep.end());
        std::sort(sorted_keep.begin(), sorted_keep.end());
        auto & d = domains_.at(var);
        std::vector<Token> next;
        std::set_intersection(d.begin(), d.end(), sorted_keep.begin(), sorted_keep.end(), std::back_inserter(next));
        d = std::move(next);
        for (auto & [key, c] : constraints_) {
            if (c.first != var && c.second != var)
                continue;
            std::erase_if(c.allowed, [&](const TokenPair & pr) {
                Token t = c.first == var ? pr.first : pr.second;
                return ! std::binary_search(d.begin(), d.end(), t);
            });
        }
    }

    auto BinaryCsp::find_constraint(int a, int b) const -> const Constraint *
    {
        auto it = constraints_.find({std::min(a, b), std::max(a, b)});
        return it == constraints_.end() ? nullptr : &it->second;
    }

    auto BinaryCsp::constraint_graph() const -> Graph
    {
        Graph g{variable_count(), {}};
        for (const auto & [key, c] : constraints_)
            g.edges.push_back(Edge{c.first, c.second});
        return g;
    }

    auto BinaryCsp::satisfied_by(std::span<const Token> valuation) const -> bool
    {
        if (static_cast<int>(valuation.size()) != variable_count())
            return false;
        for (int v = 0; v < variable_count(); ++v)
            if (! std::binary_search(domains_[v].begin(), domains_[v].end(), valuation[v]))
                return false;
        for (const auto & [key, c] : constraints_)
            if (! std::binary_search(c.allowed.begin(), c.allowed.end(), TokenPair{valuation[c.first], valuation[c.second]}))
                return false;
        return true;
    }

    auto CnfFormula::validate() const -> void
    {
        if (variable_count < 0)
            throw MalformedClause("cnf: negative variable count");
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            const auto & c = clauses[i];
            std::string where = "clause " + std::to_string(i + 1) + ": ";
            if (c.empty())
                throw MalformedClause(where + "empty");
            if (c.size() > 3)
                throw MalformedClause(where + "more than three literals");
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (c[j] == 0 || std::abs(c[j]) > variable_count)
                    throw MalformedClause(where + "literal out of range");
                for (std::size_t k = 0; k < j; ++k)
                    if (std::abs(c[k]) == std::abs(c[j]))
                        throw MalformedClause(where + "repeated variable");
            }
        }
    }

    auto cut_colors(const ColoredMultigraph & g, std::span<const int> side) -> int
    {
        std::vector<char> in(g.vertex_count, 0);
        for (int v : side)
            in[v] = 1;
        std::set<int> seen;
        for (const auto & e : g.edges)
            if (in[e.u] != in[e.v])
                seen.insert(e.color);
        return static_cast<int>(seen.size());
    }

    auto solve_cmc_bruteforce(const ColoredMultigraph & g, const Caps & caps) -> CmcSolution
    {
        const int n = g.vertex_count;
        if (n > caps.cmc_vertices)
            throw CapExceeded("cmc: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(caps.cmc_vertices)
                + " (try the dual oracle)");
        CmcSolution result;
        if (n < 2)
            return result;

        // Vertex 0 is always on side S; every nonempty proper cut has such a representative.
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        std::vector<std::uint64_t> stamp(g.colors + 1, 0);
        std::uint64_t stamp_id = 0;
        int best = std::numeric_limits<int>::max();
        std::uint64_t best_mask = 0;
        for (std::uint64_t mask = 1; mask < full; mask += 2) {
            ++stamp_id;
            int count = 0;
            for (const auto & e : g.edges) {
                bool a = (mask >> e.u) & 1, b = (mask >> e.v) & 1;
                if (a != b && stamp[e.color] != stamp_id) {
                    stamp[e.color] = stamp_id;
                    if (++count >= best)
                        break;
                }
            }
            if (count < best) {
                best = count;
                best_mask = mask;
                if (best == 0)
                    break;
            }
        }
        result.min_colors = best;
        for (int v = 0; v < n; ++v)
            if ((best_mask >> v) & 1)
                result.side.push_back(v);
        result.yes = best <= g.budget;
        return result;
    }

    auto binomial(std::uint64_t n, std::uint64_t k) -> std::uint64_t
    {
        if (k > n)
            return 0;
        k = std::min(k, n - k);
        unsigned __int128 r = 1;
        for (std::uint64_t i = 1; i <= k; ++i) {
            r = r * (n - k + i) / i;
            if (r > std::numeric_limits<std::uint64_t>::max())
                return std::numeric_limits<std::uint64_t>::max();
        }
        return static_cast<std::uint64_t>(r);
    }

    auto selection_disconnects(const DualCmcInstance & d, std::span<const int> selection) -> bool
    {
        UnionFind uf(d.vertex_count);
        for (int c : selection)
            for (const auto & e : d.color_graphs.at(c - 1))
                uf.unite(e.u, e.v);
        return uf.components() > 1;
    }

    auto solve_dual_bruteforce(const DualCmcInstance & d, const Caps & caps) -> DualSolution
    {
        const int p = d.colors();
        const int a = d.budget;
        auto combos = binomial(p, a);
        if (combos > caps.dual_combinations)
            throw CapExceeded("dcmc: C(" + std::to_string(p) + ", " + std::to_string(a) + ") combinations exceeds cap "
                + std::to_string(caps.dual_combinations));
        DualSolution result;
        if (a > p)
            return result;

        // Depth-first over combinations in lexicographic order, carrying the
        // partial union. A connected prefix stays connected, so its subtree is skipped.
        std::vector<int> chosen;
        std::function<bool(int, const UnionFind &)> search = [&](int next, const UnionFind & uf) -> bool {
            if (static_cast<int>(chosen.size()) == a)
                return uf.components() > 1;
            int remaining = a - static_cast<int>(chosen.size());
            for (int c = next; c <= p - remaining; ++c) {
                UnionFind grown = uf;
                for (const auto & e : d.color_graphs[c])
                    grown.unite(e.u, e.v);
                if (grown.components() == 1)
                    continue;
                chosen.push_back(c + 1);
                if (search(c + 1, grown))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        if (search(0, UnionFind(d.vertex_count))) {
            result.yes = true;
            result.selection = chosen;
        }
        return result;
    }

    auto psi_choice_valid(const PsiInstance & inst, std::span<const int> choice) -> bool
    {
        if (static_cast<int>(choice.size()) != inst.pattern.vertex_count)
            return false;
        for (int x = 0; x < inst.pattern.vertex_count; ++x)
            if (std::find(inst.blocks[x].begin(), inst.blocks[x].end(), choice[x]) == inst.blocks[x].end())
                return false;
        for (const auto & e : inst.pattern.edges)
            if (! inst.host.has_edge(choice[e.u], choice[e.v]))
                return false;
        return true;
    }

    auto solve_psi_bruteforce(const PsiInstance & inst, const Caps & caps) -> PsiSolution
    {
        const int h = inst.pattern.vertex_count;
        const int n = inst.block_size;
        unsigned __int128 space = 1;
        for (int x = 0; x < h && space <= caps.psi_assignments; ++x)
            space *= static_cast<unsigned>(n);
        if (space > caps.psi_assignments)
            throw CapExceeded("psi: n^h assignments exceeds cap " + std::to_string(caps.psi_assignments));

        auto adj = inst.host.adjacency();
        auto pattern_adj = inst.pattern.adjacency();
        PsiSolution result;
        std::vector<int> choice(h, -1);
        std::function<bool(int)> search = [&](int x) -> bool {
            if (x == h)
                return true;
            for (int v : inst.blocks[x]) {
                bool ok = true;
                for (int y : pattern_adj[x])
                    if (y < x && ! std::binary_search(adj[v].begin(), adj[v].end(), choice[y])) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                choice[x] = v;
                if (search(x + 1))
                    return true;
            }
            return false;
        };
        if (search(0)) {
            result.yes = true;
            result.choice = choice;
        }
        return result;
    }

    auto solve_csp_bruteforce(const BinaryCsp & csp, const Caps & caps) -> CspSolution
    {
        const int nv = csp.variable_count();
        unsigned __int128 space = 1;
        for (int v = 0; v < nv; ++v) {
            space *= csp.domain(v).size();
            if (space > caps.csp_product)
                throw CapExceeded("csp: product of domain sizes exceeds cap " + std::to_string(caps.csp_product));
        }
        CspSolution result;
        if (space == 0)
            return result;

        // Per constraint, a table over domain positions; checked against earlier variables only.
        struct Check
        {
            int other;
            std::vector<char> table;
            std::size_t width;
        };
        std::vector<std::vector<Check>> checks(nv);
        for (const auto & [key, c] : csp.constraints()) {
            const auto & d1 = csp.domain(c.first);
            const auto & d2 = csp.domain(c.second);
            std::vector<char> table(d1.size() * d2.size(), 0);
            for (const auto & [x, y] : c.allowed) {
                auto i = std::lower_bound(d1.begin(), d1.end(), x) - d1.begin();
                auto j = std::lower_bound(d2.begin(), d2.end(), y) - d2.begin();
                table[i * d2.size() + j] = 1;
            }
            checks[c.second].push_back(Check{c.first, std::move(table), d2.size()});
        }

        std::vector<std::size_t> pos(nv, 0);
        std::function<bool(int)> search = [&](int v) -> bool {
            if (v == nv)
                return true;
            for (std::size_t i = 0; i < csp.domain(v).size(); ++i) {
                bool ok = true;
                for (const auto & ch : checks[v])
                    if (! ch.table[pos[ch.other] * ch.width + i]) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                pos[v] = i;
                if (search(v + 1))
                    return true;
            }
            return false;
        };
        if (search(0)) {
            result.yes = true;
            for (int v = 0; v < nv; ++v)
                result.valuation.push_back(csp.domain(v)[pos[v]]);
        }
        return result;
    }

    auto assignment_satisfies(const CnfFormula & f, const std::vector<bool> & assignment) -> bool
    {
        for (const auto & clause : f.clauses) {
            bool sat = false;
            for (int lit : clause)
                if (assignment.at(std::abs(lit) - 1) == (lit > 0)) {
                    sat = true;
                    break;
                }
            if (! sat)
                return false;
        }
        return true;
    }

    auto solve_sat_bruteforce(const CnfFormula & f, const Caps & caps) -> SatSolution
    {
        f.validate();
        const int n = f.variable_count;
        if (n > caps.sat_variables)
            throw CapExceeded("sat: " + std::to_string(n) + " variables exceeds cap " + std::to_string(caps.sat_variables));
        std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
        for (const auto & clause : f.clauses) {
            std::uint64_t pos = 0, neg = 0;
            for (int lit : clause)
                (lit > 0 ? pos : neg) |= std::uint64_t{1} << (std::abs(lit) - 1);
            masks.emplace_back(pos, neg);
        }
        SatSolution result;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t x = 0; x < total; ++x) {
            bool ok = std::all_of(masks.begin(), masks.end(),
                [&](const auto & m) { return (x & m.first) != 0 || (~x & m.second) != 0; });
            if (ok) {
                result.yes = true;
                for (int i = 0; i < n; ++i)
                    result.assignment.push_back((x >> i) & 1);
                break;
            }
        }
        return result;
    }

    auto cmc_to_dual(const ColoredMultigraph & g) -> DualCmcInstance
    {
        DualCmcInstance d;
        d.vertex_count = g.vertex_count;
        d.budget = g.colors - g.budget;
        d.color_graphs.resize(g.colors);
        for (const auto & e : g.edges)
            d.color_graphs[e.color - 1].push_back(make_edge(e.u, e.v));
        for (auto & cg : d.color_graphs)
            canonicalize_edges(cg);
        return d;
    }

    auto dual_to_cmc(const DualCmcInstance & d) -> ColoredMultigraph
    {
        if (d.budget > d.colors())
            throw InvalidInstance("dcmc: a > p has no CMC counterpart");
        ColoredMultigraph g;
        g.vertex_count = d.vertex_count;
        g.colors = d.colors();
        g.budget = g.colors - d.budget;
        for (int i = 0; i < d.colors(); ++i) {
            if (d.color_graphs[i].empty())
                throw InvalidInstance("dcmc: color graph " + std::to_string(i + 1) + " is empty; no CMC counterpart");
            for (const auto & e : d.color_graphs[i])
                g.edges.push_back(ColoredEdge{e.u, e.v, i + 1});
        }
        g.canonicalize();
        return g;
    }
}
