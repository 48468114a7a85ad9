#include <labelcut/errors.hpp>
#include <labelcut/io.hpp>

#include "lines.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>

namespace labelcut::io
{
    namespace
    {
        using namespace detail;

        template <typename Fn>
        auto rethrow_at(int line, Fn fn) -> decltype(fn())
        {
            try {
                return fn();
            }
            catch (const ParseError &) {
                throw;
            }
            catch (const Error & e) {
                throw ParseError(line, e.what());
            }
        }
    }

    auto open_input(const std::filesystem::path & path) -> std::ifstream
    {
        std::ifstream in(path);
        if (! in)
            throw Error("cannot open " + path.string());
        return in;
    }

    auto read_cmc(std::istream & in) -> ColoredMultigraph
    {
        auto lines = read_lines(in);
        const auto & h = header(lines, "cmc", 4);
        ColoredMultigraph g;
        g.vertex_count = to_int(h, 1);
        int m = to_int(h, 2);
        g.colors = to_int(h, 3);
        g.budget = to_int(h, 4);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            expect(lines[i], "e", 3);
            g.edges.push_back(ColoredEdge{to_int(lines[i], 1), to_int(lines[i], 2), to_int(lines[i], 3)});
        }
        if (static_cast<int>(g.edges.size()) != m)
            throw ParseError(h.number, "header announces " + std::to_string(m) + " edges, found " + std::to_string(g.edges.size()));
        rethrow_at(h.number, [&] { g.canonicalize(); });
        return g;
    }

    auto write_cmc(std::ostream & out, const ColoredMultigraph & g) -> void
    {
        out << "cmc " << g.vertex_count << ' ' << g.edges.size() << ' ' << g.colors << ' ' << g.budget << '\n';
        for (const auto & e : g.edges)
            out << "e " << e.u << ' ' << e.v << ' ' << e.color << '\n';
    }

    auto read_dcmc(std::istream & in) -> DualCmcInstance
    {
        auto lines = read_lines(in);
        const auto & h = header(lines, "dcmc", 3);
        DualCmcInstance d;
        d.vertex_count = to_int(h, 1);
        int p = to_int(h, 2);
        d.budget = to_int(h, 3);
        if (p < 0)
            throw ParseError(h.number, "negative color count");
        d.color_graphs.resize(p);
        std::vector<char> seen(p, 0);
        int current = -1;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto & line = lines[i];
            if (line.tokens[0] == "g") {
                expect(line, "g", 1);
                int c = to_int(line, 1);
                if (c < 1 || c > p)
                    throw ParseError(line.number, "graph index outside [1, p]");
                if (seen[c - 1])
                    throw ParseError(line.number, "graph " + std::to_string(c) + " listed twice");
                seen[c - 1] = 1;
                current = c - 1;
            }
            else {
                expect(line, "e", 2);
                if (current < 0)
                    throw ParseError(line.number, "edge before any 'g' block");
                int u = to_int(line, 1), v = to_int(line, 2);
                rethrow_at(line.number, [&] { d.color_graphs[current].push_back(make_edge(u, v)); });
            }
        }
        rethrow_at(h.number, [&] { d.canonicalize(); });
        return d;
    }

    auto write_dcmc(std::ostream & out, const DualCmcInstance & d) -> void
    {
        out << "dcmc " << d.vertex_count << ' ' << d.colors() << ' ' << d.budget << '\n';
        for (int i = 0; i < d.colors(); ++i) {
            out << "g " << i + 1 << '\n';
            for (const auto & e : d.color_graphs[i])
                out << "e " << e.u << ' ' << e.v << '\n';
        }
    }

    auto read_psi(std::istream & in) -> PsiInstance
    {
        auto lines = read_lines(in);
        const auto & h = header(lines, "psi", 2);
        PsiInstance inst;
        inst.pattern.vertex_count = to_int(h, 1);
        inst.block_size = to_int(h, 2);
        if (inst.pattern.vertex_count < 1 || inst.block_size < 1)
            throw ParseError(h.number, "psi needs h >= 1 and n >= 1");
        inst.host.vertex_count = inst.pattern.vertex_count * inst.block_size;
        inst.blocks.resize(inst.pattern.vertex_count);
        std::vector<char> seen(inst.pattern.vertex_count, 0);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto & line = lines[i];
            const auto & kw = line.tokens[0];
            if (kw == "pe") {
                expect(line, "pe", 2);
                inst.pattern.edges.push_back(Edge{to_int(line, 1), to_int(line, 2)});
            }
            else if (kw == "he") {
                expect(line, "he", 2);
                inst.host.edges.push_back(Edge{to_int(line, 1), to_int(line, 2)});
            }
            else if (kw == "block") {
                if (line.tokens.size() < 2)
                    throw ParseError(line.number, "'block' needs a pattern vertex");
                int x = to_int(line, 1);
                if (x < 0 || x >= inst.pattern.vertex_count)
                    throw ParseError(line.number, "block for unknown pattern vertex");
                if (seen[x])
                    throw ParseError(line.number, "block " + std::to_string(x) + " listed twice");
                seen[x] = 1;
                for (std::size_t j = 2; j < line.tokens.size(); ++j)
                    inst.blocks[x].push_back(to_int(line, j));
                std::sort(inst.blocks[x].begin(), inst.blocks[x].end());
            }
            else
                throw ParseError(line.number, "unknown record '" + kw + "'");
        }
        rethrow_at(h.number, [&] {
            inst.pattern.normalize();
            inst.host.normalize();
            inst.validate();
        });
        return inst;
    }

    auto write_psi(std::ostream & out, const PsiInstance & inst) -> void
    {
        out << "psi " << inst.pattern.vertex_count << ' ' << inst.block_size << '\n';
        for (const auto & e : inst.pattern.edges)
            out << "pe " << e.u << ' ' << e.v << '\n';
        for (std::size_t x = 0; x < inst.blocks.size(); ++x) {
            out << "block " << x;
            for (int v : inst.blocks[x])
                out << ' ' << v;
            out << '\n';
        }
        for (const auto & e : inst.host.edges)
            out << "he " << e.u << ' ' << e.v << '\n';
    }

    auto read_csp(std::istream & in) -> BinaryCsp
    {
        auto lines = read_lines(in);
        const auto & h = header(lines, "csp", 1);
        int nv = to_int(h, 1);
        if (nv < 0)
            throw ParseError(h.number, "negative variable count");
        std::vector<std::vector<Token>> domains(nv);
        std::vector<char> seen(nv, 0);
        struct Pending
        {
            int line, a, b;
            std::vector<TokenPair> pairs;
        };
        std::vector<Pending> pending;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto & line = lines[i];
            const auto & kw = line.tokens[0];
            if (kw == "var") {
                if (line.tokens.size() < 2)
                    throw ParseError(line.number, "'var' needs an index");
                int v = to_int(line, 1);
                if (v < 0 || v >= nv)
                    throw ParseError(line.number, "variable index out of range");
                if (seen[v])
                    throw ParseError(line.number, "variable " + std::to_string(v) + " listed twice");
                seen[v] = 1;
                for (std::size_t j = 2; j < line.tokens.size(); ++j)
                    domains[v].push_back(to_int(line, j));
            }
            else if (kw == "con") {
                expect(line, "con", 2);
                pending.push_back(Pending{line.number, to_int(line, 1), to_int(line, 2), {}});
            }
            else if (kw == "t") {
                expect(line, "t", 2);
                if (pending.empty())
                    throw ParseError(line.number, "tuple before any 'con' block");
                pending.back().pairs.emplace_back(to_int(line, 1), to_int(line, 2));
            }
            else
                throw ParseError(line.number, "unknown record '" + kw + "'");
        }
        for (int v = 0; v < nv; ++v)
            if (! seen[v])
                throw ParseError(h.number, "variable " + std::to_string(v) + " has no 'var' line");
        BinaryCsp csp;
        for (auto & d : domains)
            csp.add_variable(std::move(d));
        std::set<std::pair<int, int>> declared;
        for (auto & p : pending) {
            if (! declared.insert({std::min(p.a, p.b), std::max(p.a, p.b)}).second)
                throw ParseError(p.line, "second constraint on the same variable pair");
            rethrow_at(p.line, [&] { csp.add_constraint(p.a, p.b, std::move(p.pairs)); });
        }
        return csp;
    }

    auto write_csp(std::ostream & out, const BinaryCsp & csp) -> void
    {
        out << "csp " << csp.variable_count() << '\n';
        for (int v = 0; v < csp.variable_count(); ++v) {
            out << "var " << v;
            for (Token t : csp.domain(v))
                out << ' ' << t;
            out << '\n';
        }
        for (const auto & [key, c] : csp.constraints()) {
            out << "con " << c.first << ' ' << c.second << '\n';
            for (const auto & [a, b] : c.allowed)
                out << "t " << a << ' ' << b << '\n';
        }
    }

    auto read_cnf(std::istream & in) -> CnfFormula
    {
        std::vector<Line> lines;
        {
            std::string raw;
            int number = 0;
            while (std::getline(in, raw)) {
                ++number;
                std::istringstream words(raw);
                Line line{number, {}};
                for (std::string w; words >> w;)
                    line.tokens.push_back(w);
                if (line.tokens.empty() || line.tokens[0] == "c" || line.tokens[0][0] == '%')
                    continue;
                lines.push_back(std::move(line));
            }
        }
        if (lines.empty() || lines[0].tokens[0] != "p")
            throw ParseError(lines.empty() ? 0 : lines[0].number, "expected 'p cnf <vars> <clauses>' header");
        const auto & h = lines[0];
        if (h.tokens.size() != 4 || h.tokens[1] != "cnf")
            throw ParseError(h.number, "expected 'p cnf <vars> <clauses>' header");
        CnfFormula f;
        f.variable_count = to_int(h, 2);
        int m = to_int(h, 3);
        std::vector<int> current;
        int last_line = h.number;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            last_line = lines[i].number;
            for (std::size_t j = 0; j < lines[i].tokens.size(); ++j) {
                int lit = to_int(lines[i], j);
                if (lit == 0) {
                    f.clauses.push_back(std::move(current));
                    current.clear();
                }
                else
                    current.push_back(lit);
            }
        }
        if (! current.empty())
            throw ParseError(last_line, "last clause is not terminated by 0");
        if (static_cast<int>(f.clauses.size()) != m)
            throw ParseError(h.number, "header announces " + std::to_string(m) + " clauses, found " + std::to_string(f.clauses.size()));
        rethrow_at(h.number, [&] { f.validate(); });
        return f;
    }

    auto write_cnf(std::ostream & out, const CnfFormula & f) -> void
    {
        out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
        for (const auto & clause : f.clauses) {
            for (int lit : clause)
                out << lit << ' ';
            out << "0\n";
        }
    }

    auto read_graph(std::istream & in) -> Graph
    {
        const auto lines = read_lines(in, 'c');
        if (lines.empty() || lines[0].tokens[0] != "p" || lines[0].tokens.size() != 4 || lines[0].tokens[1] != "edge")
            throw ParseError(lines.empty() ? 0 : lines[0].number, "expected 'p edge <n> <m>' header");
        Graph g;
        g.vertex_count = to_int(lines[0], 2);
        const int m = to_int(lines[0], 3);
        if (g.vertex_count < 0 || m < 0)
            throw ParseError(lines[0].number, "negative size in header");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto & line = lines[i];
            expect(line, "e", 2);
            int u = to_int(line, 1), v = to_int(line, 2);
            if (u < 1 || v < 1 || u > g.vertex_count || v > g.vertex_count)
                throw ParseError(line.number, "vertex out of range");
            if (u == v)
                throw ParseError(line.number, "self-loop");
            g.edges.push_back(make_edge(u - 1, v - 1));
        }
        if (static_cast<int>(g.edges.size()) != m)
            throw ParseError(lines.back().number, "header announces " + std::to_string(m) + " edges, found "
                + std::to_string(g.edges.size()));
        g.normalize();
        return g;
    }

    auto write_graph(std::ostream & out, const Graph & g) -> void
    {
        out << "p edge " << g.vertex_count << ' ' << g.edges.size() << '\n';
        for (const auto & e : g.edges)
            out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
}
