#include "oracles/oracles.hpp"

#include <labelcut/errors.hpp>
#include <labelcut/generators.hpp>
#include <labelcut/pipeline.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace labelcut;
using namespace labelcut::pipeline;

namespace
{
    constexpr Token T = true_token;
    constexpr Token F = false_token;

    auto trivial_embedding(const Graph & g) -> embedding::Embedding
    {
        embedding::Embedding e;
        e.host = g;
        for (int v = 0; v < g.vertex_count; ++v) {
            e.branch_sets.push_back({v});
            e.zeta.push_back(v);
        }
        return e;
    }

    auto dcmc_yes(const PipelineResult & r) -> bool { return oracle::dual_decision(r.reduction.instance); }
}

TEST_CASE("incidence CSP of a two-literal clause")
{
    auto inc = sat_to_csp_g({2, {{1, -2}}});
    CHECK(inc.graph == Graph{3, {{0, 2}, {1, 2}}});
    CHECK(inc.csp.domain(2) == std::vector<Token>{1, 2});
    CHECK(inc.csp.domain(0) == std::vector<Token>{F, T});
    CHECK(inc.csp.find_constraint(0, 2)->allowed == std::vector<TokenPair>{{F, 2}, {T, 1}, {T, 2}});
    CHECK(inc.csp.find_constraint(1, 2)->allowed == std::vector<TokenPair>{{F, 1}, {F, 2}, {T, 1}});
    CHECK(solve_csp_bruteforce(inc.csp).yes);
}

TEST_CASE("unit clause forces its literal")
{
    auto inc = sat_to_csp_g({1, {{1}}});
    CHECK(inc.csp.domain(1) == std::vector<Token>{1});
    CHECK(inc.csp.find_constraint(0, 1)->allowed == std::vector<TokenPair>{{T, 1}});
}

TEST_CASE("malformed clauses are rejected")
{
    CHECK_THROWS_AS(sat_to_csp_g({2, {{}}}), MalformedClause);
    CHECK_THROWS_AS(sat_to_csp_g({2, {{1, -1}}}), MalformedClause);
}

TEST_CASE("incidence CSP is equisatisfiable on all small formulas")
{
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m)
            generators::for_each_cnf(n, m, [](const CnfFormula & f) {
                CHECK(solve_csp_bruteforce(sat_to_csp_g(f).csp).yes == oracle::dpll(f));
            });
}

TEST_CASE("trivial routing keeps the instance")
{
    CnfFormula f{3, {{1, -2}, {2, 3}, {-1, -3}}};
    auto inc = sat_to_csp_g(f);
    auto routed = route_csp(inc.csp, trivial_embedding(inc.graph));
    REQUIRE(routed.csp.variable_count() == inc.csp.variable_count());
    for (int v = 0; v < inc.csp.variable_count(); ++v) {
        CHECK(routed.coords[v] == std::vector<int>{v});
        CHECK(routed.csp.domain(v).size() == inc.csp.domain(v).size());
    }
    CHECK(routed.csp.constraints().size() == inc.csp.constraints().size());
    for (const auto & [key, c] : inc.csp.constraints()) {
        const auto * r = routed.csp.find_constraint(key.first, key.second);
        REQUIRE(r);
        std::vector<TokenPair> decoded;
        for (auto [x, y] : r->allowed)
            decoded.emplace_back(routed.component(inc.csp, key.first, 0, x), routed.component(inc.csp, key.second, 0, y));
        std::sort(decoded.begin(), decoded.end());
        CHECK(decoded == c.allowed);
    }
}

TEST_CASE("routing rejects embeddings of another graph")
{
    auto inc = sat_to_csp_g({2, {{1, 2}}});
    auto e = trivial_embedding(Graph{3, {{0, 2}}});
    CHECK_THROWS_AS(route_csp(inc.csp, e), InvalidEmbedding);
}

TEST_CASE("routing through shallow embeddings preserves satisfiability")
{
    Rng rng(77);
    int runs = 0;
    for (int t = 0; t < 120; ++t) {
        int n = 1 + static_cast<int>(rng.below(4));
        int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(8 - n)));
        auto f = generators::random_cnf(n, m, rng);
        auto inc = sat_to_csp_g(f);
        auto e = oracle::random_shallow_embedding(inc.graph, rng.next());
        REQUIRE(oracle::embedding_valid(inc.graph, e.host, e.branch_sets));
        Caps caps;
        RoutedCsp routed;
        try {
            routed = route_csp(inc.csp, e, caps);
        }
        catch (const CapExceeded &) {
            continue;
        }
        ++runs;
        bool sat = oracle::dpll(f);
        CHECK(oracle::csp_decision(routed.csp) == sat);
        int depth = e.depth();
        for (int w = 0; w < routed.csp.variable_count(); ++w)
            CHECK(routed.csp.domain(w).size() <= static_cast<std::size_t>(std::pow(3.0, depth)));

        auto psi = csp_to_psi(routed.csp, e.host);
        CHECK(oracle::psi_decision(psi.instance) == sat);
    }
    CHECK(runs >= 100);
}

TEST_CASE("csp to psi: unconstrained edges are complete and dummies stay isolated")
{
    BinaryCsp csp;
    csp.add_variable({0, 1});
    csp.add_variable({0, 1, 2});
    Graph host{2, {{0, 1}}};
    auto conv = csp_to_psi(csp, host);
    CHECK_FALSE(conv.connectivized);
    CHECK(conv.instance.block_size == 3);
    CHECK(conv.instance.host.edges.size() == 6);
    int dummy = -1;
    for (int v = 0; v < static_cast<int>(conv.token_of.size()); ++v)
        if (conv.token_of[v] < 0)
            dummy = v;
    REQUIRE(dummy >= 0);
    for (const auto & edge : conv.instance.host.edges)
        CHECK((edge.u != dummy && edge.v != dummy));
}

TEST_CASE("csp to psi connectivizes a disconnected host graph")
{
    BinaryCsp csp;
    csp.add_variable({0, 1});
    csp.add_variable({0});
    auto conv = csp_to_psi(csp, Graph{2, {}});
    CHECK(conv.connectivized);
    CHECK(is_connected(conv.instance.pattern.vertex_count, conv.instance.pattern.edges));
    CHECK(solve_psi_bruteforce(conv.instance).yes);
}

TEST_CASE("end to end examples")
{
    auto no = sat_to_dcmc({1, {{1}, {-1}}}, 1);
    CHECK_FALSE(dcmc_yes(no));
    auto yes = sat_to_dcmc({2, {{1, 2}}}, 1);
    CHECK(dcmc_yes(yes));
    CHECK(yes.reduction.instance.budget == static_cast<int>(yes.psi.instance.pattern.edges.size()));
    CHECK(yes.reduction.instance.colors() == static_cast<int>(yes.psi.instance.host.edges.size()));
}

TEST_CASE("default k")
{
    CHECK(default_k(1) == 2);
    CHECK(default_k(4) == 2);
    CHECK(default_k(5) == 3);
    CHECK(default_k(200) == 15);
    CHECK(default_k(CnfFormula{3, {{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 3}}}) == 3);
}

TEST_CASE("pipeline with a larger k routes through a real host")
{
    PipelineOptions options;
    options.k = 8;
    for (const CnfFormula & f : {CnfFormula{2, {{1, 2}}}, CnfFormula{1, {{1}, {-1}}}, CnfFormula{2, {{1, -2}}}}) {
        auto r = sat_to_dcmc(f, 3, options);
        CHECK(r.embedding.trace.mode == embedding::EmbedMode::direct);
        CHECK(r.embedding.host.vertex_count == 3);
        CHECK(dcmc_yes(r) == oracle::dpll(f));
    }
}

TEST_CASE("report is stable")
{
    CnfFormula f{3, {{1, -2, 3}, {-1, 2}}};
    auto a = sat_to_dcmc(f, 5);
    auto b = sat_to_dcmc(f, 5);
    std::ostringstream x, y;
    write_report(x, a.report());
    write_report(y, b.report());
    CHECK(x.str() == y.str());
    CHECK(x.str().find("w=") != std::string::npos);
    CHECK(x.str().find("depth=") != std::string::npos);
}

TEST_CASE("csp product cap")
{
    Caps caps;
    caps.csp_product = 3;
    auto inc = sat_to_csp_g({3, {{1, 2, 3}}});
    embedding::Embedding e;
    e.host = Graph{1, {}};
    e.branch_sets = {{0}, {0}, {0}, {0}};
    e.zeta = {0, 0, 0, 0};
    CHECK_THROWS_AS(route_csp(inc.csp, e, caps), CapExceeded);
}
