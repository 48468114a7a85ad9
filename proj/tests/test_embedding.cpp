#include "oracles/oracles.hpp"

#include <labelcut/embedding.hpp>
#include <labelcut/errors.hpp>
#include <labelcut/generators.hpp>
#include <labelcut/lp.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace labelcut;
using namespace labelcut::embedding;

TEST_CASE("simplex on small programs")
{
    // min -x - y  s.t.  x + 2y <= 4, 3x + y <= 6
    lp::LinearProgram p;
    int x = p.add_variable(-1.0), y = p.add_variable(-1.0);
    p.add_row({{x, 1.0}, {y, 2.0}}, lp::Sense::less_equal, 4.0);
    p.add_row({{x, 3.0}, {y, 1.0}}, lp::Sense::less_equal, 6.0);
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.objective == doctest::Approx(-2.8));
    CHECK(s.x[x] == doctest::Approx(1.6));

    lp::LinearProgram q;
    int z = q.add_variable(1.0);
    q.add_row({{z, 1.0}}, lp::Sense::greater_equal, 2.0);
    q.add_row({{z, 1.0}}, lp::Sense::less_equal, 1.0);
    CHECK(lp::solve(q).status == lp::Status::infeasible);

    lp::LinearProgram r;
    int w = r.add_variable(-1.0);
    r.add_row({{w, 1.0}}, lp::Sense::greater_equal, 1.0);
    CHECK(lp::solve(r).status == lp::Status::unbounded);

    lp::LinearProgram e;
    int u = e.add_variable(1.0), v = e.add_variable(2.0);
    e.add_row({{u, 1.0}, {v, 1.0}}, lp::Sense::equal, 3.0);
    e.add_row({{u, 1.0}, {v, -1.0}}, lp::Sense::equal, -1.0);
    auto es = lp::solve(e);
    REQUIRE(es.status == lp::Status::optimal);
    CHECK(es.x[u] == doctest::Approx(1.0));
    CHECK(es.x[v] == doctest::Approx(2.0));
}

TEST_CASE("expander examples")
{
    auto one = build_expander(1);
    CHECK(one.method == CertificateMethod::vacuous);
    CHECK(one.graph.vertex_count == 1);

    auto two = build_expander(2);
    CHECK(two.graph.edges == std::vector<Edge>{{0, 1}});
    CHECK(two.delta_exact == Rational(1));

    auto four = build_expander(4);
    CHECK(four.delta_hat >= 0.5);
    CHECK(edge_expansion_exhaustive(four.graph) == oracle::edge_expansion(four.graph));

    for (int ell = 2; ell <= 12; ++ell) {
        auto c = build_expander(ell);
        CHECK(c.graph.vertex_count == ell);
        CHECK(c.graph.max_degree() <= 3);
        CHECK(is_connected(ell, c.graph.edges));
        CHECK(c.delta_exact == oracle::edge_expansion(c.graph));
        CHECK(c.delta_exact >= Rational(1, 10));
    }

    auto big = build_expander(24);
    CHECK(big.method == CertificateMethod::spectral);
    CHECK(big.delta_hat >= 0.1);
    CHECK(spectral_expansion_bound(big.graph) == doctest::Approx(big.delta_hat));
}

TEST_CASE("spectral bound never exceeds the exact expansion")
{
    for (int ell = 4; ell <= 12; ++ell) {
        auto c = build_expander(ell);
        CHECK(spectral_expansion_bound(c.graph) <= boost::rational_cast<double>(c.delta_exact) + 1e-9);
    }
}

TEST_CASE("sparsity")
{
    Graph path{3, {{0, 1}, {1, 2}}};
    std::vector<int> all{0, 1, 2};
    CHECK(verify_sparsity(path, all, all) == Rational(1, 3));
    std::vector<int> left{0, 1}, right{1, 2};
    CHECK(verify_sparsity(path, left, right) == Rational(1, 4));

    Graph edge{2, {{0, 1}}};
    std::vector<int> u{0}, v{1};
    CHECK_THROWS_AS(verify_sparsity(edge, u, v), NotASeparation);
    std::vector<int> partial{0};
    CHECK_THROWS_AS(verify_sparsity(path, partial, partial), NotASeparation);

    for (int ell = 2; ell <= 8; ++ell) {
        auto c = build_expander(ell);
        auto min = min_sparsity_exhaustive(c.graph);
        CHECK(min == oracle::min_sparsity_3l(c.graph));
        CHECK(min >= sparsity_floor(c.delta_exact, ell));
    }
    CHECK(sparsity_floor(Rational(1, 10), 8) == Rational(1, 248));
}

TEST_CASE("single-edge flow has congestion 3")
{
    auto flow = min_congestion_flow(Graph{2, {{0, 1}}});
    CHECK(flow.congestion == doctest::Approx(3.0));
    CHECK(flow.load[0] == doctest::Approx(3.0));
    CHECK(flow.load[1] == doctest::Approx(3.0));
    CHECK(flow.between(0, 1).front().vertices == std::vector<int>{0, 1});
    CHECK(flow.between(1, 1).front().vertices == std::vector<int>{1});
}

TEST_CASE("flows are normalized and loads re-aggregate")
{
    for (int ell : {3, 5, 8}) {
        auto c = build_expander(ell);
        auto flow = min_congestion_flow(c.graph);
        for (int u = 0; u < ell; ++u)
            for (int v = 0; v < ell; ++v) {
                double total = 0.0;
                for (const auto & p : flow.between(u, v)) {
                    total += p.weight;
                    CHECK(p.vertices.front() == u);
                    CHECK(p.vertices.back() == v);
                    for (std::size_t i = 1; i < p.vertices.size(); ++i)
                        CHECK(c.graph.has_edge(p.vertices[i - 1], p.vertices[i]));
                }
                CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
            }
        auto copy = flow;
        recompute_load(copy);
        for (int w = 0; w < ell; ++w)
            CHECK(copy.load[w] == doctest::Approx(flow.load[w]).epsilon(1e-6));
        CHECK(flow.congestion >= flow.lower_bound - 1e-6);
    }
}

TEST_CASE("iterative flow stays within its certified gap")
{
    auto c = build_expander(10);
    FlowOptions exact;
    FlowOptions iterative;
    iterative.exact_cap = 4;
    auto a = min_congestion_flow(c.graph, exact);
    auto b = min_congestion_flow(c.graph, iterative);
    CHECK(b.method == FlowMethod::iterative);
    CHECK(b.congestion >= a.congestion - 1e-6);
    CHECK(b.congestion <= (1 + iterative.epsilon) * b.lower_bound + 1e-9);
    CHECK(b.lower_bound <= a.congestion + 1e-6);
}

TEST_CASE("flow rejects disconnected graphs")
{
    CHECK_THROWS_AS(min_congestion_flow(Graph{3, {{0, 1}}}), InvalidInstance);
}

TEST_CASE("path sampling follows weights")
{
    ConcurrentFlow flow;
    flow.vertex_count = 1;
    flow.paths = {{{{0}, 0.25}, {{0, 0}, 0.75}}};
    CHECK(sample_path(flow, 0, 0, 0.1).size() == 1);
    CHECK(sample_path(flow, 0, 0, 0.3).size() == 2);
    CHECK(sample_path(flow, 0, 0, 0.999).size() == 2);
}

TEST_CASE("degree reduction is a minor model")
{
    Graph star{6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}};
    auto r = reduce_degree(star);
    CHECK(r.graph.max_degree() <= 3);
    CHECK(r.graph.vertex_count == 10);
    CHECK(is_minor_model(star, r));
    CHECK(contract(r, 6) == star);

    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        auto g = generators::random_graph(9, 0.5, rng);
        auto red = reduce_degree(g);
        CHECK(red.graph.max_degree() <= 3);
        CHECK(is_minor_model(g, red));
    }
}

TEST_CASE("triangle with k = 8 is embedded directly")
{
    Graph triangle{3, {{0, 1}, {0, 2}, {1, 2}}};
    auto e = embed(triangle, 8, 1);
    CHECK(e.trace.mode == EmbedMode::direct);
    CHECK(e.host == triangle);
    CHECK(e.depth() == 1);
    CHECK(oracle::embedding_valid(triangle, e.host, e.branch_sets));
    auto audit = audit_congestion(e, default_audit_p(e), 2.2);
    CHECK(audit.max_type1 == 0);
    CHECK(audit.max_type2 == 0);
}

TEST_CASE("direct mode pads the host")
{
    Graph edge{2, {{0, 1}}};
    auto e = embed(edge, 12, 1);
    CHECK(e.trace.mode == EmbedMode::direct);
    CHECK(e.host.vertex_count == 3);
    validate_embedding(edge, e);
}

TEST_CASE("small k uses a single host vertex")
{
    Rng rng(2);
    auto g = generators::random_max_degree3(20, 25, rng);
    auto e = embed(g, 5, 3);
    CHECK(e.trace.mode == EmbedMode::single_vertex);
    CHECK(e.host.vertex_count == 1);
    CHECK(e.depth() == 20);
    CHECK_THROWS_AS(embed(g, 1, 3), InvalidK);
}

TEST_CASE("expander-mode embeddings are valid, balanced and reproducible")
{
    Rng rng(12);
    for (int t = 0; t < 8; ++t) {
        auto g = generators::random_max_degree3_sized(120, rng);
        int k = 16;
        auto e = embed_once(g, k, t);
        CHECK(e.trace.mode == EmbedMode::expander);
        CHECK(e.host.vertex_count == 4);
        CHECK(e.host.vertex_count + static_cast<int>(e.host.edges.size()) <= k);
        CHECK(oracle::embedding_valid(g, e.host, e.branch_sets));
        validate_embedding(g, e);

        auto audit = audit_congestion(e, default_audit_p(e), 2.2);
        int n_reduced = e.trace.reduction.graph.vertex_count;
        int cap = 1 + (n_reduced + e.trace.ell - 1) / e.trace.ell;
        for (const auto & v : audit.vertices) {
            CHECK(v.type0 <= cap);
            CHECK(v.depth <= v.type0 + v.type1 + v.type2);
        }

        auto again = embed_once(g, k, t);
        std::ostringstream a, b;
        write_embedding(a, e);
        write_embedding(b, again);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("embedding file round trip")
{
    Rng rng(6);
    auto g = generators::random_max_degree3(30, 40, rng);
    auto e = embed(g, 12, 9);
    std::ostringstream out;
    write_embedding(out, e);
    std::istringstream in(out.str());
    auto back = read_embedding(in);
    CHECK(back.host == e.host);
    CHECK(back.branch_sets == e.branch_sets);
    CHECK(back.zeta == e.zeta);
}

TEST_CASE("invalid embeddings are rejected")
{
    Graph path{3, {{0, 1}, {1, 2}}};
    Embedding e;
    e.host = Graph{3, {{0, 1}}};
    e.branch_sets = {{0}, {1}, {2}};
    CHECK_THROWS_AS(validate_embedding(path, e), InvalidEmbedding);
    e.host = Graph{3, {{0, 1}, {1, 2}}};
    validate_embedding(path, e);
    e.branch_sets = {{0}, {}, {2}};
    CHECK_THROWS_AS(validate_embedding(path, e), InvalidEmbedding);
}

TEST_CASE("depth bound formula")
{
    Graph g{10, {{0, 1}, {1, 2}}};
    CHECK(depth_bound(g, 4, 270.0) == doctest::Approx(270.0 * (1.0 + 12.0 / 4.0) * std::log(4.0)));
}
