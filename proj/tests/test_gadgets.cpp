#include "oracles/oracles.hpp"

#include <labelcut/errors.hpp>
#include <labelcut/gadgets.hpp>
#include <labelcut/generators.hpp>

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace labelcut;
using namespace labelcut::gadgets;

namespace
{
    auto single_edge(int n, std::vector<Edge> host_edges) -> PsiInstance
    {
        PsiInstance inst;
        inst.pattern = Graph{2, {{0, 1}}};
        inst.block_size = n;
        for (int x = 0; x < 2; ++x) {
            inst.blocks.emplace_back();
            for (int i = 0; i < n; ++i)
                inst.blocks.back().push_back(x * n + i);
        }
        inst.host = Graph{2 * n, std::move(host_edges)};
        inst.host.normalize();
        return inst;
    }
}

TEST_CASE("prime choice")
{
    CHECK(choose_prime(2, 1) == 3);
    CHECK(choose_prime(16, 2) == 5);
    CHECK(choose_prime(1, 1) == 2);
    for (int n = 1; n <= 60; ++n)
        for (int a = 1; a <= 4; ++a) {
            int rho = choose_prime(n, a);
            CHECK(rho == oracle::prime_scan(n, a));
            CHECK(oracle::is_prime(rho));
        }
    CHECK_THROWS(choose_prime(2, 0));
}

TEST_CASE("integer roots and primality")
{
    CHECK(integer_root_ceil(16, 2) == 4);
    CHECK(integer_root_ceil(17, 2) == 5);
    CHECK(integer_root_ceil(1, 5) == 1);
    CHECK(integer_root_ceil(1000000, 3) == 100);
    CHECK(integer_root_ceil(1000001, 3) == 101);
    for (int x = 0; x < 500; ++x)
        CHECK(is_prime(x) == oracle::is_prime(x));
}

TEST_CASE("f maps enumerate tuples lexicographically")
{
    auto inst = single_edge(4, {});
    auto f = build_f_maps(inst, 3, 2);
    CHECK(f[0][0] == FieldVector{1, 1});
    CHECK(f[0][1] == FieldVector{1, 2});
    CHECK(f[0][2] == FieldVector{2, 1});
    CHECK(f[1][3] == FieldVector{2, 2});
    auto g = build_f_maps(single_edge(2, {}), 3, 1);
    CHECK(g[0][0] == FieldVector{1});
    CHECK(g[0][1] == FieldVector{2});
}

TEST_CASE("W index is a bijection")
{
    auto inst = single_edge(2, {{0, 2}});
    auto params = make_params(inst);
    WIndex index(params);
    CHECK(index.size() == 19);
    CHECK(params.w_size() == 19);
    for (int w = 1; w < 19; ++w)
        CHECK(index.encode(index.decode(w)) == w);
}

TEST_CASE("single-edge gadget sizes")
{
    auto inst = single_edge(2, {{0, 2}});
    auto params = make_params(inst);
    CHECK(params.rho == 3);
    CHECK(params.a == 1);
    CHECK(params.b == 2);
    GadgetLabel label{1, 0, 2};
    auto a_edges = build_a_edges(inst, params, label);
    std::sort(a_edges.begin(), a_edges.end());
    CHECK(std::adjacent_find(a_edges.begin(), a_edges.end()) == a_edges.end());
    CHECK(a_edges.size() == 5);
    for (int z = 0; z < 2; ++z)
        CHECK(build_padding(inst, params, label, z).size() == 7);

    auto red = reduce_psi_to_dcmc(inst);
    CHECK(red.instance.vertex_count == 19);
    CHECK(red.instance.colors() == 1);
    CHECK(red.instance.budget == 1);
}

TEST_CASE("reduction preconditions")
{
    PsiInstance edgeless;
    edgeless.pattern = Graph{2, {}};
    edgeless.block_size = 1;
    edgeless.blocks = {{0}, {1}};
    edgeless.host = Graph{2, {}};
    CHECK_THROWS_AS(reduce_psi_to_dcmc(edgeless), PatternDisconnected);

    ReduceOptions small;
    small.max_w = 10;
    CHECK_THROWS_AS(reduce_psi_to_dcmc(single_edge(2, {{0, 2}}), small), CapExceeded);
}

TEST_CASE("gadget map round trip")
{
    auto red = reduce_psi_to_dcmc(single_edge(2, {{0, 2}, {1, 3}, {1, 2}}));
    std::ostringstream out;
    write_gadget_map(out, red);
    std::istringstream in(out.str());
    CHECK(read_gadget_map(in) == red.labels);
}

TEST_CASE("reduction agrees with oracles and witnesses translate both ways")
{
    Rng rng(31);
    Graph path{3, {{0, 1}, {1, 2}}};
    for (int t = 0; t < 25; ++t) {
        auto inst = generators::random_psi(path, 2, 0.5, rng);
        auto red = reduce_psi_to_dcmc(inst);
        bool psi = oracle::psi_decision(inst);
        CHECK(oracle::dual_decision(red.instance) == psi);
        auto ds = solve_dual_bruteforce(red.instance);
        CHECK(ds.yes == psi);
        if (ds.yes) {
            auto choice = decode_selection(inst, red, ds.selection);
            REQUIRE(choice);
            CHECK(psi_choice_valid(inst, *choice));
            auto again = encode_choice(inst, red, *choice);
            CHECK(selection_disconnects(red.instance, again));
        }
    }
}

TEST_CASE("connectivization")
{
    PsiInstance connected = single_edge(1, {{0, 1}});
    auto same = connectivize_pattern(connected);
    CHECK_FALSE(same.changed);
    CHECK(same.instance == connected);

    PsiInstance isolated;
    isolated.pattern = Graph{2, {}};
    isolated.block_size = 2;
    isolated.blocks = {{0, 1}, {2, 3}};
    isolated.host = Graph{4, {}};
    auto star = connectivize_pattern(isolated);
    CHECK(star.changed);
    CHECK(star.instance.pattern.vertex_count == 3);
    CHECK(is_connected(3, star.instance.pattern.edges));
    CHECK(star.instance.pattern.edges.size() == 2);
    star.instance.validate();

    Rng rng(8);
    Graph two_parts{4, {{0, 1}, {2, 3}}};
    for (int t = 0; t < 10; ++t) {
        auto inst = generators::random_psi(two_parts, 2, 0.4, rng);
        auto c = connectivize_pattern(inst);
        CHECK(c.changed);
        CHECK(is_connected(c.instance.pattern.vertex_count, c.instance.pattern.edges));
        CHECK(solve_psi_bruteforce(c.instance).yes == oracle::psi_decision(inst));
    }
}
