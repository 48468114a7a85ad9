#include <labelcut/config.hpp>
#include <labelcut/errors.hpp>

#include <doctest.h>

#include <sstream>

using namespace labelcut;

TEST_CASE("defaults validate")
{
    RunConfig c;
    c.validate();
    CHECK(c.c_hat == doctest::Approx(2.2));
    CHECK(c.C_hat == doctest::Approx(270.0));
    CHECK(c.expander_cap == 16);
}

TEST_CASE("config files override defaults")
{
    std::istringstream in("# comment\nseed = 42\ncap_cmc_vertices=10\n\nflow_epsilon = 0.01\n");
    auto c = read_config(in);
    CHECK(c.seed == 42);
    CHECK(c.caps.cmc_vertices == 10);
    CHECK(c.flow_epsilon == doctest::Approx(0.01));
    CHECK(c.embed_options().flow.epsilon == doctest::Approx(0.01));
}

TEST_CASE("config round trip")
{
    RunConfig c;
    c.set("retries", "7");
    c.set("pipeline_k", "9");
    std::ostringstream out;
    write_config(out, c);
    std::istringstream in(out.str());
    auto back = read_config(in);
    CHECK(back.retries == 7);
    CHECK(back.pipeline_k == 9);
    CHECK(back.pipeline_options().k == 9);
}

TEST_CASE("bad config values are rejected")
{
    RunConfig c;
    CHECK_THROWS_AS(c.set("nonsense", "1"), Error);
    CHECK_THROWS_AS(c.set("seed", "abc"), Error);
    RunConfig d;
    d.caps.cmc_vertices = 0;
    CHECK_THROWS_AS(d.validate(), Error);
    RunConfig e;
    e.lp_tolerance = 0.5;
    CHECK_THROWS_AS(e.validate(), Error);
    RunConfig f;
    f.pipeline_k = 1;
    CHECK_THROWS_AS(f.validate(), Error);
    std::istringstream in("seed 4\n");
    CHECK_THROWS_AS(read_config(in), Error);
}
