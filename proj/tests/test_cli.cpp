#include <labelcut/cli.hpp>
#include <labelcut/io.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace labelcut;

namespace
{
    struct Result
    {
        int code = 0;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args) -> Result
    {
        args.insert(args.begin(), "labelcut");
        std::vector<const char *> argv;
        for (const auto & s : args)
            argv.push_back(s.c_str());
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    auto scratch() -> fs::path
    {
        auto dir = fs::current_path() / "cli-scratch";
        fs::create_directories(dir);
        return dir;
    }

    auto write(const fs::path & path, const std::string & text) -> std::string
    {
        std::ofstream(path) << text;
        return path.string();
    }

    auto slurp(const fs::path & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
}

TEST_CASE("solve exit codes")
{
    auto dir = scratch();
    auto yes = write(dir / "tri.cmc", "cmc 3 3 3 2\ne 0 1 1\ne 1 2 2\ne 0 2 3\n");
    auto r = run({"solve", "cmc", yes});
    CHECK(r.code == cli::exit_yes);
    CHECK(r.out.find("decision=yes") != std::string::npos);

    auto no = write(dir / "mono.cmc", "cmc 3 3 1 0\ne 0 1 1\ne 1 2 1\ne 0 2 1\n");
    CHECK(run({"solve", "cmc", no}).code == cli::exit_no);

    auto bad = write(dir / "bad.cmc", "cmc 3\n");
    auto b = run({"solve", "cmc", bad});
    CHECK(b.code == cli::exit_error);
    CHECK(b.err.find("line 1") != std::string::npos);

    CHECK(run({"solve", "cmc", (dir / "missing.cmc").string()}).code == cli::exit_error);
    CHECK(run({"solve", "bogus", yes}).code == cli::exit_error);
    CHECK(run({"--cap-cmc-vertices", "2", "solve", "cmc", yes}).code == cli::exit_error);
}

TEST_CASE("dual of a solved CMC gives the same exit code")
{
    auto dir = scratch();
    for (auto [name, text] : std::vector<std::pair<std::string, std::string>>{
             {"a", "cmc 4 4 3 1\ne 0 1 1\ne 1 2 2\ne 2 3 3\ne 0 3 1\n"},
             {"b", "cmc 4 4 2 1\ne 0 1 1\ne 1 2 2\ne 2 3 1\ne 0 3 2\n"}}) {
        auto path = write(dir / (name + ".cmc"), text);
        auto g = io::read_file(path, io::read_cmc);
        auto dual = write(dir / (name + ".dcmc"), io::to_string(io::write_dcmc, cmc_to_dual(g)));
        CHECK(run({"solve", "cmc", path}).code == run({"solve", "dcmc", dual}).code);
    }
}

TEST_CASE("reduce psi2dcmc on a single edge")
{
    auto dir = scratch();
    auto psi = write(dir / "edge.psi", "psi 2 2\npe 0 1\nblock 0 0 1\nblock 1 2 3\nhe 0 2\n");
    auto out = (dir / "edge.dcmc").string();
    auto r = run({"reduce", "psi2dcmc", psi, "--out", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("w=19") != std::string::npos);
    CHECK(r.out.find("p=1") != std::string::npos);
    CHECK(r.out.find("connectivized=0") != std::string::npos);
    CHECK(run({"solve", "dcmc", out}).code == cli::exit_yes);

    auto first = slurp(out);
    run({"reduce", "psi2dcmc", psi, "--out", out});
    CHECK(slurp(out) == first);
}

TEST_CASE("reduce psi2dcmc connectivizes")
{
    auto dir = scratch();
    auto psi = write(dir / "apart.psi", "psi 2 1\nblock 0 0\nblock 1 1\n");
    auto r = run({"reduce", "psi2dcmc", psi, "--out", (dir / "apart.dcmc").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("connectivized=1") != std::string::npos);
}

TEST_CASE("reduce stages chain")
{
    auto dir = scratch();
    auto cnf = write(dir / "f.cnf", "p cnf 2 2\n1 -2 0\n2 0\n");
    auto csp = (dir / "f.csp").string();
    REQUIRE(run({"reduce", "sat2csp", cnf, "--out", csp}).code == 0);
    CHECK(run({"solve", "csp", csp}).code == cli::exit_yes);
    auto psi = (dir / "f.psi").string();
    REQUIRE(run({"reduce", "csp2psi", csp, "--out", psi}).code == 0);
    CHECK(run({"solve", "psi", psi}).code == cli::exit_yes);
    auto dcmc = (dir / "f.dcmc").string();
    auto report = (dir / "f.report").string();
    REQUIRE(run({"reduce", "sat2dcmc", cnf, "--out", dcmc, "--report", report}).code == 0);
    CHECK(run({"solve", "dcmc", dcmc}).code == cli::exit_yes);
    CHECK(slurp(report).find("embed_mode=") != std::string::npos);

    auto unsat = write(dir / "g.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    REQUIRE(run({"reduce", "sat2dcmc", unsat, "--out", dcmc}).code == 0);
    CHECK(run({"solve", "dcmc", dcmc}).code == cli::exit_no);
}

TEST_CASE("embed then route")
{
    auto dir = scratch();
    auto cnf = write(dir / "h.cnf", "p cnf 2 1\n1 2 0\n");
    auto csp = (dir / "h.csp").string();
    REQUIRE(run({"reduce", "sat2csp", cnf, "--out", csp}).code == 0);
    auto graph = write(dir / "h.graph", "p edge 3 2\ne 1 3\ne 2 3\n");
    auto emb = (dir / "h.embed").string();
    auto e = run({"embed", graph, "--k", "8", "--out", emb, "--audit", (dir / "h.audit").string()});
    REQUIRE(e.code == 0);
    CHECK(e.out.find("mode=direct") != std::string::npos);
    CHECK(slurp(dir / "h.audit").rfind("vertex\ttype0", 0) == 0);
    auto routed = (dir / "h.routed").string();
    REQUIRE(run({"reduce", "route", csp, "--embedding", emb, "--out", routed}).code == 0);
    CHECK(run({"solve", "csp", routed}).code == cli::exit_yes);
    CHECK(run({"reduce", "route", csp}).code == cli::exit_error);
}

TEST_CASE("verify and usage errors")
{
    CHECK(run({"verify", "duality", "--trials", "5"}).code == 0);
    CHECK(run({"verify", "nothing"}).code == cli::exit_error);
    CHECK(run({}).code == cli::exit_error);
    CHECK(run({"--help"}).code == 0);
}
