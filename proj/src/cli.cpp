#include <labelcut/cli.hpp>
#include <labelcut/config.hpp>
#include <labelcut/embedding.hpp>
#include <labelcut/errors.hpp>
#include <labelcut/gadgets.hpp>
#include <labelcut/io.hpp>
#include <labelcut/pipeline.hpp>
#include <labelcut/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace labelcut::cli
{
    namespace
    {
        using Report = std::vector<std::pair<std::string, std::string>>;

        auto join(const std::vector<int> & values, int offset = 0) -> std::string
        {
            std::string s;
            for (std::size_t i = 0; i < values.size(); ++i)
                s += (i ? " " : "") + std::to_string(values[i] + offset);
            return s;
        }

        auto fmt(double value) -> std::string
        {
            std::ostringstream out;
            out << std::setprecision(6) << value;
            return out.str();
        }

        /// Writes through `writer` to `path`, or to `fallback` when path is empty.
        template <typename Writer>
        auto emit(const std::string & path, std::ostream & fallback, Writer writer) -> void
        {
            if (path.empty()) {
                writer(fallback);
                return;
            }
            std::ofstream file(path, std::ios::binary);
            if (! file)
                throw Error("cannot write " + path);
            writer(file);
            if (! file)
                throw Error("write to " + path + " failed");
        }

        struct Args
        {
            RunConfig config;
            std::string kind;
            std::string input;
            std::string out;
            std::string embedding_file;
            std::string map_file;
            std::string report_file;
            std::string audit_file;
            int k = 0;
            int trials = 0;
        };

        auto solve(Args & a, std::ostream & out) -> int
        {
            const auto & caps = a.config.caps;
            bool yes = false;
            if (a.kind == "cmc") {
                auto s = solve_cmc_bruteforce(io::read_file(a.input, io::read_cmc), caps);
                yes = s.yes;
                out << "decision=" << (yes ? "yes" : "no") << '\n';
                if (s.min_colors) {
                    out << "min_colors=" << *s.min_colors << '\n';
                    out << "side=" << join(s.side) << '\n';
                }
            }
            else if (a.kind == "dcmc") {
                auto s = solve_dual_bruteforce(io::read_file(a.input, io::read_dcmc), caps);
                yes = s.yes;
                out << "decision=" << (yes ? "yes" : "no") << '\n';
                if (yes)
                    out << "selection=" << join(s.selection) << '\n';
            }
            else if (a.kind == "psi") {
                auto s = solve_psi_bruteforce(io::read_file(a.input, io::read_psi), caps);
                yes = s.yes;
                out << "decision=" << (yes ? "yes" : "no") << '\n';
                if (yes)
                    out << "choice=" << join(s.choice) << '\n';
            }
            else if (a.kind == "csp") {
                auto s = solve_csp_bruteforce(io::read_file(a.input, io::read_csp), caps);
                yes = s.yes;
                out << "decision=" << (yes ? "yes" : "no") << '\n';
                if (yes)
                    out << "valuation=" << join(s.valuation) << '\n';
            }
            else if (a.kind == "cnf") {
                auto s = solve_sat_bruteforce(io::read_file(a.input, io::read_cnf), caps);
                yes = s.yes;
                out << "decision=" << (yes ? "yes" : "no") << '\n';
                if (yes) {
                    std::vector<int> lits;
                    for (std::size_t i = 0; i < s.assignment.size(); ++i)
                        lits.push_back(s.assignment[i] ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1);
                    out << "assignment=" << join(lits) << '\n';
                }
            }
            else
                throw Error("unknown kind '" + a.kind + "'");
            return yes ? exit_yes : exit_no;
        }

        auto reduction_report(const gadgets::Reduction & red, bool connectivized) -> Report
        {
            return {{"connectivized", connectivized ? "1" : "0"}, {"h", std::to_string(red.params.h)},
                {"n", std::to_string(red.params.n)}, {"rho", std::to_string(red.params.rho)},
                {"a", std::to_string(red.params.a)}, {"b", std::to_string(red.params.b)},
                {"w", std::to_string(red.instance.vertex_count)}, {"p", std::to_string(red.instance.colors())},
                {"budget", std::to_string(red.instance.budget)}};
        }

        auto reduce(Args & a, std::ostream & out) -> int
        {
            Report report;
            const auto options = a.config.pipeline_options();
            if (a.kind == "psi2dcmc") {
                auto inst = io::read_file(a.input, io::read_psi);
                auto connected = gadgets::connectivize_pattern(inst);
                auto red = gadgets::reduce_psi_to_dcmc(connected.instance, options.reduce);
                emit(a.out, out, [&](std::ostream & o) { io::write_dcmc(o, red.instance); });
                if (! a.map_file.empty())
                    emit(a.map_file, out, [&](std::ostream & o) { gadgets::write_gadget_map(o, red); });
                report = reduction_report(red, connected.changed);
            }
            else if (a.kind == "sat2csp") {
                auto inc = pipeline::sat_to_csp_g(io::read_file(a.input, io::read_cnf));
                emit(a.out, out, [&](std::ostream & o) { io::write_csp(o, inc.csp); });
                report = {{"variables", std::to_string(inc.variable_count)},
                    {"clauses", std::to_string(inc.clause_count)},
                    {"incidence_edges", std::to_string(inc.graph.edges.size())}};
            }
            else if (a.kind == "route") {
                if (a.embedding_file.empty())
                    throw Error("route needs --embedding");
                auto base = io::read_file(a.input, io::read_csp);
                auto e = io::read_file(a.embedding_file, embedding::read_embedding);
                auto routed = pipeline::route_csp(base, e, a.config.caps);
                emit(a.out, out, [&](std::ostream & o) { io::write_csp(o, routed.csp); });
                std::size_t max_domain = 0;
                for (int w = 0; w < routed.csp.variable_count(); ++w)
                    max_domain = std::max(max_domain, routed.csp.domain(w).size());
                report = {{"host_vertices", std::to_string(e.host.vertex_count)},
                    {"depth", std::to_string(e.depth())}, {"max_domain", std::to_string(max_domain)},
                    {"constraints", std::to_string(routed.csp.constraints().size())}};
            }
            else if (a.kind == "csp2psi") {
                auto csp = io::read_file(a.input, io::read_csp);
                Graph host = a.embedding_file.empty()
                    ? csp.constraint_graph()
                    : io::read_file(a.embedding_file, embedding::read_embedding).host;
                auto conv = pipeline::csp_to_psi(csp, host);
                emit(a.out, out, [&](std::ostream & o) { io::write_psi(o, conv.instance); });
                report = {{"connectivized", conv.connectivized ? "1" : "0"},
                    {"h", std::to_string(conv.instance.pattern.vertex_count)},
                    {"n", std::to_string(conv.instance.block_size)},
                    {"host_edges", std::to_string(conv.instance.host.edges.size())}};
            }
            else if (a.kind == "sat2dcmc") {
                auto f = io::read_file(a.input, io::read_cnf);
                auto r = pipeline::sat_to_dcmc(f, a.config.seed, options);
                emit(a.out, out, [&](std::ostream & o) { io::write_dcmc(o, r.reduction.instance); });
                if (! a.map_file.empty())
                    emit(a.map_file, out, [&](std::ostream & o) { gadgets::write_gadget_map(o, r.reduction); });
                report = r.report();
            }
            else
                throw Error("unknown stage '" + a.kind + "'");
            if (! a.report_file.empty())
                emit(a.report_file, out, [&](std::ostream & o) { pipeline::write_report(o, report); });
            else if (! a.out.empty())
                pipeline::write_report(out, report);
            return 0;
        }

        auto embed(Args & a, std::ostream & out) -> int
        {
            auto g = io::read_file(a.input, io::read_graph);
            const int k = a.k > 0 ? a.k : pipeline::default_k(g.vertex_count + static_cast<int>(g.edges.size()));
            auto e = embedding::embed(g, k, a.config.seed, a.config.embed_options());
            embedding::validate_embedding(g, e);
            emit(a.out, out, [&](std::ostream & o) { embedding::write_embedding(o, e); });
            auto audit = embedding::audit_congestion(e, embedding::default_audit_p(e), a.config.c_hat);
            if (! a.audit_file.empty())
                emit(a.audit_file, out, [&](std::ostream & o) { embedding::write_audit(o, audit); });
            Report report{{"k", std::to_string(k)}, {"mode", embedding::to_string(e.trace.mode)},
                {"ell", std::to_string(e.trace.ell)}, {"host_vertices", std::to_string(e.host.vertex_count)},
                {"host_edges", std::to_string(e.host.edges.size())}, {"depth", std::to_string(e.depth())},
                {"depth_bound", fmt(e.depth_bound)}, {"audit_p", fmt(audit.p)},
                {"audit_threshold", fmt(audit.threshold)}, {"max_type1", std::to_string(audit.max_type1)},
                {"max_type2", std::to_string(audit.max_type2)}};
            if (! a.report_file.empty())
                emit(a.report_file, out, [&](std::ostream & o) { pipeline::write_report(o, report); });
            else if (! a.out.empty())
                pipeline::write_report(out, report);
            return 0;
        }

        auto run_verify(Args & a, std::ostream & out) -> int
        {
            const auto & c = a.config;
            std::vector<verify::SuiteReport> reports;
            const bool all = a.kind == "all";
            if (all || a.kind == "duality")
                reports.push_back(verify::verify_duality(c, a.trials > 0 ? a.trials : 50));
            if (all || a.kind == "gadgets")
                reports.push_back(verify::verify_gadgets(c));
            if (all || a.kind == "embedding")
                reports.push_back(verify::verify_embedding(c, a.trials > 0 ? a.trials : 100));
            if (all || a.kind == "pipeline")
                reports.push_back(verify::verify_pipeline(c, a.trials > 0 ? a.trials : 20));
            if (reports.empty())
                throw Error("unknown suite '" + a.kind + "'");
            bool ok = true;
            for (const auto & r : reports) {
                r.write(out);
                ok = ok && r.passed();
            }
            return ok ? 0 : 1;
        }

        auto run_calibrate(Args & a, std::ostream & out) -> int
        {
            auto cal = verify::calibrate(a.config);
            emit(a.out, out, [&](std::ostream & o) {
                cal.write(o);
                o << "c_hat=" << fmt(a.config.c_hat) << '\n';
                o << "C_hat=" << fmt(a.config.C_hat) << '\n';
            });
            return cal.c_hat_measured <= a.config.c_hat && a.config.c_hat <= 10.0 ? 0 : 1;
        }
    }

    auto run(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int
    {
        Args a;
        try {
            a.config = config_from_environment();
        }
        catch (const Error & e) {
            err << "error: config: " << e.what() << '\n';
            return exit_error;
        }

        CLI::App app{"Colored min-cut reductions, embeddings and brute-force oracles"};
        app.require_subcommand(1);
        app.fallthrough();
        auto & c = a.config;
        app.add_option("--seed", c.seed, "random seed");
        app.add_option("--cap-cmc-vertices", c.caps.cmc_vertices);
        app.add_option("--cap-dual-combinations", c.caps.dual_combinations);
        app.add_option("--cap-psi-assignments", c.caps.psi_assignments);
        app.add_option("--cap-csp-product", c.caps.csp_product);
        app.add_option("--cap-sat-variables", c.caps.sat_variables);
        app.add_option("--cap-expander", c.expander_cap);
        app.add_option("--retries", c.retries);
        app.add_option("--pipeline-k", c.pipeline_k);

        std::function<int(Args &, std::ostream &)> command;
        auto * s = app.add_subcommand("solve", "decide an instance by brute force");
        s->add_option("kind", a.kind, "cmc, dcmc, psi, csp or cnf")->required()
            ->check(CLI::IsMember({"cmc", "dcmc", "psi", "csp", "cnf"}));
        s->add_option("file", a.input)->required();
        s->callback([&] { command = solve; });

        auto * r = app.add_subcommand("reduce", "run one reduction stage");
        r->add_option("stage", a.kind, "psi2dcmc, sat2csp, route, csp2psi or sat2dcmc")->required()
            ->check(CLI::IsMember({"psi2dcmc", "sat2csp", "route", "csp2psi", "sat2dcmc"}));
        r->add_option("input", a.input)->required();
        r->add_option("--out", a.out, "output file (default stdout)");
        r->add_option("--embedding", a.embedding_file, "embed file for route and csp2psi");
        r->add_option("--map", a.map_file, "gadget map sidecar");
        r->add_option("--report", a.report_file, "key=value report file");
        r->callback([&] { command = reduce; });

        auto * e = app.add_subcommand("embed", "embed a DIMACS graph into a small host");
        e->add_option("graph", a.input)->required();
        e->add_option("--k", a.k, "size budget (default ceil(sqrt(n + m)))");
        e->add_option("--out", a.out, "embed file (default stdout)");
        e->add_option("--audit", a.audit_file, "per-vertex type counts, tab separated");
        e->add_option("--report", a.report_file, "key=value report file");
        e->callback([&] { command = embed; });

        auto * v = app.add_subcommand("verify", "run a property suite");
        v->add_option("suite", a.kind, "duality, gadgets, embedding, pipeline or all")->required()
            ->check(CLI::IsMember({"duality", "gadgets", "embedding", "pipeline", "all"}));
        v->add_option("--trials", a.trials);
        v->callback([&] { command = run_verify; });

        auto * cal = app.add_subcommand("calibrate", "measure the flow constant on certified expanders");
        cal->add_option("--out", a.out);
        cal->callback([&] { command = run_calibrate; });

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return 0;
        }
        catch (const CLI::ParseError & ex) {
            err << "error: " << ex.what() << '\n';
            return exit_error;
        }

        try {
            a.config.validate();
            return command(a, out);
        }
        catch (const Error & ex) {
            err << "error: " << ex.what() << '\n';
        }
        catch (const std::exception & ex) {
            err << "error: " << ex.what() << '\n';
        }
        return exit_error;
    }
}
