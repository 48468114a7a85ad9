#include <labelcut/embedding.hpp>
#include <labelcut/errors.hpp>
#include <labelcut/gadgets.hpp>
#include <labelcut/generators.hpp>
#include <labelcut/pipeline.hpp>
#include <labelcut/rng.hpp>
#include <labelcut/verify.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace labelcut::verify
{
    namespace
    {
        /// Tallies one property over many cases.
        struct Tally
        {
            explicit Tally(std::string n) : name(std::move(n)) {}

            std::string name;
            long cases = 0;
            long failures = 0;
            std::string first_failure;

            auto record(bool ok, const std::string & context) -> void
            {
                ++cases;
                if (! ok && failures++ == 0)
                    first_failure = context;
            }

            auto check() const -> Check
            {
                std::string detail = std::to_string(cases - failures) + "/" + std::to_string(cases);
                if (failures > 0)
                    detail += " first failure: " + first_failure;
                return {name, failures == 0, detail};
            }
        };

        template <typename T>
        auto fmt(T value) -> std::string
        {
            std::ostringstream out;
            out << std::setprecision(6) << value;
            return out.str();
        }
    }

    auto SuiteReport::passed() const -> bool
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check & c) { return c.passed; });
    }

    auto SuiteReport::write(std::ostream & out) const -> void
    {
        for (const auto & c : checks)
            out << suite << '.' << c.name << '=' << (c.passed ? "pass" : "fail") << ' ' << c.detail << '\n';
        for (const auto & [key, value] : stats)
            out << suite << '.' << key << '=' << value << '\n';
        out << suite << '=' << (passed() ? "pass" : "fail") << '\n';
    }

    auto Calibration::write(std::ostream & out) const -> void
    {
        for (const auto & r : rows)
            out << "ell=" << r.ell << " certificate=" << embedding::to_string(r.certificate)
                << " delta_hat=" << fmt(r.delta_hat) << " flow=" << embedding::to_string(r.flow_method)
                << " congestion=" << fmt(r.congestion) << " lower_bound=" << fmt(r.lower_bound)
                << " ratio=" << fmt(r.ratio) << '\n';
        out << "c_hat_measured=" << fmt(c_hat_measured) << '\n';
        out << "C_hat_derived=" << fmt(C_hat_derived) << '\n';
        out << "delta_min=" << fmt(delta_min) << '\n';
    }

    auto calibrate(const RunConfig & config, std::span<const int> ells) -> Calibration
    {
        Calibration cal;
        cal.delta_min = std::numeric_limits<double>::infinity();
        const auto options = config.embed_options();
        for (int ell : ells) {
            if (ell < 2)
                continue;
            auto bundle = embedding::expander_flow(ell, options);
            CalibrationRow row;
            row.ell = ell;
            row.certificate = bundle->certificate.method;
            row.delta_hat = bundle->certificate.delta_hat;
            row.flow_method = bundle->flow.method;
            row.congestion = bundle->flow.congestion;
            row.lower_bound = bundle->flow.lower_bound;
            row.ratio = row.congestion / (ell * std::log(static_cast<double>(ell)));
            cal.c_hat_measured = std::max(cal.c_hat_measured, row.ratio);
            cal.delta_min = std::min(cal.delta_min, row.delta_hat);
            cal.rows.push_back(row);
        }
        cal.C_hat_derived = 120.0 * cal.c_hat_measured + 6.0;
        return cal;
    }

    auto verify_duality(const RunConfig & config, int trials) -> SuiteReport
    {
        SuiteReport report{"duality", {}, {}};
        Tally agree{"agreement"}, witness{"witness"}, round_trip{"round_trip"}, monotone{"monotonicity"};
        int yes = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(config.seed, 0xd0a1, static_cast<std::uint64_t>(t)));
            const int n = 2 + static_cast<int>(rng.below(6));
            const int colors = 1 + static_cast<int>(rng.below(5));
            const int m = colors + static_cast<int>(rng.below(6));
            const int budget = static_cast<int>(rng.below(static_cast<std::uint64_t>(colors + 1)));
            const auto g = generators::random_cmc(n, m, colors, budget, rng);
            const std::string ctx = "trial " + std::to_string(t);
            const auto dual = cmc_to_dual(g);
            const auto s = solve_cmc_bruteforce(g, config.caps);
            const auto d = solve_dual_bruteforce(dual, config.caps);
            agree.record(s.yes == d.yes, ctx);
            yes += s.yes;
            bool ok = true;
            if (s.yes)
                ok = ok && cut_colors(g, s.side) <= g.budget;
            if (d.yes)
                ok = ok && static_cast<int>(d.selection.size()) == dual.budget && selection_disconnects(dual, d.selection);
            witness.record(ok, ctx);
            round_trip.record(dual_to_cmc(dual) == g, ctx);
            bool mono = true;
            for (int k = 0; k <= g.colors; ++k) {
                auto h = g;
                h.budget = k;
                const bool expected = s.min_colors && *s.min_colors <= k;
                mono = mono && solve_dual_bruteforce(cmc_to_dual(h), config.caps).yes == expected;
            }
            monotone.record(mono, ctx);
        }
        for (const auto * t : {&agree, &witness, &round_trip, &monotone})
            report.checks.push_back(t->check());
        report.stats.emplace_back("trials", std::to_string(trials));
        report.stats.emplace_back("yes_instances", std::to_string(yes));
        return report;
    }

    auto verify_gadgets(const RunConfig & config) -> SuiteReport
    {
        SuiteReport report{"gadgets", {}, {}};
        Tally size{"exact_size"}, agree{"agreement"}, spans{"spanning"}, padding{"padding_pairs_connected"},
            sound{"soundness"}, complete{"completeness"};
        int instances = 0, yes = 0;
        gadgets::ReduceOptions reduce;
        reduce.max_w = config.max_w;
        for (int h : {2, 3})
            for (const auto & pattern : generators::connected_patterns(h, 2))
                for (int n : {1, 2}) {
                    const auto candidates = generators::candidate_host_edges(pattern, n).size();
                    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates); ++mask) {
                        const auto inst = generators::psi_from_mask(pattern, n, mask);
                        const std::string ctx = "h=" + std::to_string(h) + " n=" + std::to_string(n) + " mask="
                            + std::to_string(mask);
                        ++instances;
                        const auto red = gadgets::reduce_psi_to_dcmc(inst, reduce);
                        const auto & d = red.instance;
                        const auto & prm = red.params;
                        std::uint64_t expected_w = 1;
                        for (int i = 0; i < prm.a; ++i)
                            expected_w *= static_cast<std::uint64_t>(prm.rho * (prm.b + 1));
                        expected_w = 1 + static_cast<std::uint64_t>(h) * expected_w;
                        size.record(static_cast<std::uint64_t>(d.vertex_count) == expected_w
                                && d.colors() == static_cast<int>(inst.host.edges.size())
                                && d.budget == static_cast<int>(pattern.edges.size()),
                            ctx);

                        const auto ps = solve_psi_bruteforce(inst, config.caps);
                        const auto ds = solve_dual_bruteforce(d, config.caps);
                        agree.record(ps.yes == ds.yes, ctx);
                        yes += ps.yes;

                        bool spanning = true;
                        for (const auto & gadget : d.color_graphs) {
                            std::vector<char> touched(d.vertex_count, 0);
                            for (const auto & e : gadget)
                                touched[e.u] = touched[e.v] = 1;
                            spanning = spanning && std::count(touched.begin(), touched.end(), 0) == 0;
                        }
                        spans.record(spanning, ctx);

                        bool pairs = true;
                        for (int i = 0; i < d.colors(); ++i)
                            for (int j = i + 1; j < d.colors(); ++j) {
                                if (red.labels[i].alpha != red.labels[j].alpha)
                                    continue;
                                auto both = d.color_graphs[i];
                                both.insert(both.end(), d.color_graphs[j].begin(), d.color_graphs[j].end());
                                pairs = pairs && is_connected(d.vertex_count, both);
                            }
                        padding.record(pairs, ctx);

                        if (ds.yes) {
                            auto choice = gadgets::decode_selection(inst, red, ds.selection);
                            sound.record(choice && psi_choice_valid(inst, *choice), ctx);
                        }
                        if (ps.yes) {
                            const auto colors = gadgets::encode_choice(inst, red, ps.choice);
                            UnionFind uf(d.vertex_count);
                            for (int c : colors)
                                for (const auto & e : d.color_graphs[c - 1])
                                    uf.unite(e.u, e.v);
                            bool apart = true;
                            for (int w : gadgets::selected_images(inst, red, ps.choice))
                                apart = apart && uf.find(w) != uf.find(0);
                            complete.record(apart, ctx);
                        }
                    }
                }
        for (const auto * t : {&size, &agree, &spans, &padding, &sound, &complete})
            report.checks.push_back(t->check());
        report.stats.emplace_back("instances", std::to_string(instances));
        report.stats.emplace_back("yes_instances", std::to_string(yes));
        return report;
    }

    auto verify_embedding(const RunConfig & config, int trials) -> SuiteReport
    {
        SuiteReport report{"embedding", {}, {}};
        const auto cal = calibrate(config);
        {
            std::ostringstream out;
            out << "measured " << fmt(cal.c_hat_measured) << " pinned " << fmt(config.c_hat);
            report.checks.push_back(
                {"flow_constant", cal.c_hat_measured <= config.c_hat && config.c_hat <= 10.0, out.str()});
        }
        Tally expansion{"expander_certified"}, sparsity{"sparsity_floor"};
        const auto options = config.embed_options();
        for (int ell = 2; ell <= config.expander_cap; ++ell) {
            auto bundle = embedding::expander_flow(ell, options);
            const auto & cert = bundle->certificate;
            const std::string ctx = "ell=" + std::to_string(ell);
            expansion.record(
                cert.method == embedding::CertificateMethod::exhaustive && cert.delta_hat >= config.delta_hat, ctx);
            sparsity.record(embedding::min_sparsity_exhaustive(cert.graph) >= embedding::sparsity_floor(cert.delta_exact, ell), ctx);
        }
        report.checks.push_back(expansion.check());
        report.checks.push_back(sparsity.check());

        Tally valid{"embedding_valid"};
        int accepted = 0, claim_failures = 0, expander_runs = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(config.seed, 0xe3b, static_cast<std::uint64_t>(t)));
            const int size = 50 + static_cast<int>(rng.below(351));
            const auto g = generators::random_max_degree3_sized(size, rng);
            const int k = pipeline::default_k(g.vertex_count + static_cast<int>(g.edges.size()));
            const auto e = embedding::embed_once(g, k, derive_seed(config.seed, 0xe3c, static_cast<std::uint64_t>(t)), options);
            bool ok = true;
            try {
                embedding::validate_embedding(g, e);
            }
            catch (const InvalidEmbedding &) {
                ok = false;
            }
            valid.record(ok, "trial " + std::to_string(t));
            accepted += e.accepted();
            if (e.trace.mode == embedding::EmbedMode::expander) {
                ++expander_runs;
                const auto audit = embedding::audit_congestion(e, embedding::default_audit_p(e), config.c_hat);
                claim_failures += ! (audit.type1_within() && audit.type2_within());
            }
        }
        report.checks.push_back(valid.check());
        const double success = trials > 0 ? static_cast<double>(accepted) / trials : 1.0;
        report.checks.push_back({"success_fraction", success >= 0.5, fmt(success)});
        const double claim_rate = expander_runs > 0 ? static_cast<double>(claim_failures) / expander_runs : 0.0;
        report.checks.push_back({"path_congestion", claim_rate <= 0.1, fmt(claim_rate) + " of " + std::to_string(expander_runs)});
        report.stats.emplace_back("c_hat_measured", fmt(cal.c_hat_measured));
        report.stats.emplace_back("c_hat", fmt(config.c_hat));
        report.stats.emplace_back("C_hat", fmt(config.C_hat));
        report.stats.emplace_back("C_hat_derived", fmt(cal.C_hat_derived));
        report.stats.emplace_back("delta_hat", fmt(config.delta_hat));
        report.stats.emplace_back("delta_min", fmt(cal.delta_min));
        report.stats.emplace_back("success_fraction", fmt(success));
        return report;
    }

    namespace
    {
        auto stages_agree(const CnfFormula & f, std::uint64_t seed, const RunConfig & config, Tally & agree,
            Tally & bound, const std::string & ctx) -> bool
        {
            const bool sat = solve_sat_bruteforce(f, config.caps).yes;
            const auto r = pipeline::sat_to_dcmc(f, seed, config.pipeline_options());
            const bool g = solve_csp_bruteforce(r.incidence.csp, config.caps).yes;
            const bool h = solve_csp_bruteforce(r.routed.csp, config.caps).yes;
            const bool p = solve_psi_bruteforce(r.psi.instance, config.caps).yes;
            const bool d = solve_dual_bruteforce(r.reduction.instance, config.caps).yes;
            agree.record(sat == g && g == h && h == p && p == d, ctx);
            double cap = std::pow(3.0, r.embedding.depth());
            bool within = true;
            for (int w = 0; w < r.routed.csp.variable_count(); ++w)
                within = within && static_cast<double>(r.routed.product_size(w)) <= cap;
            bound.record(within, ctx);
            return sat;
        }
    }

    auto verify_pipeline(const RunConfig & config, int trials) -> SuiteReport
    {
        SuiteReport report{"pipeline", {}, {}};
        Tally agree{"stage_agreement"}, bound{"domain_bound"};
        int formulas = 0, yes = 0;
        for (int vars = 1; vars <= 2; ++vars)
            for (int clauses = 0; clauses <= 2; ++clauses)
                generators::for_each_cnf(vars, clauses, [&](const CnfFormula & f) {
                    yes += stages_agree(f, config.seed, config, agree, bound, "exhaustive #" + std::to_string(formulas));
                    ++formulas;
                });
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(config.seed, 0x5a7, static_cast<std::uint64_t>(t)));
            const int vars = 1 + static_cast<int>(rng.below(5));
            const int clauses = static_cast<int>(rng.below(static_cast<std::uint64_t>(9 - vars)));
            const auto f = generators::random_cnf(vars, clauses, rng);
            yes += stages_agree(f, derive_seed(config.seed, 0x5a8, static_cast<std::uint64_t>(t)), config, agree, bound,
                "random #" + std::to_string(t));
            ++formulas;
        }
        report.checks.push_back(agree.check());
        report.checks.push_back(bound.check());
        report.stats.emplace_back("formulas", std::to_string(formulas));
        report.stats.emplace_back("satisfiable", std::to_string(yes));
        return report;
    }
}
