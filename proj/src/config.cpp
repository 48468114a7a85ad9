#include <labelcut/config.hpp>
#include <labelcut/errors.hpp>
#include <labelcut/io.hpp>

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <ostream>

namespace labelcut
{
    namespace
    {
        template <typename T>
        auto parse_number(const std::string & key, const std::string & text) -> T
        {
            T value{};
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw Error("config key '" + key + "': cannot parse '" + text + "'");
            return value;
        }

        auto trim(std::string s) -> std::string
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }
    }

    auto RunConfig::validate() const -> void
    {
        auto positive = [](const char * name, auto value) {
            if (value <= 0)
                throw Error(std::string("config: ") + name + " must be positive");
        };
        positive("cap_cmc_vertices", caps.cmc_vertices);
        positive("cap_dual_combinations", caps.dual_combinations);
        positive("cap_psi_assignments", caps.psi_assignments);
        positive("cap_csp_product", caps.csp_product);
        positive("cap_sat_variables", caps.sat_variables);
        positive("cap_expander", expander_cap);
        positive("c_hat", c_hat);
        positive("C_hat", C_hat);
        positive("delta_hat", delta_hat);
        positive("retries", retries);
        positive("flow_exact_cap", flow_exact_cap);
        positive("small_k", small_k);
        positive("max_w", max_w);
        for (auto [name, tol] : {std::pair{"lp_tolerance", lp_tolerance}, std::pair{"flow_epsilon", flow_epsilon}})
            if (! (tol > 0.0 && tol <= 0.1))
                throw Error(std::string("config: ") + name + " must lie in (0, 0.1]");
        if (pipeline_k < 0)
            throw Error("config: pipeline_k must be 0 or at least 2");
        if (pipeline_k == 1)
            throw Error("config: pipeline_k must be 0 or at least 2");
    }

    auto RunConfig::set(const std::string & key, const std::string & value) -> void
    {
        if (key == "seed")
            seed = parse_number<std::uint64_t>(key, value);
        else if (key == "cap_cmc_vertices")
            caps.cmc_vertices = parse_number<int>(key, value);
        else if (key == "cap_dual_combinations")
            caps.dual_combinations = parse_number<std::uint64_t>(key, value);
        else if (key == "cap_psi_assignments")
            caps.psi_assignments = parse_number<std::uint64_t>(key, value);
        else if (key == "cap_csp_product")
            caps.csp_product = parse_number<std::uint64_t>(key, value);
        else if (key == "cap_sat_variables")
            caps.sat_variables = parse_number<int>(key, value);
        else if (key == "cap_expander")
            expander_cap = parse_number<int>(key, value);
        else if (key == "c_hat")
            c_hat = parse_number<double>(key, value);
        else if (key == "C_hat")
            C_hat = parse_number<double>(key, value);
        else if (key == "delta_hat")
            delta_hat = parse_number<double>(key, value);
        else if (key == "retries")
            retries = parse_number<int>(key, value);
        else if (key == "lp_tolerance")
            lp_tolerance = parse_number<double>(key, value);
        else if (key == "flow_epsilon")
            flow_epsilon = parse_number<double>(key, value);
        else if (key == "flow_exact_cap")
            flow_exact_cap = parse_number<int>(key, value);
        else if (key == "small_k")
            small_k = parse_number<int>(key, value);
        else if (key == "max_w")
            max_w = parse_number<std::uint64_t>(key, value);
        else if (key == "pipeline_k")
            pipeline_k = parse_number<int>(key, value);
        else if (key == "expander_seed")
            expander_seed = parse_number<std::uint64_t>(key, value);
        else
            throw Error("config: unknown key '" + key + "'");
    }

    auto RunConfig::embed_options() const -> embedding::EmbedOptions
    {
        embedding::EmbedOptions o;
        o.C_hat = C_hat;
        o.small_k_threshold = small_k;
        o.retries = retries;
        o.expander.delta_target = delta_hat;
        o.expander.exhaustive_cap = expander_cap;
        o.expander.seed = expander_seed;
        o.flow.exact_cap = flow_exact_cap;
        o.flow.lp_tolerance = lp_tolerance;
        o.flow.epsilon = flow_epsilon;
        return o;
    }

    auto RunConfig::pipeline_options() const -> pipeline::PipelineOptions
    {
        pipeline::PipelineOptions o;
        o.embed = embed_options();
        o.reduce.max_w = max_w;
        o.caps = caps;
        o.k = pipeline_k;
        return o;
    }

    auto read_config(std::istream & in, RunConfig base) -> RunConfig
    {
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            raw = trim(raw);
            if (raw.empty())
                continue;
            const auto eq = raw.find('=');
            if (eq == std::string::npos)
                throw ParseError(number, "expected key = value");
            try {
                base.set(trim(raw.substr(0, eq)), trim(raw.substr(eq + 1)));
            }
            catch (const ParseError &) {
                throw;
            }
            catch (const Error & e) {
                throw ParseError(number, e.what());
            }
        }
        base.validate();
        return base;
    }

    auto write_config(std::ostream & out, const RunConfig & c) -> void
    {
        const auto flags = out.flags();
        const auto precision = out.precision();
        out << std::setprecision(17);
        out << "seed=" << c.seed << '\n'
            << "cap_cmc_vertices=" << c.caps.cmc_vertices << '\n'
            << "cap_dual_combinations=" << c.caps.dual_combinations << '\n'
            << "cap_psi_assignments=" << c.caps.psi_assignments << '\n'
            << "cap_csp_product=" << c.caps.csp_product << '\n'
            << "cap_sat_variables=" << c.caps.sat_variables << '\n'
            << "cap_expander=" << c.expander_cap << '\n'
            << "c_hat=" << c.c_hat << '\n'
            << "C_hat=" << c.C_hat << '\n'
            << "delta_hat=" << c.delta_hat << '\n'
            << "retries=" << c.retries << '\n'
            << "lp_tolerance=" << c.lp_tolerance << '\n'
            << "flow_epsilon=" << c.flow_epsilon << '\n'
            << "flow_exact_cap=" << c.flow_exact_cap << '\n'
            << "small_k=" << c.small_k << '\n'
            << "max_w=" << c.max_w << '\n'
            << "pipeline_k=" << c.pipeline_k << '\n'
            << "expander_seed=" << c.expander_seed << '\n';
        out.flags(flags);
        out.precision(precision);
    }

    auto config_from_environment() -> RunConfig
    {
        const char * path = std::getenv(config_environment_variable);
        if (path == nullptr || *path == '\0')
            return RunConfig{};
        return io::read_file(path, [](std::istream & in) { return read_config(in); });
    }
}
