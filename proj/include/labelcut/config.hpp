#pragma once

#include <labelcut/embedding.hpp>
#include <labelcut/instances.hpp>
#include <labelcut/pipeline.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace labelcut
{
    /// Environment variable naming an optional key=value config file.
    inline constexpr const char * config_environment_variable = "LABELCUT_CONFIG";

    struct RunConfig
    {
        std::uint64_t seed = 1;
        Caps caps;
        /// Largest expander certified by enumerating subsets.
        int expander_cap = 16;
        /// Flow constant: congestion <= c_hat * ell * ln ell on every expander used.
        double c_hat = 2.2;
        /// Depth constant of the embedding audit, 120 c_hat + 6.
        double C_hat = 270.0;
        /// Edge expansion every expander must certify.
        double delta_hat = 0.1;
        int retries = 20;
        double lp_tolerance = 1e-6;
        double flow_epsilon = 0.05;
        int flow_exact_cap = 16;
        int small_k = 8;
        std::uint64_t max_w = 5'000'000;
        /// Embedding size for the SAT pipeline; 0 derives it from the formula.
        int pipeline_k = 0;
        std::uint64_t expander_seed = 0x5eed;

        /// Throws Error when a cap is not positive or a tolerance is out of (0, 0.1].
        auto validate() const -> void;

        /// Sets one field by name; throws Error on unknown keys or bad values.
        auto set(const std::string & key, const std::string & value) -> void;

        auto embed_options() const -> embedding::EmbedOptions;
        auto pipeline_options() const -> pipeline::PipelineOptions;
    };

    /// Applies `key = value` lines ('#' comments) on top of `base`.
    auto read_config(std::istream & in, RunConfig base = {}) -> RunConfig;

    auto write_config(std::ostream & out, const RunConfig & config) -> void;

    /// Defaults, overridden by the file named in LABELCUT_CONFIG when set.
    auto config_from_environment() -> RunConfig;
}
