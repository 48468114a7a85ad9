#pragma once

#include <labelcut/config.hpp>
#include <labelcut/expander.hpp>
#include <labelcut/flow.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace labelcut::verify
{
    struct Check
    {
        std::string name;
        bool passed = true;
        std::string detail;
    };

    struct SuiteReport
    {
        std::string suite;
        std::vector<Check> checks;
        std::vector<std::pair<std::string, std::string>> stats;

        auto passed() const -> bool;
        auto write(std::ostream & out) const -> void;
    };

    struct CalibrationRow
    {
        int ell = 0;
        embedding::CertificateMethod certificate = embedding::CertificateMethod::vacuous;
        double delta_hat = 0.0;
        embedding::FlowMethod flow_method = embedding::FlowMethod::exact;
        double congestion = 0.0;
        double lower_bound = 0.0;
        /// congestion / (ell ln ell)
        double ratio = 0.0;
    };

    struct Calibration
    {
        std::vector<CalibrationRow> rows;
        double c_hat_measured = 0.0;
        /// 120 c_hat_measured + 6
        double C_hat_derived = 0.0;
        double delta_min = 0.0;

        auto write(std::ostream & out) const -> void;
    };

    inline const std::vector<int> default_calibration_ells{2, 3, 4, 5, 8, 16, 32};

    /// Certifies the expander and solves the flow for each ell >= 2, using the
    /// same cached expanders the embedding uses.
    auto calibrate(const RunConfig & config, std::span<const int> ells = default_calibration_ells) -> Calibration;

    auto verify_duality(const RunConfig & config, int trials) -> SuiteReport;
    auto verify_gadgets(const RunConfig & config) -> SuiteReport;
    auto verify_embedding(const RunConfig & config, int trials) -> SuiteReport;
    auto verify_pipeline(const RunConfig & config, int trials) -> SuiteReport;
}
