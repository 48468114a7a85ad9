#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace labelcut::lp
{
    enum class Sense
    {
        less_equal,
        equal,
        greater_equal
    };

    /// minimize objective . x  subject to rows, x >= 0.
    struct LinearProgram
    {
        struct Row
        {
            std::vector<std::pair<int, double>> terms;
            Sense sense = Sense::equal;
            double rhs = 0.0;
        };

        int variables = 0;
        std::vector<double> objective;
        std::vector<Row> rows;

        auto add_variable(double cost) -> int;
        auto add_row(std::vector<std::pair<int, double>> terms, Sense sense, double rhs) -> void;
    };

    enum class Status
    {
        optimal,
        infeasible,
        unbounded,
        iteration_limit
    };

    struct SimplexOptions
    {
        double tolerance = 1e-9;
        std::size_t max_pivots = 2'000'000;
        /// Degenerate pivots in a row before switching to Bland's rule.
        std::size_t degenerate_switch = 50;
    };

    struct Solution
    {
        Status status = Status::infeasible;
        double objective = 0.0;
        std::vector<double> x;
        std::size_t pivots = 0;
    };

    /// Dense two-phase primal simplex on a full tableau.
    auto solve(const LinearProgram & program, const SimplexOptions & options = {}) -> Solution;
}
