#include <labelcut/lp.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace labelcut::lp
{
    auto LinearProgram::add_variable(double cost) -> int
    {
        objective.push_back(cost);
        return variables++;
    }

    auto LinearProgram::add_row(std::vector<std::pair<int, double>> terms, Sense sense, double rhs) -> void
    {
        rows.push_back(Row{std::move(terms), sense, rhs});
    }

    namespace
    {
        class Tableau
        {
        public:
            Tableau(std::size_t rows, std::size_t cols) :
                rows_(rows), cols_(cols), width_(cols + 1), data_(rows * (cols + 1), 0.0)
            {
            }

            auto at(std::size_t r, std::size_t c) -> double & { return data_[r * width_ + c]; }
            auto rhs(std::size_t r) -> double & { return data_[r * width_ + cols_]; }
            auto row(std::size_t r) -> double * { return data_.data() + r * width_; }
            auto rows() const { return rows_; }
            auto cols() const { return cols_; }

        private:
            std::size_t rows_, cols_, width_;
            std::vector<double> data_;
        };

        struct Engine
        {
            Tableau tab;
            std::vector<double> cost;    // reduced costs, last entry is -objective
            std::vector<int> basis;
            std::vector<char> allowed;   // columns that may enter
            const SimplexOptions & options;
            std::size_t pivots = 0;
            std::vector<std::size_t> nonzero;

            auto pivot(std::size_t r, std::size_t c) -> void
            {
                double * pr = tab.row(r);
                const double inv = 1.0 / pr[c];
                nonzero.clear();
                for (std::size_t j = 0; j <= tab.cols(); ++j) {
                    if (pr[j] != 0.0) {
                        pr[j] *= inv;
                        if (std::abs(pr[j]) < 1e-14)
                            pr[j] = 0.0;
                        else
                            nonzero.push_back(j);
                    }
                }
                pr[c] = 1.0;
                for (std::size_t i = 0; i < tab.rows(); ++i) {
                    if (i == r)
                        continue;
                    double * pi = tab.row(i);
                    const double f = pi[c];
                    if (f == 0.0)
                        continue;
                    for (std::size_t j : nonzero) {
                        pi[j] -= f * pr[j];
                        if (std::abs(pi[j]) < 1e-14)
                            pi[j] = 0.0;
                    }
                    pi[c] = 0.0;
                }
                const double f = cost[c];
                if (f != 0.0) {
                    for (std::size_t j : nonzero)
                        cost[j] -= f * pr[j];
                    cost[c] = 0.0;
                }
                basis[r] = static_cast<int>(c);
                ++pivots;
            }

            auto run() -> Status
            {
                const double tol = options.tolerance;
                std::size_t degenerate = 0;
                while (true) {
                    if (pivots >= options.max_pivots)
                        return Status::iteration_limit;
                    const bool bland = degenerate >= options.degenerate_switch;
                    std::size_t enter = tab.cols();
                    double best = -tol;
                    for (std::size_t j = 0; j < tab.cols(); ++j) {
                        if (! allowed[j] || cost[j] >= -tol)
                            continue;
                        if (bland) {
                            enter = j;
                            break;
                        }
                        if (cost[j] < best) {
                            best = cost[j];
                            enter = j;
                        }
                    }
                    if (enter == tab.cols())
                        return Status::optimal;

                    std::size_t leave = tab.rows();
                    double ratio = std::numeric_limits<double>::infinity();
                    for (std::size_t i = 0; i < tab.rows(); ++i) {
                        double a = tab.at(i, enter);
                        if (a <= tol)
                            continue;
                        double q = std::max(tab.rhs(i), 0.0) / a;
                        if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && leave < tab.rows() && basis[i] < basis[leave])) {
                            ratio = q;
                            leave = i;
                        }
                    }
                    if (leave == tab.rows())
                        return Status::unbounded;
                    degenerate = ratio <= tol ? degenerate + 1 : 0;
                    pivot(leave, enter);
                }
            }
        };
    }

    auto solve(const LinearProgram & program, const SimplexOptions & options) -> Solution
    {
        const std::size_t m = program.rows.size();
        const std::size_t n = static_cast<std::size_t>(program.variables);

        // Columns: structural, one slack per inequality, one artificial per row
        // that has no usable slack.
        std::size_t slack_count = 0;
        for (const auto & row : program.rows)
            if (row.sense != Sense::equal)
                ++slack_count;

        std::vector<int> slack_of(m, -1);
        std::vector<double> sign(m, 1.0);
        std::vector<char> needs_artificial(m, 1);
        {
            std::size_t next = n;
            for (std::size_t i = 0; i < m; ++i) {
                const auto & row = program.rows[i];
                if (row.rhs < 0)
                    sign[i] = -1.0;
                if (row.sense != Sense::equal) {
                    slack_of[i] = static_cast<int>(next++);
                    double slack_coeff = row.sense == Sense::less_equal ? 1.0 : -1.0;
                    if (slack_coeff * sign[i] > 0)
                        needs_artificial[i] = 0;
                }
            }
        }
        std::size_t artificial_count = std::count(needs_artificial.begin(), needs_artificial.end(), 1);
        const std::size_t cols = n + slack_count + artificial_count;

        Engine eng{Tableau(m, cols), std::vector<double>(cols + 1, 0.0), std::vector<int>(m, -1),
            std::vector<char>(cols, 1), options, 0, {}};
        std::size_t next_art = n + slack_count;
        for (std::size_t i = 0; i < m; ++i) {
            const auto & row = program.rows[i];
            for (const auto & [j, a] : row.terms)
                eng.tab.at(i, j) += sign[i] * a;
            if (slack_of[i] >= 0)
                eng.tab.at(i, slack_of[i]) = sign[i] * (row.sense == Sense::less_equal ? 1.0 : -1.0);
            eng.tab.rhs(i) = sign[i] * row.rhs;
            if (needs_artificial[i]) {
                eng.tab.at(i, next_art) = 1.0;
                eng.basis[i] = static_cast<int>(next_art++);
            }
            else
                eng.basis[i] = slack_of[i];
        }

        Solution result;
        // Phase one: minimize the sum of artificials.
        if (artificial_count > 0) {
            for (std::size_t i = 0; i < m; ++i)
                if (needs_artificial[i])
                    for (std::size_t j = 0; j <= cols; ++j)
                        if (j < n + slack_count || j == cols)
                            eng.cost[j] -= eng.tab.row(i)[j];
            auto status = eng.run();
            if (status == Status::iteration_limit) {
                result.status = status;
                result.pivots = eng.pivots;
                return result;
            }
            if (-eng.cost[cols] > 1e-7 * std::max<double>(1.0, static_cast<double>(m))) {
                result.status = Status::infeasible;
                result.pivots = eng.pivots;
                return result;
            }
            // Drive zero-level artificials out of the basis where possible.
            for (std::size_t i = 0; i < m; ++i) {
                if (static_cast<std::size_t>(eng.basis[i]) < n + slack_count)
                    continue;
                for (std::size_t j = 0; j < n + slack_count; ++j)
                    if (std::abs(eng.tab.at(i, j)) > 1e-9) {
                        eng.pivot(i, j);
                        break;
                    }
            }
            for (std::size_t j = n + slack_count; j < cols; ++j)
                eng.allowed[j] = 0;
        }

        // Phase two: price out the real objective against the current basis.
        std::fill(eng.cost.begin(), eng.cost.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            eng.cost[j] = program.objective[j];
        for (std::size_t i = 0; i < m; ++i) {
            auto b = static_cast<std::size_t>(eng.basis[i]);
            double cb = b < n ? program.objective[b] : 0.0;
            if (cb == 0.0)
                continue;
            const double * row = eng.tab.row(i);
            for (std::size_t j = 0; j <= cols; ++j)
                if (row[j] != 0.0)
                    eng.cost[j] -= cb * row[j];
        }
        auto status = eng.run();
        result.status = status;
        result.pivots = eng.pivots;
        if (status != Status::optimal)
            return result;
        result.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (static_cast<std::size_t>(eng.basis[i]) < n)
                result.x[eng.basis[i]] = std::max(0.0, eng.tab.rhs(i));
        result.objective = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            result.objective += program.objective[j] * result.x[j];
        return result;
    }
}
