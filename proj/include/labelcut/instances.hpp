#pragma once

#include <labelcut/graph.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace labelcut
{
    /// Enumeration limits for the brute-force oracles. Exceeding one raises
    /// CapExceeded instead of silently truncating the search.
    struct Caps
    {
        int cmc_vertices = 24;
        std::uint64_t dual_combinations = 1'000'000;
        std::uint64_t psi_assignments = 1'000'000;
        std::uint64_t csp_product = 10'000'000;
        int sat_variables = 20;
    };

    struct ColoredEdge
    {
        int u = 0;
        int v = 0;
        int color = 1;

        auto operator<=> (const ColoredEdge &) const = default;
    };

    /// Colored Min-Cut instance. Colors are 1-based, vertices 0-based.
    struct ColoredMultigraph
    {
        int vertex_count = 0;
        int colors = 0;
        int budget = 0;
        std::vector<ColoredEdge> edges;

        auto operator== (const ColoredMultigraph &) const -> bool = default;

        /// Orients edges u < v, sorts and drops exact duplicates, then checks
        /// every invariant (no self-loops, colors in range and all used,
        /// 0 <= budget <= colors).
        auto canonicalize() -> void;
    };

    /// Dual Colored Min-Cut: pick `budget` of the color graphs so that their
    /// union leaves the fixed vertex set disconnected. A budget above the
    /// number of graphs is allowed and makes the answer no; reductions from
    /// hosts with fewer edges than the pattern produce such instances.
    struct DualCmcInstance
    {
        int vertex_count = 0;
        int budget = 0;
        std::vector<std::vector<Edge>> color_graphs;

        auto operator== (const DualCmcInstance &) const -> bool = default;

        auto colors() const -> int { return static_cast<int>(color_graphs.size()); }
        auto canonicalize() -> void;
    };

    /// Partitioned Subgraph Isomorphism. Block x holds the host vertices
    /// x*block_size .. x*block_size + block_size - 1 after canonicalize().
    struct PsiInstance
    {
        Graph pattern;
        Graph host;
        std::vector<std::vector<int>> blocks;
        int block_size = 0;

        auto operator== (const PsiInstance &) const -> bool = default;

        auto validate() const -> void;
        /// Pattern vertex owning each host vertex.
        auto block_of() const -> std::vector<int>;
    };

    using Token = int;
    using TokenPair = std::pair<Token, Token>;

    /// Binary CSP with explicit relations. At most one relation is kept per
    /// unordered variable pair; adding another one intersects them.
    class BinaryCsp
    {
    public:
        struct Constraint
        {
            int first = 0;
            int second = 0;
            /// Sorted, unique; components drawn from the domains of first/second.
            std::vector<TokenPair> allowed;

            auto operator== (const Constraint &) const -> bool = default;
        };

        auto operator== (const BinaryCsp &) const -> bool = default;

        auto add_variable(std::vector<Token> domain) -> int;
        auto variable_count() const -> int { return static_cast<int>(domains_.size()); }
        auto domain(int var) const -> const std::vector<Token> & { return domains_.at(var); }

        /// Pairs are read as (value of a, value of b). Throws InvalidInstance
        /// when a pair leaves the current domains or a == b.
        auto add_constraint(int a, int b, std::vector<TokenPair> allowed) -> void;

        /// Keeps only the listed tokens and re-projects every relation on var.
        auto restrict_domain(int var, std::span<const Token> keep) -> void;

        auto constraints() const -> const std::map<std::pair<int, int>, Constraint> & { return constraints_; }
        auto find_constraint(int a, int b) const -> const Constraint *;

        /// Graph whose edges are the constrained variable pairs.
        auto constraint_graph() const -> Graph;

        auto satisfied_by(std::span<const Token> valuation) const -> bool;

    private:
        std::vector<std::vector<Token>> domains_;
        std::map<std::pair<int, int>, Constraint> constraints_;
    };

    /// DIMACS-style CNF; literals are signed 1-based variable ids.
    struct CnfFormula
    {
        int variable_count = 0;
        std::vector<std::vector<int>> clauses;

        auto operator== (const CnfFormula &) const -> bool = default;

        /// Throws MalformedClause on an empty clause, more than three literals,
        /// an out-of-range literal, or a repeated/contradictory literal.
        auto validate() const -> void;
    };

    struct CmcSolution
    {
        bool yes = false;
        /// Minimum |c(boundary(S))| over nonempty proper S; empty for one vertex.
        std::optional<int> min_colors;
        /// Minimizing side S (contains vertex 0), present whenever min_colors is.
        std::vector<int> side;
    };

    struct DualSolution
    {
        bool yes = false;
        /// Selected color indices, 1-based, ascending.
        std::vector<int> selection;
    };

    struct PsiSolution
    {
        bool yes = false;
        /// Host vertex chosen for each pattern vertex.
        std::vector<int> choice;
    };

    struct CspSolution
    {
        bool yes = false;
        std::vector<Token> valuation;
    };

    struct SatSolution
    {
        bool yes = false;
        /// assignment[i] is the value of variable i + 1.
        std::vector<bool> assignment;
    };

    /// Colors appearing on the edges that cross (side, rest).
    auto cut_colors(const ColoredMultigraph & g, std::span<const int> side) -> int;

    auto solve_cmc_bruteforce(const ColoredMultigraph & g, const Caps & caps = {}) -> CmcSolution;
    auto solve_dual_bruteforce(const DualCmcInstance & d, const Caps & caps = {}) -> DualSolution;
    auto solve_psi_bruteforce(const PsiInstance & inst, const Caps & caps = {}) -> PsiSolution;
    auto solve_csp_bruteforce(const BinaryCsp & csp, const Caps & caps = {}) -> CspSolution;
    auto solve_sat_bruteforce(const CnfFormula & f, const Caps & caps = {}) -> SatSolution;

    /// True iff the union of the selected (1-based) color graphs is disconnected.
    auto selection_disconnects(const DualCmcInstance & d, std::span<const int> selection) -> bool;
    auto psi_choice_valid(const PsiInstance & inst, std::span<const int> choice) -> bool;
    auto assignment_satisfies(const CnfFormula & f, const std::vector<bool> & assignment) -> bool;

    /// Binomial coefficient saturating at UINT64_MAX.
    auto binomial(std::uint64_t n, std::uint64_t k) -> std::uint64_t;

    auto cmc_to_dual(const ColoredMultigraph & g) -> DualCmcInstance;
    /// Throws InvalidInstance when a color graph is empty, since the CMC side
    /// requires every color to be used.
    auto dual_to_cmc(const DualCmcInstance & d) -> ColoredMultigraph;
}
