#pragma once

#include <labelcut/embedding.hpp>
#include <labelcut/gadgets.hpp>
#include <labelcut/instances.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace labelcut::pipeline
{
    /// Token values used on variable vertices.
    constexpr Token false_token = 0;
    constexpr Token true_token = 1;

    /// The formula as a CSP on its incidence graph: vertex i < N is variable
    /// i + 1, vertex N + j is clause j. A clause vertex picks which of its
    /// literals (1-based) is responsible for satisfying it.
    struct IncidenceCsp
    {
        BinaryCsp csp;
        Graph graph;
        int variable_count = 0;
        int clause_count = 0;
    };

    auto sat_to_csp_g(const CnfFormula & f) -> IncidenceCsp;

    /// psi_H over the host of an embedding. Domain tokens of host vertex w
    /// are mixed-radix indices into the product of the domains of coords[w].
    struct RoutedCsp
    {
        BinaryCsp csp;
        /// Sorted base variables mapped onto each host vertex.
        std::vector<std::vector<int>> coords;
        /// radix[w][j]: domain size of coords[w][j].
        std::vector<std::vector<int>> radix;

        /// Base value of coordinate j of `token` at host vertex w.
        auto component(const BinaryCsp & base, int w, std::size_t j, Token token) const -> Token;
        /// Size of the unrestricted product domain at w.
        auto product_size(int w) const -> std::uint64_t;
    };

    /// Builds psi_H: product domains, vertex-touching restrictions, then
    /// consistency and edge-touching relations. Throws InvalidEmbedding when
    /// the embedding does not fit the constraint graph of `base`.
    auto route_csp(const BinaryCsp & base, const embedding::Embedding & e, const Caps & caps = {}) -> RoutedCsp;

    struct PsiConversion
    {
        PsiInstance instance;
        /// Token behind each host vertex of the PSI instance; -1 for padding.
        std::vector<Token> token_of;
        bool connectivized = false;
    };

    /// Blocks are the domains of psi_H padded with dummies to a common size;
    /// host edges join compatible values across host-graph edges.
    auto csp_to_psi(const BinaryCsp & routed, const Graph & host) -> PsiConversion;

    struct PipelineOptions
    {
        embedding::EmbedOptions embed;
        gadgets::ReduceOptions reduce;
        Caps caps;
        /// Embedding size parameter; 0 derives max(2, ceil(sqrt(N + M))).
        int k = 0;
    };

    struct PipelineResult
    {
        IncidenceCsp incidence;
        int k = 0;
        embedding::Embedding embedding;
        RoutedCsp routed;
        PsiConversion psi;
        gadgets::Reduction reduction;

        /// Stable key=value report of every intermediate size.
        auto report() const -> std::vector<std::pair<std::string, std::string>>;
    };

    /// max(2, ceil(sqrt(size))).
    auto default_k(int size) -> int;
    auto default_k(const CnfFormula & f) -> int;

    auto sat_to_dcmc(const CnfFormula & f, std::uint64_t seed, const PipelineOptions & options = {}) -> PipelineResult;

    auto write_report(std::ostream & out, const std::vector<std::pair<std::string, std::string>> & report) -> void;
}
