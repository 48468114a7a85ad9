#pragma once

#include <labelcut/graph.hpp>

#include <boost/rational.hpp>

#include <cstdint>
#include <span>
#include <string>

namespace labelcut::embedding
{
    using Rational = boost::rational<std::int64_t>;

    enum class CertificateMethod
    {
        vacuous,
        exhaustive,
        spectral
    };

    auto to_string(CertificateMethod m) -> std::string;

    struct ExpanderOptions
    {
        /// Target edge expansion every produced graph must certify.
        double delta_target = 0.1;
        /// Largest ell certified by enumerating all subsets.
        int exhaustive_cap = 16;
        int max_retries = 200;
        std::uint64_t seed = 0x5eed;
    };

    struct ExpanderCertificate
    {
        Graph graph;
        CertificateMethod method = CertificateMethod::vacuous;
        /// Exact minimum edge expansion when method is exhaustive.
        Rational delta_exact{0};
        /// Certified lower bound on the edge expansion (exact value or lambda_2 / 2).
        double delta_hat = 0.0;
        int attempts = 0;
        bool used_fallback = false;
    };

    /// Simple graph on ell vertices with maximum degree 3, connected for
    /// ell >= 2, whose edge expansion is certified to reach delta_target.
    /// Random near-3-regular graphs (configuration model) are resampled until
    /// one certifies; a cycle with antipodal chords is the last resort.
    auto build_expander(int ell, const ExpanderOptions & options = {}) -> ExpanderCertificate;

    /// min |boundary(S)| / |S| over nonempty S with |S| <= |V|/2, by enumeration.
    auto edge_expansion_exhaustive(const Graph & g) -> Rational;

    /// Cheeger lower bound lambda_2(L) / 2 on the edge expansion.
    auto spectral_expansion_bound(const Graph & g) -> double;

    /// |A n B| / (|A| |B|) for a separation (A, B) of g, with W = V(g).
    /// Throws NotASeparation when A u B != V or an edge joins A\B and B\A.
    auto verify_sparsity(const Graph & g, std::span<const int> a, std::span<const int> b) -> Rational;

    /// Exact minimum sparsity over all separations with both sides nonempty.
    auto min_sparsity_exhaustive(const Graph & g, int cap = 20) -> Rational;

    /// delta / (3 + delta) / ell: the sparsity floor of a delta-expander of max degree 3.
    auto sparsity_floor(const Rational & delta, int ell) -> Rational;
}
