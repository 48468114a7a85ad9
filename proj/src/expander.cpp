#include <labelcut/errors.hpp>
#include <labelcut/expander.hpp>
#include <labelcut/rng.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <optional>

namespace labelcut::embedding
{
    auto to_string(CertificateMethod m) -> std::string
    {
        switch (m) {
            case CertificateMethod::vacuous: return "vacuous";
            case CertificateMethod::exhaustive: return "exhaustive";
            case CertificateMethod::spectral: return "spectral";
        }
        return "?";
    }

    namespace
    {
        auto configuration_model(int ell, Rng & rng) -> std::optional<Graph>
        {
            std::vector<int> stubs;
            for (int v = 0; v < ell; ++v) {
                int d = (ell % 2 == 1 && v == ell - 1) ? 2 : 3;
                for (int i = 0; i < d; ++i)
                    stubs.push_back(v);
            }
            for (std::size_t i = stubs.size(); i > 1; --i)
                std::swap(stubs[i - 1], stubs[rng.below(i)]);
            Graph g{ell, {}};
            for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
                if (stubs[i] == stubs[i + 1])
                    return std::nullopt;
                g.edges.push_back(make_edge(stubs[i], stubs[i + 1]));
            }
            auto count = g.edges.size();
            canonicalize_edges(g.edges);
            if (g.edges.size() != count)
                return std::nullopt;
            return g;
        }

        auto cycle_with_chords(int ell) -> Graph
        {
            Graph g{ell, {}};
            for (int v = 0; v < ell; ++v)
                g.edges.push_back(make_edge(v, (v + 1) % ell));
            const int half = ell / 2;
            for (int v = 0; v < half; ++v)
                g.edges.push_back(make_edge(v, v + half));
            g.normalize();
            return g;
        }

        auto certify(const Graph & g, const ExpanderOptions & options, ExpanderCertificate & cert) -> bool
        {
            if (g.vertex_count <= options.exhaustive_cap) {
                cert.method = CertificateMethod::exhaustive;
                cert.delta_exact = edge_expansion_exhaustive(g);
                cert.delta_hat = boost::rational_cast<double>(cert.delta_exact);
            }
            else {
                cert.method = CertificateMethod::spectral;
                cert.delta_hat = spectral_expansion_bound(g);
            }
            return cert.delta_hat >= options.delta_target;
        }
    }

    auto build_expander(int ell, const ExpanderOptions & options) -> ExpanderCertificate
    {
        if (ell < 1)
            throw InvalidInstance("expander needs ell >= 1");
        ExpanderCertificate cert;
        if (ell == 1) {
            cert.graph = Graph{1, {}};
            cert.method = CertificateMethod::vacuous;
            cert.delta_hat = options.delta_target;
            cert.attempts = 1;
            return cert;
        }
        if (ell <= 3) {
            cert.graph = Graph{ell, {}};
            for (int u = 0; u < ell; ++u)
                for (int v = u + 1; v < ell; ++v)
                    cert.graph.edges.push_back(Edge{u, v});
            cert.attempts = 1;
            if (! certify(cert.graph, options, cert))
                throw ExpansionTargetUnmet("complete graph on " + std::to_string(ell) + " vertices misses the target");
            return cert;
        }

        for (int attempt = 0; attempt < options.max_retries; ++attempt) {
            Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(ell), static_cast<std::uint64_t>(attempt)));
            auto g = configuration_model(ell, rng);
            cert.attempts = attempt + 1;
            if (! g || ! is_connected(g->vertex_count, g->edges))
                continue;
            if (certify(*g, options, cert)) {
                cert.graph = std::move(*g);
                return cert;
            }
        }
        cert.graph = cycle_with_chords(ell);
        cert.used_fallback = true;
        if (! certify(cert.graph, options, cert))
            throw ExpansionTargetUnmet("no graph on " + std::to_string(ell) + " vertices certified expansion "
                + std::to_string(options.delta_target) + "; lower the target");
        return cert;
    }

    auto edge_expansion_exhaustive(const Graph & g) -> Rational
    {
        const int n = g.vertex_count;
        if (n > 30)
            throw CapExceeded("exhaustive expansion limited to 30 vertices");
        if (n < 2)
            return Rational(0);
        Rational best(std::numeric_limits<std::int64_t>::max());
        const std::uint64_t limit = std::uint64_t{1} << n;
        for (std::uint64_t mask = 1; mask < limit; ++mask) {
            int size = std::popcount(mask);
            if (2 * size > n)
                continue;
            int boundary = 0;
            for (const auto & e : g.edges)
                if (((mask >> e.u) & 1) != ((mask >> e.v) & 1))
                    ++boundary;
            Rational r(boundary, size);
            if (r < best)
                best = r;
        }
        return best;
    }

    auto spectral_expansion_bound(const Graph & g) -> double
    {
        const int n = g.vertex_count;
        if (n < 2)
            return 0.0;
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
        for (const auto & e : g.edges) {
            lap(e.u, e.u) += 1;
            lap(e.v, e.v) += 1;
            lap(e.u, e.v) -= 1;
            lap(e.v, e.u) -= 1;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
        return std::max(0.0, solver.eigenvalues()(1)) / 2.0;
    }

    auto verify_sparsity(const Graph & g, std::span<const int> a, std::span<const int> b) -> Rational
    {
        const int n = g.vertex_count;
        std::vector<char> in_a(n, 0), in_b(n, 0);
        for (int v : a)
            in_a.at(v) = 1;
        for (int v : b)
            in_b.at(v) = 1;
        for (int v = 0; v < n; ++v)
            if (! in_a[v] && ! in_b[v])
                throw NotASeparation("vertex " + std::to_string(v) + " is in neither side");
        for (const auto & e : g.edges) {
            bool u_only_a = in_a[e.u] && ! in_b[e.u], u_only_b = in_b[e.u] && ! in_a[e.u];
            bool v_only_a = in_a[e.v] && ! in_b[e.v], v_only_b = in_b[e.v] && ! in_a[e.v];
            if ((u_only_a && v_only_b) || (u_only_b && v_only_a))
                throw NotASeparation("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " crosses the separation");
        }
        std::int64_t size_a = std::count(in_a.begin(), in_a.end(), 1);
        std::int64_t size_b = std::count(in_b.begin(), in_b.end(), 1);
        if (size_a == 0 || size_b == 0)
            throw NotASeparation("both sides must meet W");
        std::int64_t both = 0;
        for (int v = 0; v < n; ++v)
            both += in_a[v] && in_b[v];
        return Rational(both, size_a * size_b);
    }

    auto min_sparsity_exhaustive(const Graph & g, int cap) -> Rational
    {
        // A separation is fixed by X = A\B and Y = B\A with Y outside N[X]; for
        // a given X only |Y| matters, so scan X and every feasible |Y|.
        const std::int64_t n = g.vertex_count;
        if (n > cap)
            throw CapExceeded("min_sparsity_exhaustive limited to " + std::to_string(cap) + " vertices");
        if (n < 1)
            throw InvalidInstance("sparsity of an empty graph");
        std::vector<std::uint64_t> closed(n);
        for (int v = 0; v < n; ++v)
            closed[v] = std::uint64_t{1} << v;
        for (const auto & e : g.edges) {
            closed[e.u] |= std::uint64_t{1} << e.v;
            closed[e.v] |= std::uint64_t{1} << e.u;
        }
        Rational best(1, 1);
        bool found = false;
        const std::uint64_t limit = std::uint64_t{1} << n;
        for (std::uint64_t x_mask = 0; x_mask < limit; ++x_mask) {
            std::uint64_t nbhd = 0;
            for (int v = 0; v < n; ++v)
                if ((x_mask >> v) & 1)
                    nbhd |= closed[v];
            std::int64_t x = std::popcount(x_mask);
            std::int64_t free_count = n - std::popcount(nbhd | x_mask);
            for (std::int64_t y = 0; y <= free_count; ++y) {
                std::int64_t s = n - x - y;
                if (x + s == 0 || y + s == 0)
                    continue;
                Rational r(s, (x + s) * (y + s));
                if (! found || r < best) {
                    best = r;
                    found = true;
                }
            }
        }
        return best;
    }

    auto sparsity_floor(const Rational & delta, int ell) -> Rational
    {
        return delta / (Rational(3) + delta) / Rational(ell);
    }
}
