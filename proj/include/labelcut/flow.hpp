#pragma once

#include <labelcut/graph.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace labelcut::embedding
{
    struct WeightedPath
    {
        std::vector<int> vertices;
        double weight = 0.0;
    };

    enum class FlowMethod
    {
        exact,
        iterative
    };

    auto to_string(FlowMethod m) -> std::string;

    struct FlowOptions
    {
        /// Largest ell solved exactly with the simplex; above it the iterative method runs.
        int exact_cap = 16;
        double lp_tolerance = 1e-6;
        /// Relative optimality gap the iterative method must certify.
        double epsilon = 0.05;
        int max_iterations = 20000;
    };

    /// Concurrent flow routing one unit between every ordered pair (u, v) of H,
    /// including the trivial path for u == v. Congestion counts every path that
    /// touches a vertex, endpoints included.
    struct ConcurrentFlow
    {
        int vertex_count = 0;
        /// paths[u * vertex_count + v]; weights sum to 1.
        std::vector<std::vector<WeightedPath>> paths;
        std::vector<double> load;
        double congestion = 0.0;
        /// Certified lower bound on the optimal congestion.
        double lower_bound = 0.0;
        FlowMethod method = FlowMethod::exact;
        int iterations = 0;

        auto between(int u, int v) const -> const std::vector<WeightedPath> &
        {
            return paths[static_cast<std::size_t>(u) * vertex_count + v];
        }
    };

    /// Min-congestion concurrent flow on a connected graph.
    auto min_congestion_flow(const Graph & h, const FlowOptions & options = {}) -> ConcurrentFlow;

    /// Recomputes per-vertex load from the stored paths.
    auto recompute_load(ConcurrentFlow & flow) -> void;

    /// Draws a path of f_{u,v} with probability equal to its weight, given
    /// uniform r in [0, 1).
    auto sample_path(const ConcurrentFlow & flow, int u, int v, double r) -> const std::vector<int> &;

    /// For every i and p independent draws of (Z, path of f_{i,Z}), counts how
    /// many sampled paths touch each vertex.
    auto sample_path_family(const ConcurrentFlow & flow, int p, std::uint64_t seed) -> std::vector<int>;
}
