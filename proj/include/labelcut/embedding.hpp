#pragma once

#include <labelcut/expander.hpp>
#include <labelcut/flow.hpp>
#include <labelcut/graph.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace labelcut::embedding
{
    enum class EmbedMode
    {
        single_vertex,
        direct,
        expander
    };

    auto to_string(EmbedMode m) -> std::string;

    /// The graph after splitting every vertex of degree > 3 into a cycle.
    /// origin[v'] is the input vertex that v' stands for.
    struct DegreeReduction
    {
        Graph graph;
        std::vector<int> origin;
    };

    /// Replaces each vertex v with deg(v) > 3 by a cycle on deg(v) vertices and
    /// hands its incident edges (in canonical order) to the cycle vertices in turn.
    auto reduce_degree(const Graph & g) -> DegreeReduction;

    /// Contracts each origin class; the result is a graph on the input vertices.
    auto contract(const DegreeReduction & reduction, int vertex_count) -> Graph;

    /// True iff every origin class is connected and the contraction contains g.
    auto is_minor_model(const Graph & g, const DegreeReduction & reduction) -> bool;

    struct SampledPath
    {
        int edge = 0;  // index into the reduced graph's edges
        int owner = 0; // reduced-graph vertex whose branch set takes the path
        int type = 1;  // 1: owner has the smaller bucket, 2: the larger
        std::vector<int> vertices;
    };

    struct ExpanderFlow
    {
        ExpanderCertificate certificate;
        ConcurrentFlow flow;
    };

    /// Everything the audit needs to re-derive member types.
    struct EmbeddingTrace
    {
        EmbedMode mode = EmbedMode::single_vertex;
        int ell = 1;
        DegreeReduction reduction;
        /// Bucket of every reduced-graph vertex.
        std::vector<int> zeta;
        /// Reduced-graph branch sets.
        std::vector<std::vector<int>> branch_sets;
        std::vector<SampledPath> paths;
        std::shared_ptr<const ExpanderFlow> expander;
    };

    struct Embedding
    {
        Graph host;
        /// Per input vertex, sorted host vertices.
        std::vector<std::vector<int>> branch_sets;
        std::vector<int> zeta;
        EmbeddingTrace trace;
        double depth_bound = 0.0;
        std::uint64_t seed = 0;

        auto loads() const -> std::vector<int>;
        auto depth() const -> int;
        /// False when the depth audit fails; such a run counts as Fail.
        auto accepted() const -> bool { return depth() <= depth_bound; }
    };

    struct EmbedOptions
    {
        double C_hat = 270.0;
        int small_k_threshold = 8;
        int retries = 20;
        ExpanderOptions expander;
        FlowOptions flow;
    };

    /// C_hat (1 + (n + m) / k) ln k.
    auto depth_bound(const Graph & g, int k, double C_hat) -> double;

    /// Certified expander and its concurrent flow for ell, computed once per
    /// (ell, options) and shared between calls.
    auto expander_flow(int ell, const EmbedOptions & options) -> std::shared_ptr<const ExpanderFlow>;

    /// One randomized run. The result is always a valid embedding; check
    /// accepted() to see whether the run meets the depth bound.
    auto embed_once(const Graph & g, int k, std::uint64_t seed, const EmbedOptions & options = {}) -> Embedding;

    /// Retries embed_once with derived seeds until a run is accepted.
    /// Throws EmbeddingFailed after options.retries rejected runs.
    auto embed(const Graph & g, int k, std::uint64_t seed, const EmbedOptions & options = {}) -> Embedding;

    /// Throws InvalidEmbedding unless every branch set is nonempty and
    /// connected in the host and every edge of g has touching branch sets.
    auto validate_embedding(const Graph & g, const Embedding & e) -> void;

    struct VertexAudit
    {
        int type0 = 0;
        int type1 = 0;
        int type2 = 0;
        int depth = 0;
    };

    struct AuditReport
    {
        std::vector<VertexAudit> vertices;
        double p = 0.0;
        /// 10 c_hat p ln ell; zero for embeddings without sampled paths.
        double threshold = 0.0;
        int max_type1 = 0;
        int max_type2 = 0;

        auto type1_within() const -> bool { return max_type1 <= threshold; }
        auto type2_within() const -> bool { return max_type2 <= threshold; }
    };

    /// p = 3 (1 + n' / ell) with n' the reduced vertex count.
    auto default_audit_p(const Embedding & e) -> double;

    auto audit_congestion(const Embedding & e, double p, double c_hat) -> AuditReport;

    auto write_embedding(std::ostream & out, const Embedding & e) -> void;

    /// Reads the host, branch sets and buckets; the trace is left empty.
    auto read_embedding(std::istream & in) -> Embedding;

    auto write_audit(std::ostream & out, const AuditReport & report) -> void;
}
