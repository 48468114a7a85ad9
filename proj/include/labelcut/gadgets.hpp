#pragma once

#include <labelcut/instances.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace labelcut::gadgets
{
    /// Smallest prime rho with ceil(n^(1/a)) < rho <= 2 ceil(n^(1/a)). The result
    /// is re-checked against (rho-1)^a >= n and rho^(2a) >= n^2 before return.
    auto choose_prime(int n, int a) -> int;

    /// Exact ceil(n^(1/a)) in integers.
    auto integer_root_ceil(std::uint64_t n, int a) -> std::uint64_t;

    auto is_prime(std::uint64_t x) -> bool;

    using FieldVector = std::vector<int>;

    struct GadgetParams
    {
        int rho = 0;
        int a = 0;
        int b = 0;
        int h = 0;
        int n = 0;
        /// e_1..e_a in lexicographic (x, y) order, x < y.
        std::vector<Edge> edge_order;
        /// f_maps[x][i]: image in (F*_rho)^a of the i-th vertex of block x.
        std::vector<std::vector<FieldVector>> f_maps;

        /// (rho (b+1))^a, the size of every W_z.
        auto block_span() const -> std::uint64_t;
        /// 1 + h (rho (b+1))^a.
        auto w_size() const -> std::uint64_t;
    };

    /// Chooses rho, fixes the edge order and builds the f maps for `inst`.
    auto make_params(const PsiInstance & inst) -> GadgetParams;

    /// i-th tuple of (F*_rho)^a in lexicographic order, for every block vertex.
    auto build_f_maps(const PsiInstance & inst, int rho, int a) -> std::vector<std::vector<FieldVector>>;

    /// g_xy(v_x v_y) = f_x(v_x) concatenated with f_y(v_y); length b = 2a.
    auto g_vector(const GadgetParams & params, int x, int vx_index, int y, int vy_index) -> FieldVector;

    /// Coordinate of a non-sentinel vertex of W: block z and a pairs (r, beta).
    struct WCoordinate
    {
        int block = 0;
        std::vector<std::pair<int, int>> coords;

        auto operator== (const WCoordinate &) const -> bool = default;
    };

    /// Bijection between W = {t} + disjoint union of W_z and 0..|W|-1.
    /// t is 0; W_z occupies 1 + z*span .. 1 + (z+1)*span - 1, with coordinate 1
    /// as the most significant digit and (r, beta) encoded as r*(b+1) + beta.
    class WIndex
    {
    public:
        explicit WIndex(const GadgetParams & params);

        static constexpr int sentinel = 0;

        auto encode(const WCoordinate & c) const -> int;
        auto decode(int w) const -> WCoordinate;
        /// f-hat: the all-beta-zero image of a field vector inside W_z.
        auto hat(int z, const FieldVector & f) const -> int;
        auto size() const -> std::uint64_t { return 1 + static_cast<std::uint64_t>(h_) * span_; }

    private:
        int rho_, a_, b_, h_;
        std::uint64_t span_;
    };

    /// Host edge (v_x, v_y) of pattern edge e_alpha = xy, x < y; alpha is 1-based.
    struct GadgetLabel
    {
        int alpha = 0;
        int vx = 0;
        int vy = 0;

        auto operator== (const GadgetLabel &) const -> bool = default;
    };

    /// Selection edge f^x(v_x) f^y(v_y) plus t z for z in (W^_x u W^_y) minus
    /// the two selected images.
    auto build_a_edges(const PsiInstance & inst, const GadgetParams & params, const GadgetLabel & label) -> std::vector<Edge>;

    /// Padding edges inside W_z u {t}: t to every vertex whose alpha coordinate
    /// is (0,0), and one b-leaf star per (free coordinates, r) centred at (r,0).
    auto build_padding(const PsiInstance & inst, const GadgetParams & params, const GadgetLabel & label, int z) -> std::vector<Edge>;

    /// A edges plus padding for every pattern vertex, canonical and deduplicated.
    auto build_gadget(const PsiInstance & inst, const GadgetParams & params, const GadgetLabel & label) -> std::vector<Edge>;

    struct ReduceOptions
    {
        /// Refuse to materialize instances with more vertices than this.
        std::uint64_t max_w = 5'000'000;
    };

    struct Reduction
    {
        DualCmcInstance instance;
        GadgetParams params;
        /// labels[i] describes color i + 1.
        std::vector<GadgetLabel> labels;
    };

    /// Builds the equivalent DCMC instance: one gadget graph per host edge,
    /// budget a = |E(H)|. Throws PatternDisconnected for a disconnected or
    /// edgeless pattern and CapExceeded above options.max_w.
    auto reduce_psi_to_dcmc(const PsiInstance & inst, const ReduceOptions & options = {}) -> Reduction;

    /// Maps a disconnecting selection of colors back to one host vertex per
    /// pattern vertex. Empty when the selection does not pick exactly one
    /// gadget per pattern edge or the picks disagree on some block.
    auto decode_selection(const PsiInstance & inst, const Reduction & red, std::span<const int> selection)
        -> std::optional<std::vector<int>>;

    /// Colors of the gadgets that a PSI witness selects, ascending.
    auto encode_choice(const PsiInstance & inst, const Reduction & red, std::span<const int> choice) -> std::vector<int>;

    /// Vertices of W that must lie outside t's component when `choice` is a
    /// PSI witness: f-hat_x(v_x) for every pattern vertex x.
    auto selected_images(const PsiInstance & inst, const Reduction & red, std::span<const int> choice) -> std::vector<int>;

    /// `color <i> = (alpha, v_x, v_y)` lines for witness decoding.
    auto write_gadget_map(std::ostream & out, const Reduction & red) -> void;
    auto read_gadget_map(std::istream & in) -> std::vector<GadgetLabel>;

    struct Connectivized
    {
        PsiInstance instance;
        bool changed = false;
        /// Universal pattern vertex x_H and its host vertex x_K, when added.
        int universal_pattern_vertex = -1;
        int universal_host_vertex = -1;
    };

    /// Identity on patterns that are connected and have an edge. Otherwise
    /// adds a universal pattern vertex x_H whose block holds a universal host
    /// vertex x_K plus isolated filler up to the common block size. Host
    /// vertices flagged in `inert` (indexed by host vertex) get no edge to x_K.
    auto connectivize_pattern(const PsiInstance & inst, std::span<const char> inert = {}) -> Connectivized;
}
