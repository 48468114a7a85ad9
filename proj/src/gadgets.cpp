#include <labelcut/errors.hpp>
#include <labelcut/gadgets.hpp>

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace labelcut::gadgets
{
    namespace
    {
        auto checked_pow(std::uint64_t base, int exp) -> std::uint64_t
        {
            unsigned __int128 r = 1;
            for (int i = 0; i < exp; ++i) {
                r *= base;
                if (r > std::numeric_limits<std::uint64_t>::max())
                    return std::numeric_limits<std::uint64_t>::max();
            }
            return static_cast<std::uint64_t>(r);
        }

        auto position_in_block(const std::vector<int> & block, int v) -> int
        {
            auto it = std::lower_bound(block.begin(), block.end(), v);
            return static_cast<int>(it - block.begin());
        }
    }

    auto is_prime(std::uint64_t x) -> bool
    {
        if (x < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= x; ++d)
            if (x % d == 0)
                return false;
        return true;
    }

    auto integer_root_ceil(std::uint64_t n, int a) -> std::uint64_t
    {
        std::uint64_t r = 1;
        while (checked_pow(r, a) < n)
            ++r;
        return r;
    }

    auto choose_prime(int n, int a) -> int
    {
        if (n < 1 || a < 1)
            throw InvalidInstance("choose_prime needs n >= 1 and a >= 1");
        std::uint64_t root = integer_root_ceil(n, a);
        for (std::uint64_t rho = root + 1; rho <= 2 * root; ++rho) {
            if (! is_prime(rho))
                continue;
            const auto nn = static_cast<std::uint64_t>(n);
            if (checked_pow(rho - 1, a) < nn || checked_pow(rho, 2 * a) < nn * nn)
                throw NoPrimeInRange("prime " + std::to_string(rho) + " violates (rho-1)^a >= n or rho^b >= n^2");
            return static_cast<int>(rho);
        }
        throw NoPrimeInRange("no prime in (" + std::to_string(root) + ", " + std::to_string(2 * root) + "]");
    }

    auto GadgetParams::block_span() const -> std::uint64_t
    {
        return checked_pow(static_cast<std::uint64_t>(rho) * (b + 1), a);
    }

    auto GadgetParams::w_size() const -> std::uint64_t
    {
        auto span = block_span();
        if (span > (std::numeric_limits<std::uint64_t>::max() - 1) / std::max(h, 1))
            return std::numeric_limits<std::uint64_t>::max();
        return 1 + static_cast<std::uint64_t>(h) * span;
    }

    auto build_f_maps(const PsiInstance & inst, int rho, int a) -> std::vector<std::vector<FieldVector>>
    {
        if (checked_pow(rho - 1, a) < static_cast<std::uint64_t>(inst.block_size))
            throw InvalidInstance("(rho-1)^a < n: no injective map into (F*_rho)^a");
        std::vector<std::vector<FieldVector>> maps(inst.blocks.size());
        for (std::size_t x = 0; x < inst.blocks.size(); ++x) {
            for (std::size_t i = 0; i < inst.blocks[x].size(); ++i) {
                FieldVector f(a);
                std::uint64_t rest = i;
                for (int j = a - 1; j >= 0; --j) {
                    f[j] = 1 + static_cast<int>(rest % (rho - 1));
                    rest /= (rho - 1);
                }
                maps[x].push_back(std::move(f));
            }
        }
        return maps;
    }

    auto make_params(const PsiInstance & inst) -> GadgetParams
    {
        GadgetParams params;
        params.h = inst.pattern.vertex_count;
        params.n = inst.block_size;
        params.edge_order = inst.pattern.edges;
        std::sort(params.edge_order.begin(), params.edge_order.end());
        params.a = static_cast<int>(params.edge_order.size());
        params.b = 2 * params.a;
        params.rho = choose_prime(params.n, params.a);
        params.f_maps = build_f_maps(inst, params.rho, params.a);
        return params;
    }

    auto g_vector(const GadgetParams & params, int x, int vx_index, int y, int vy_index) -> FieldVector
    {
        FieldVector g = params.f_maps.at(x).at(vx_index);
        const auto & fy = params.f_maps.at(y).at(vy_index);
        g.insert(g.end(), fy.begin(), fy.end());
        return g;
    }

    WIndex::WIndex(const GadgetParams & params) :
        rho_(params.rho),
        a_(params.a),
        b_(params.b),
        h_(params.h),
        span_(params.block_span())
    {
    }

    auto WIndex::encode(const WCoordinate & c) const -> int
    {
        std::uint64_t value = 0;
        for (const auto & [r, beta] : c.coords)
            value = value * static_cast<std::uint64_t>(rho_ * (b_ + 1)) + static_cast<std::uint64_t>(r * (b_ + 1) + beta);
        return static_cast<int>(1 + static_cast<std::uint64_t>(c.block) * span_ + value);
    }

    auto WIndex::decode(int w) const -> WCoordinate
    {
        if (w == sentinel)
            throw InvalidInstance("the sentinel t has no coordinates");
        std::uint64_t offset = static_cast<std::uint64_t>(w - 1);
        WCoordinate c;
        c.block = static_cast<int>(offset / span_);
        std::uint64_t value = offset % span_;
        c.coords.resize(a_);
        for (int j = a_ - 1; j >= 0; --j) {
            int digit = static_cast<int>(value % static_cast<std::uint64_t>(rho_ * (b_ + 1)));
            value /= static_cast<std::uint64_t>(rho_ * (b_ + 1));
            c.coords[j] = {digit / (b_ + 1), digit % (b_ + 1)};
        }
        return c;
    }

    auto WIndex::hat(int z, const FieldVector & f) const -> int
    {
        WCoordinate c{z, {}};
        for (int r : f)
            c.coords.emplace_back(r, 0);
        return encode(c);
    }

    auto build_a_edges(const PsiInstance & inst, const GadgetParams & params, const GadgetLabel & label) -> std::vector<Edge>
    {
        const auto & e = params.edge_order.at(label.alpha - 1);
        const int x = e.u, y = e.v;
        WIndex index(params);
        int fx = index.hat(x, params.f_maps[x][position_in_block(inst.blocks[x], label.vx)]);
        int fy = index.hat(y, params.f_maps[y][position_in_block(inst.blocks[y], label.vy)]);

        std::vector<Edge> edges{make_edge(fx, fy)};
        // W^_z enumerated as all r-tuples with every beta zero.
        const std::uint64_t hat_count = checked_pow(static_cast<std::uint64_t>(params.rho), params.a);
        for (int z : {x, y}) {
            for (std::uint64_t i = 0; i < hat_count; ++i) {
                FieldVector r(params.a);
                std::uint64_t rest = i;
                for (int j = params.a - 1; j >= 0; --j) {
                    r[j] = static_cast<int>(rest % params.rho);
                    rest /= params.rho;
                }
                int w = index.hat(z, r);
                if (w != fx && w != fy)
                    edges.push_back(make_edge(WIndex::sentinel, w));
            }
        }
        canonicalize_edges(edges);
        return edges;
    }

    auto build_padding(const PsiInstance & inst, const GadgetParams & params, const GadgetLabel & label, int z) -> std::vector<Edge>
    {
        const auto & e = params.edge_order.at(label.alpha - 1);
        const int x = e.u, y = e.v;
        auto g = g_vector(params, x, position_in_block(inst.blocks[x], label.vx), y, position_in_block(inst.blocks[y], label.vy));

        const std::uint64_t base = static_cast<std::uint64_t>(params.rho) * (params.b + 1);
        const int pos = label.alpha - 1;
        // Place value of coordinate `pos` (coordinate 1 is most significant).
        std::uint64_t place = 1;
        for (int j = pos + 1; j < params.a; ++j)
            place *= base;
        std::uint64_t high_count = 1;
        for (int j = 0; j < pos; ++j)
            high_count *= base;
        const std::uint64_t origin = 1 + static_cast<std::uint64_t>(z) * params.block_span();

        std::vector<Edge> edges;
        edges.reserve(high_count * place * (1 + params.rho * params.b));
        for (std::uint64_t high = 0; high < high_count; ++high)
            for (std::uint64_t low = 0; low < place; ++low) {
                const std::uint64_t frame = origin + high * base * place + low;
                edges.push_back(make_edge(WIndex::sentinel, static_cast<int>(frame)));
                for (int r = 0; r < params.rho; ++r) {
                    auto centre = static_cast<int>(frame + static_cast<std::uint64_t>(r * (params.b + 1)) * place);
                    for (int i = 1; i <= params.b; ++i) {
                        int shifted = (r + g[i - 1]) % params.rho;
                        auto leaf = static_cast<int>(frame + static_cast<std::uint64_t>(shifted * (params.b + 1) + i) * place);
                        edges.push_back(make_edge(centre, leaf));
                    }
                }
            }
        std::sort(edges.begin(), edges.end());
        return edges;
    }

    auto build_gadget(const PsiInstance & inst, const GadgetParams & params, const GadgetLabel & label) -> std::vector<Edge>
    {
        auto edges = build_a_edges(inst, params, label);
        for (int z = 0; z < params.h; ++z) {
            auto pad = build_padding(inst, params, label, z);
            edges.insert(edges.end(), pad.begin(), pad.end());
        }
        canonicalize_edges(edges);
        return edges;
    }

    auto reduce_psi_to_dcmc(const PsiInstance & inst, const ReduceOptions & options) -> Reduction
    {
        inst.validate();
        if (inst.pattern.edges.empty())
            throw PatternDisconnected("pattern has no edges; connectivize it first");
        if (! is_connected(inst.pattern.vertex_count, inst.pattern.edges))
            throw PatternDisconnected("pattern is disconnected; connectivize it first");

        Reduction red;
        red.params = make_params(inst);
        if (red.params.w_size() > options.max_w)
            throw CapExceeded("reduction would build |W| = " + std::to_string(red.params.w_size()) + " vertices, cap is "
                + std::to_string(options.max_w));

        auto owner = inst.block_of();
        std::map<Edge, std::vector<GadgetLabel>> by_pattern_edge;
        for (const auto & e : inst.host.edges) {
            int u = e.u, v = e.v;
            if (owner[u] > owner[v])
                std::swap(u, v);
            by_pattern_edge[Edge{owner[u], owner[v]}].push_back(GadgetLabel{0, u, v});
        }
        for (int alpha = 1; alpha <= red.params.a; ++alpha) {
            auto it = by_pattern_edge.find(red.params.edge_order[alpha - 1]);
            if (it == by_pattern_edge.end())
                continue;
            auto labels = it->second;
            std::sort(labels.begin(), labels.end(), [](const auto & l, const auto & r) {
                return std::pair{l.vx, l.vy} < std::pair{r.vx, r.vy};
            });
            for (auto & l : labels) {
                l.alpha = alpha;
                red.labels.push_back(l);
            }
        }

        red.instance.vertex_count = static_cast<int>(red.params.w_size());
        red.instance.budget = red.params.a;
        red.instance.color_graphs.reserve(red.labels.size());
        for (const auto & l : red.labels)
            red.instance.color_graphs.push_back(build_gadget(inst, red.params, l));
        return red;
    }

    auto decode_selection(const PsiInstance & inst, const Reduction & red, std::span<const int> selection)
        -> std::optional<std::vector<int>>
    {
        std::vector<int> choice(inst.pattern.vertex_count, -1);
        std::vector<char> alpha_used(red.params.a + 1, 0);
        for (int color : selection) {
            const auto & l = red.labels.at(color - 1);
            if (alpha_used[l.alpha])
                return std::nullopt;
            alpha_used[l.alpha] = 1;
            const auto & e = red.params.edge_order[l.alpha - 1];
            for (auto [x, v] : {std::pair{e.u, l.vx}, std::pair{e.v, l.vy}}) {
                if (choice[x] != -1 && choice[x] != v)
                    return std::nullopt;
                choice[x] = v;
            }
        }
        if (std::count(alpha_used.begin() + 1, alpha_used.end(), 1) != red.params.a)
            return std::nullopt;
        if (std::find(choice.begin(), choice.end(), -1) != choice.end())
            return std::nullopt;
        return choice;
    }

    auto encode_choice(const PsiInstance &, const Reduction & red, std::span<const int> choice) -> std::vector<int>
    {
        std::vector<int> colors;
        for (int alpha = 1; alpha <= red.params.a; ++alpha) {
            const auto & e = red.params.edge_order[alpha - 1];
            GadgetLabel want{alpha, choice[e.u], choice[e.v]};
            auto it = std::find(red.labels.begin(), red.labels.end(), want);
            if (it == red.labels.end())
                throw InvalidInstance("choice uses a non-edge of the host for pattern edge " + std::to_string(alpha));
            colors.push_back(static_cast<int>(it - red.labels.begin()) + 1);
        }
        std::sort(colors.begin(), colors.end());
        return colors;
    }

    auto selected_images(const PsiInstance & inst, const Reduction & red, std::span<const int> choice) -> std::vector<int>
    {
        WIndex index(red.params);
        std::vector<int> images;
        for (int x = 0; x < inst.pattern.vertex_count; ++x)
            images.push_back(index.hat(x, red.params.f_maps[x][position_in_block(inst.blocks[x], choice[x])]));
        return images;
    }

    auto write_gadget_map(std::ostream & out, const Reduction & red) -> void
    {
        out << "# color <i> = (alpha, v_x, v_y); rho=" << red.params.rho << " a=" << red.params.a << " b=" << red.params.b
            << '\n';
        for (std::size_t i = 0; i < red.labels.size(); ++i) {
            const auto & l = red.labels[i];
            out << "color " << i + 1 << " = (" << l.alpha << ", " << l.vx << ", " << l.vy << ")\n";
        }
    }

    auto read_gadget_map(std::istream & in) -> std::vector<GadgetLabel>
    {
        std::vector<GadgetLabel> labels;
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            if (raw.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            for (char & ch : raw)
                if (ch == '(' || ch == ')' || ch == ',' || ch == '=')
                    ch = ' ';
            std::istringstream words(raw);
            std::string kw;
            int color = 0;
            GadgetLabel l;
            if (! (words >> kw >> color >> l.alpha >> l.vx >> l.vy) || kw != "color")
                throw ParseError(number, "expected 'color <i> = (alpha, v_x, v_y)'");
            if (color != static_cast<int>(labels.size()) + 1)
                throw ParseError(number, "colors must be listed in order");
            labels.push_back(l);
        }
        return labels;
    }

    auto connectivize_pattern(const PsiInstance & inst, std::span<const char> inert) -> Connectivized
    {
        Connectivized out{inst, false, -1, -1};
        if (! inst.pattern.edges.empty() && is_connected(inst.pattern.vertex_count, inst.pattern.edges))
            return out;

        auto & res = out.instance;
        const int h = inst.pattern.vertex_count;
        const int n = inst.block_size;
        const int x_h = h;
        const int x_k = inst.host.vertex_count;
        res.pattern.vertex_count = h + 1;
        for (int x = 0; x < h; ++x)
            res.pattern.edges.push_back(Edge{x, x_h});
        res.pattern.normalize();

        res.host.vertex_count = inst.host.vertex_count + n;
        for (int v = 0; v < inst.host.vertex_count; ++v)
            if (inert.empty() || ! inert[v])
                res.host.edges.push_back(Edge{v, x_k});
        res.host.normalize();

        std::vector<int> block;
        for (int i = 0; i < n; ++i)
            block.push_back(x_k + i);
        res.blocks.push_back(std::move(block));
        res.validate();

        out.changed = true;
        out.universal_pattern_vertex = x_h;
        out.universal_host_vertex = x_k;
        return out;
    }
}
