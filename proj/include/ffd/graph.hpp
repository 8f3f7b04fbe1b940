#ifndef FFD_GRAPH_HPP
#define FFD_GRAPH_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "run_matrix.hpp"

namespace ffd {

enum class VertexColor : std::uint8_t { Run = 0, Factor2 = 1, Factor4 = 2, Level2 = 3, Level4 = 4 };
inline constexpr int kColorCount = 5;

/// Vertex-colored undirected graph.
struct ColoredGraph {
    std::vector<VertexColor> colors;
    std::vector<std::pair<int, int>> edges;

    int vertex_count() const noexcept { return static_cast<int>(colors.size()); }
    std::size_t edge_count() const noexcept { return edges.size(); }

    std::array<int, kColorCount> class_sizes() const {
        std::array<int, kColorCount> sizes{};
        for (auto c : colors) ++sizes[static_cast<int>(c)];
        return sizes;
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(colors.size(), 0);
        for (auto [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        return deg;
    }
};

/// One vertex per run, per factor and per (factor, level). Runs connect to
/// the level they take in every factor; level vertices connect to their
/// factor. Vertex blocks in order: runs, two-level factors, four-level
/// factors, two-level levels, four-level levels.
inline ColoredGraph design_to_graph(const RunMatrix& x) {
    const int runs = static_cast<int>(x.runs());
    const int m = x.four_level_count();
    const int n = x.two_level_count();
    const int f2 = runs;
    const int f4 = f2 + n;
    const int l2 = f4 + m;
    const int l4 = l2 + 2 * n;
    const int total = l4 + 4 * m;

    ColoredGraph g;
    g.colors.resize(total);
    for (int v = 0; v < total; ++v) {
        VertexColor c = VertexColor::Run;
        if (v >= l4) c = VertexColor::Level4;
        else if (v >= l2) c = VertexColor::Level2;
        else if (v >= f4) c = VertexColor::Factor4;
        else if (v >= f2) c = VertexColor::Factor2;
        g.colors[v] = c;
    }
    g.edges.reserve(static_cast<std::size_t>(runs) * (m + n) + 4 * m + 2 * n);
    for (int r = 0; r < runs; ++r) {
        for (int i = 0; i < n; ++i) g.edges.emplace_back(r, l2 + 2 * i + (x.two(r, i) > 0 ? 1 : 0));
        for (int j = 0; j < m; ++j) g.edges.emplace_back(r, l4 + 4 * j + x.four(r, j));
    }
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < 2; ++l) g.edges.emplace_back(l2 + 2 * i + l, f2 + i);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < 4; ++l) g.edges.emplace_back(l4 + 4 * j + l, f4 + j);
    return g;
}

/// Relabels vertex v as perm[v]; perm must preserve colors to stay in the same class.
inline ColoredGraph relabel(const ColoredGraph& g, const std::vector<int>& perm) {
    ColoredGraph out;
    out.colors.resize(g.colors.size());
    for (std::size_t v = 0; v < g.colors.size(); ++v) out.colors[perm[v]] = g.colors[v];
    out.edges.reserve(g.edges.size());
    for (auto [u, v] : g.edges) out.edges.emplace_back(perm[u], perm[v]);
    return out;
}

} // namespace ffd

#endif // FFD_GRAPH_HPP
