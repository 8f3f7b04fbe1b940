#include <gtest/gtest.h>

#include "ffd/graph.hpp"
#include "ffd/run_matrix.hpp"

using namespace ffd;

TEST(DesignToGraph, VertexAndEdgeCounts) {
    const auto g = design_to_graph(design_matrix(make_design(4, 1, {4, 8, 7})));
    EXPECT_EQ(g.vertex_count(), 30);
    EXPECT_EQ(g.edge_count(), 74u);
    EXPECT_EQ(g.class_sizes(), (std::array<int, kColorCount>{16, 3, 1, 6, 4}));
}

TEST(DesignToGraph, Degrees) {
    const auto d = make_design(5, 2, {16, 21, 11});
    const auto g = design_to_graph(design_matrix(d));
    const auto deg = g.degrees();
    for (int v = 0; v < g.vertex_count(); ++v) {
        switch (g.colors[v]) {
        case VertexColor::Run: EXPECT_EQ(deg[v], d.m() + d.n()); break;
        case VertexColor::Level2: EXPECT_EQ(deg[v], 32 / 2 + 1); break;
        case VertexColor::Level4: EXPECT_EQ(deg[v], 32 / 4 + 1); break;
        case VertexColor::Factor2: EXPECT_EQ(deg[v], 2); break;
        case VertexColor::Factor4: EXPECT_EQ(deg[v], 4); break;
        }
    }
}

TEST(Relabel, MovesColorsAndEdges) {
    ColoredGraph g;
    g.colors = {VertexColor::Run, VertexColor::Run, VertexColor::Factor2};
    g.edges = {{0, 2}};
    const auto h = relabel(g, {1, 0, 2});
    EXPECT_EQ(h.edges.front(), (std::pair<int, int>{1, 2}));
    EXPECT_EQ(h.colors, g.colors);
}
