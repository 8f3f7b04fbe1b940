#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ffd/canonical.hpp"
#include "ffd/isomap.hpp"
#include "ffd/isomorphism.hpp"
#include "oracles.hpp"

using namespace ffd;

namespace {

// Random permutation that maps each color class onto itself.
std::vector<int> color_preserving_perm(const ColoredGraph& g, std::mt19937_64& rng) {
    std::vector<int> perm(g.vertex_count());
    for (int c = 0; c < kColorCount; ++c) {
        std::vector<int> members;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (static_cast<int>(g.colors[v]) == c) members.push_back(v);
        auto shuffled = members;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < members.size(); ++i) perm[members[i]] = shuffled[i];
    }
    return perm;
}

ColoredGraph cycle(int n, int chord = -1) {
    ColoredGraph g;
    g.colors.assign(n, VertexColor::Run);
    for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
    if (chord >= 0) g.edges.emplace_back(0, chord);
    return g;
}

} // namespace

TEST(Certificate, InvariantUnderRelabeling) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = oracle::random_design(5, trial % 3, 7 - 2 * (trial % 3), rng);
        const auto g = design_to_graph(design_matrix(d));
        const auto cert = canonical_certificate(g);
        for (int r = 0; r < 5; ++r) EXPECT_EQ(canonical_certificate(relabel(g, color_preserving_perm(g, rng))), cert);
    }
}

TEST(Certificate, PlainGraphs) {
    // Highly symmetric graphs exercise automorphism pruning.
    EXPECT_EQ(canonical_certificate(cycle(12)), canonical_certificate(relabel(cycle(12), [] {
                  std::vector<int> p(12);
                  for (int i = 0; i < 12; ++i) p[i] = (5 * i + 3) % 12;
                  return p;
              }())));
    EXPECT_NE(canonical_certificate(cycle(12, 3)), canonical_certificate(cycle(12, 6)));
    EXPECT_EQ(canonical_certificate(cycle(12, 4)), canonical_certificate(cycle(12, 8)));
}

TEST(Certificate, ColorsMatter) {
    auto g = cycle(6);
    auto h = g;
    h.colors[0] = VertexColor::Factor2;
    auto h2 = g;
    h2.colors[3] = VertexColor::Factor2;
    EXPECT_NE(canonical_certificate(g), canonical_certificate(h));
    EXPECT_EQ(canonical_certificate(h), canonical_certificate(h2));
}

TEST(Certificate, InvariantUnderRandomIsoMaps) {
    std::mt19937_64 rng(23);
    for (int design = 0; design < 4; ++design) {
        const auto d = oracle::random_design(5, design % 3, 7 - 2 * (design % 3), rng, 3);
        const auto x = design_matrix(d);
        const auto cert = canonical_certificate(x);
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            ASSERT_EQ(canonical_certificate(apply_isomap(x, random_isomap(d, seed))), cert) << design << " " << seed;
    }
}

TEST(Certificate, DifferentWlpGivesDifferentCertificate) {
    const auto a = make_design(4, 1, {4, 8, 12, 5, 13});
    const auto b = make_design(4, 1, {4, 8, 5, 6, 13});
    ASSERT_NE(wlp(a), wlp(b));
    EXPECT_NE(design_certificate(a), design_certificate(b));
}

TEST(Certificate, Deterministic) {
    const auto d = make_design(5, 1, {4, 8, 16, 7, 25, 30});
    EXPECT_EQ(design_certificate(d), design_certificate(d));
}
