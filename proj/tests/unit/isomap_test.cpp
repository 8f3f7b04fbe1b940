#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ffd/isomap.hpp"
#include "ffd/run_matrix.hpp"
#include "ffd/wlp.hpp"
#include "oracles.hpp"

using namespace ffd;

namespace {

bool same_matrix(const RunMatrix& a, const RunMatrix& b) {
    if (a.runs() != b.runs() || a.four_level_count() != b.four_level_count() ||
        a.two_level_count() != b.two_level_count())
        return false;
    for (std::size_t r = 0; r < a.runs(); ++r) {
        for (int j = 0; j < a.four_level_count(); ++j)
            if (a.four(r, j) != b.four(r, j)) return false;
        for (int i = 0; i < a.two_level_count(); ++i)
            if (a.two(r, i) != b.two(r, i)) return false;
    }
    return true;
}

// Sorted list of per-row sorted level tuples: invariant under row and
// column permutations as long as levels are left alone.
std::multiset<std::vector<int>> row_profile(const RunMatrix& x) {
    std::multiset<std::vector<int>> out;
    for (std::size_t r = 0; r < x.runs(); ++r) {
        std::vector<int> row;
        for (int j = 0; j < x.four_level_count(); ++j) row.push_back(x.four(r, j));
        for (int i = 0; i < x.two_level_count(); ++i) row.push_back(x.two(r, i));
        std::sort(row.begin(), row.end());
        out.insert(row);
    }
    return out;
}

} // namespace

TEST(IsoMap, IdentityLeavesMatrixUnchanged) {
    const auto x = design_matrix(make_design(4, 1, {4, 8, 7}));
    EXPECT_TRUE(same_matrix(apply_isomap(x, identity_isomap(16, 1, 3)), x));
}

TEST(IsoMap, RowSwapTwiceIsIdentity) {
    const auto x = design_matrix(make_design(4, 1, {4, 8, 7}));
    auto f = identity_isomap(16, 1, 3);
    std::swap(f.row_perm[0], f.row_perm[5]);
    EXPECT_FALSE(same_matrix(apply_isomap(x, f), x));
    EXPECT_TRUE(same_matrix(apply_isomap(apply_isomap(x, f), f), x));
}

TEST(IsoMap, DimensionMismatchThrows) {
    const auto x = design_matrix(make_design(4, 1, {4, 8, 7}));
    EXPECT_THROW(apply_isomap(x, identity_isomap(16, 1, 2)), ValidationError);
    EXPECT_THROW(apply_isomap(x, identity_isomap(8, 1, 3)), ValidationError);
}

TEST(IsoMap, RandomMapIsDeterministicPerSeed) {
    const auto d = make_design(5, 1, {4, 8, 16, 7, 25});
    EXPECT_EQ(random_isomap(d, 42), random_isomap(d, 42));
    EXPECT_NE(random_isomap(d, 42), random_isomap(d, 43));
}

TEST(IsoMap, InverseAndComposition) {
    const auto d = make_design(5, 2, {16, 21, 11});
    const auto x = design_matrix(d);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = random_isomap(d, seed);
        const auto g = random_isomap(d, seed + 1000);
        EXPECT_TRUE(same_matrix(apply_isomap(apply_isomap(x, f), inverse(f)), x));
        EXPECT_EQ(compose(f, inverse(f)), identity_isomap(32, 2, 3));
        EXPECT_TRUE(same_matrix(apply_isomap(x, compose(f, g)), apply_isomap(apply_isomap(x, f), g)));
    }
}

TEST(IsoMap, FourLevelPermutationsCoverSymmetricGroup) {
    const auto d = make_design(4, 1, {4, 8});
    std::set<std::array<int, 4>> seen;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const auto f = random_isomap(d, seed);
        ASSERT_EQ(f.four_level_level_perms.size(), 1u);
        seen.insert(f.four_level_level_perms[0]);
    }
    EXPECT_EQ(seen.size(), 24u);
}

TEST(IsoMap, PreservesBalanceAndWlp) {
    std::mt19937_64 rng(99);
    for (int design = 0; design < 5; ++design) {
        const auto d = oracle::random_design(5, design % 3, 7 - 2 * (design % 3), rng);
        const auto x = design_matrix(d);
        const auto w = wlp(d);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto f = random_isomap(d, seed);
            const auto y = apply_isomap(x, f);
            const auto back = recover_design(y, 5);
            ASSERT_EQ(wlp(back), w) << "design " << design << " seed " << seed;
            auto g = f;
            g.four_level_level_perms.assign(d.m(), {0, 1, 2, 3});
            g.two_level_sign_switches.assign(d.n(), false);
            EXPECT_EQ(row_profile(apply_isomap(x, g)), row_profile(x));
        }
    }
}
