#include <gtest/gtest.h>

#include <numeric>

#include "ffd/column.hpp"

using namespace ffd;

TEST(ColumnValues, SingleBasicFactorAlternates) {
    EXPECT_EQ(column_values(Column(1), 2), (std::vector<int>{1, -1, 1, -1}));
}

TEST(ColumnValues, TwoFactorInteractionIsParity) {
    EXPECT_EQ(column_values(Column(3), 2), (std::vector<int>{1, -1, -1, 1}));
}

TEST(ColumnValues, DistinctColumnsAreOrthogonal) {
    const auto a = column_values(Column(1), 4);
    const auto b = column_values(Column(6), 4);
    EXPECT_EQ(std::inner_product(a.begin(), a.end(), b.begin(), 0), 0);
}

TEST(ColumnValues, OutOfRangeThrows) {
    EXPECT_THROW(column_values(Column(0), 3), std::domain_error);
    EXPECT_THROW(column_values(Column(8), 3), std::domain_error);
}

TEST(ColumnValues, BalancedAndPairwiseOrthogonal) {
    for (int k = 1; k <= 6; ++k) {
        const std::uint32_t runs = 1u << k;
        for (std::uint32_t c = 1; c < runs; ++c) {
            const auto a = column_values(Column(c), k);
            ASSERT_EQ(std::accumulate(a.begin(), a.end(), 0), 0) << "k=" << k << " c=" << c;
            for (std::uint32_t d = c + 1; d < runs; ++d) {
                const auto b = column_values(Column(d), k);
                ASSERT_EQ(std::inner_product(a.begin(), a.end(), b.begin(), 0), 0);
            }
        }
    }
}

TEST(Column, OrderCountsBasicFactors) {
    EXPECT_EQ(Column(1).order(), 1);
    EXPECT_EQ(Column(7).order(), 3);
    EXPECT_EQ((Column(5) ^ Column(3)).index(), 6u);
}

TEST(Column, TypeAndRelabeledOrder) {
    // m = 1: pair (bit 0, bit 1) forms the four-level factor.
    EXPECT_EQ(column_type(3, 1), 1);
    EXPECT_EQ(relabeled_order(3, 1), 1);  // a3
    EXPECT_EQ(relabeled_order(7, 1), 2);  // a3c
    EXPECT_EQ(relabeled_order(12, 1), 2); // cd
    EXPECT_EQ(column_type(12, 1), 0);
    EXPECT_EQ(relabeled_order(13, 1), 3); // a1cd
    EXPECT_EQ(column_type(0b0111, 2), 2);
    EXPECT_EQ(relabeled_order(0b0111, 2), 2);
}

TEST(Column, Labels) {
    EXPECT_EQ(column_label(3, 1), "a3");
    EXPECT_EQ(column_label(5, 1), "a1c");
    EXPECT_EQ(column_label(14, 1), "a2cd");
    EXPECT_EQ(column_label(12, 0), "cd");
}
