#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ffd/enumerate.hpp"

using namespace ffd;

namespace {

std::vector<std::size_t> counts(const std::vector<LevelResult>& levels) {
    std::vector<std::size_t> out;
    for (const auto& l : levels) out.push_back(l.designs.size());
    return out;
}

std::vector<std::set<Certificate>> certificate_sets(const std::vector<LevelResult>& levels) {
    std::vector<std::set<Certificate>> out;
    for (const auto& l : levels) {
        std::set<Certificate> s;
        for (const auto& d : l.designs) s.insert(design_certificate(d));
        out.push_back(std::move(s));
    }
    return out;
}

EnumerationConfig config(std::uint32_t runs, int m, int r, int n_max, Method method) {
    EnumerationConfig c;
    c.runs = runs;
    c.m = m;
    c.resolution = r;
    c.n_max = n_max;
    c.method = method;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Enumerate, SixteenRunsOneFourLevel) {
    const auto levels = enumerate(config(16, 1, 3, 12, Method::SearchTable));
    EXPECT_EQ(levels.front().n, 2);
    EXPECT_EQ(counts(levels), (std::vector<std::size_t>{1, 3, 5, 7, 9, 7, 6, 4, 2, 1, 1}));
    EXPECT_EQ(levels[2].candidates, 19u);
}

TEST(Enumerate, SixteenRunsTwoFourLevel) {
    const auto levels = enumerate(config(16, 2, 3, 9, Method::SearchTable));
    EXPECT_EQ(levels.front().n, 0);
    EXPECT_EQ(counts(levels), (std::vector<std::size_t>{1, 1, 2, 4, 5, 5, 4, 2, 1, 1}));
}

TEST(Enumerate, TwoLevelWorkedExample) {
    const auto levels = enumerate(config(16, 0, 3, 6, Method::SearchTable));
    ASSERT_EQ(levels.size(), 3u);
    EXPECT_EQ(levels[1].designs.size(), 3u);
    EXPECT_EQ(levels[2].candidates, 14u);
    EXPECT_EQ(levels[2].designs.size(), 4u);
}

TEST(Enumerate, MethodsAgreeOnCertificates) {
    for (int m : {0, 1, 2}) {
        const int n_max = 15 - 3 * m;
        const auto st = enumerate(config(16, m, 3, n_max, Method::SearchTable));
        const auto dop = enumerate(config(16, m, 3, n_max, Method::Dop));
        const auto full = enumerate(config(16, m, 3, n_max, Method::Full));
        EXPECT_EQ(certificate_sets(st), certificate_sets(full)) << "m=" << m;
        EXPECT_EQ(certificate_sets(dop), certificate_sets(full)) << "m=" << m;
        for (std::size_t l = 1; l < st.size(); ++l) EXPECT_GE(full[l].candidates, st[l].candidates);
    }
}

TEST(Enumerate, ResolutionFourFiltersCandidates) {
    const auto levels = enumerate(config(32, 1, 4, 6, Method::SearchTable));
    for (const auto& l : levels)
        for (const auto& r : l.records) EXPECT_GE(r.resolution, 4);
    const auto full = enumerate(config(32, 1, 4, 6, Method::Full));
    EXPECT_EQ(certificate_sets(levels), certificate_sets(full));
}

TEST(Enumerate, ParentsExistAtPreviousLevel) {
    const auto levels = enumerate(config(32, 1, 3, 7, Method::SearchTable));
    for (std::size_t l = 1; l < levels.size(); ++l) {
        std::set<std::string> ids;
        for (const auto& r : levels[l - 1].records) ids.insert(r.id);
        std::set<std::string> own;
        for (const auto& r : levels[l].records) {
            EXPECT_TRUE(ids.count(r.parent_id)) << r.id;
            EXPECT_TRUE(own.insert(r.id).second);
        }
    }
}

TEST(Enumerate, InfiniteBoundsChangeNothing) {
    auto c = config(32, 1, 3, 8, Method::SearchTable);
    const auto plain = enumerate(c);
    BoundSpec spec;
    for (int n = 4; n <= 8; ++n) spec.set(1, n, {kUnbounded, kUnbounded});
    c.bounds = spec;
    const auto bounded = enumerate(c);
    ASSERT_EQ(bounded.size(), plain.size());
    for (std::size_t l = 0; l < plain.size(); ++l) {
        EXPECT_EQ(bounded[l].records, plain[l].records);
        EXPECT_EQ(bounded[l].rejected_by_bounds, 0u);
    }
}

TEST(Enumerate, TightBoundsReject) {
    auto c = config(32, 1, 3, 6, Method::SearchTable);
    BoundSpec spec;
    spec.set(1, 5, {0, 1});
    c.bounds = spec;
    const auto levels = enumerate(c);
    ASSERT_GE(levels.size(), 3u);
    EXPECT_GT(levels[2].rejected_by_bounds, 0u);
    for (const auto& r : levels[2].records) {
        EXPECT_EQ(r.a[0][0], 0);
        EXPECT_LE(r.a[0][1], 1);
    }
}

TEST(Enumerate, ConfigurationErrors) {
    EXPECT_THROW(enumerate(config(16, 3, 3, 5, Method::SearchTable)), ConfigError);
    EXPECT_THROW(enumerate(config(16, 1, 3, 13, Method::SearchTable)), ConfigError);
    EXPECT_THROW(enumerate(config(16, 1, 3, 1, Method::SearchTable)), ConfigError);
    EXPECT_THROW(enumerate(config(24, 1, 3, 5, Method::SearchTable)), ConfigError);
    EXPECT_THROW(enumerate(config(16, 1, 2, 5, Method::SearchTable)), ConfigError);
}

TEST(Enumerate, StopsAfterEmptyLevel) {
    const auto levels = enumerate(config(16, 1, 4, 12, Method::SearchTable));
    EXPECT_EQ(levels.back().designs.size(), 0u);
    EXPECT_LT(levels.back().n, 12);
}

TEST(Enumerate, FilesAreDeterministic) {
    const auto base = std::filesystem::temp_directory_path() / "ffd_enumerate_test";
    std::filesystem::remove_all(base);
    auto c = config(32, 1, 3, 7, Method::SearchTable);
    enumerate_to_directory(c, base / "a");
    c.workers = 3;
    enumerate_to_directory(c, base / "b");
    for (int n = 3; n <= 7; ++n) {
        const auto a = slurp(level_catalog_path(base / "a", 32, 1, n));
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, slurp(level_catalog_path(base / "b", 32, 1, n)));
        EXPECT_EQ(read_catalog_file(level_catalog_path(base / "a", 32, 1, n)).size(),
                  std::vector<std::size_t>({1, 5, 14, 37, 82})[n - 3]);
    }
    EXPECT_EQ(slurp(base / "a" / "counts.csv"), slurp(base / "b" / "counts.csv"));
    std::filesystem::remove_all(base);
}
