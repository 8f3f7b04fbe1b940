#ifndef FFD_TEST_ORACLES_HPP
#define FFD_TEST_ORACLES_HPP

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ffd/design.hpp"
#include "ffd/wlp.hpp"

namespace oracle {

/// Counts words by scanning every subset of the two-level columns: a subset
/// is a word when its product only involves pseudo basics.
inline ffd::WlpMatrix subset_wlp(const ffd::Design& d) {
    const int m = d.m();
    const int n = d.n();
    ffd::WlpMatrix out(m, m + n);
    const std::uint32_t pseudo = (1u << (2 * m)) - 1;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        std::uint32_t x = 0;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) x ^= d.two_level()[i].index();
        if (x & ~pseudo) continue;
        int type = 0;
        for (int j = 0; j < m; ++j)
            if ((x >> (2 * j)) & 3u) ++type;
        out.at(std::popcount(s) + type, type) += 1;
    }
    return out;
}

/// A_3 by ascending type, via subset_wlp.
inline std::vector<std::int64_t> subset_a3(const ffd::Design& d) {
    const auto w = subset_wlp(d);
    std::vector<std::int64_t> out(d.m() + 1, 0);
    if (w.max_length() >= 3)
        for (int t = 0; t <= d.m(); ++t) out[t] = w.at(3, t);
    return out;
}

/// Number of admissible two-level generators: every nonzero column except
/// the three pseudo columns of each four-level factor.
inline int column_pool_size(int k, int m) { return (1 << k) - 1 - 3 * m; }

/// Uniformly chosen admissible columns, retried until the set spans.
/// Optionally requires resolution >= r.
inline ffd::Design random_design(int k, int m, int n, std::mt19937_64& rng, int min_resolution = 0) {
    std::vector<std::uint32_t> pool;
    for (std::uint32_t c = 1; c < (1u << k); ++c) {
        bool pseudo_column = false;
        for (int j = 0; j < m; ++j)
            if ((c & ~(3u << (2 * j))) == 0) pseudo_column = true;
        if (!pseudo_column) pool.push_back(c);
    }
    if (n < 0 || n > static_cast<int>(pool.size())) throw std::invalid_argument("random_design: n out of range");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<ffd::Column> cols;
        for (int i = 0; i < n; ++i) cols.emplace_back(pool[i]);
        ffd::Design d = ffd::projection_design(k, m, cols);
        if (!d.spans()) continue;
        if (min_resolution > 0 && ffd::resolution(subset_wlp(d)) < min_resolution) continue;
        return d;
    }
    throw std::runtime_error("random_design: no design found");
}

/// Worst-A_3 descent over every chain of single-column deletions, with
/// duplicate column sets merged but no isomorphism reduction.
inline std::map<int, std::vector<std::int64_t>> dop_tree_bounds(const ffd::Design& seed, int n_low) {
    std::map<int, std::vector<std::int64_t>> out;
    out[seed.n()] = subset_a3(seed);
    std::set<std::vector<std::uint32_t>> current{ffd::column_indices(seed)};
    for (int n = seed.n() - 1; n >= n_low; --n) {
        std::map<std::vector<std::int64_t>, std::set<std::vector<std::uint32_t>>> by_key;
        for (const auto& cols : current) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                std::vector<ffd::Column> rest;
                for (std::size_t j = 0; j < cols.size(); ++j)
                    if (j != i) rest.emplace_back(cols[j]);
                const auto sub = ffd::projection_design(seed.k(), seed.m(), rest);
                auto a3 = subset_a3(sub);
                std::reverse(a3.begin(), a3.end());
                by_key[a3].insert(ffd::column_indices(sub));
            }
        }
        auto worst = std::prev(by_key.end());
        auto a3 = worst->first;
        std::reverse(a3.begin(), a3.end());
        out[n] = a3;
        current = worst->second;
    }
    return out;
}

} // namespace oracle

#endif // FFD_TEST_ORACLES_HPP
