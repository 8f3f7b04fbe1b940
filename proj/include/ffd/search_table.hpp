#ifndef FFD_SEARCH_TABLE_HPP
#define FFD_SEARCH_TABLE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "column.hpp"
#include "errors.hpp"

namespace ffd {

struct SearchRow {
    Column generator;
    int relabeled_order = 0;
    int type = 0;
};

/// Candidate generators (every interaction of two or more basic factors)
/// sorted by relabeled order, then type, then two-level letters
/// lexicographically, then pseudo letters (a1 < a2 < a3, factors in order).
class SearchTable {
public:
    SearchTable(int k, int m, std::vector<SearchRow> rows) : k_(k), m_(m), rows_(std::move(rows)) {
        row_of_.assign(std::size_t{1} << k, -1);
        for (std::size_t i = 0; i < rows_.size(); ++i) row_of_[rows_[i].generator.index()] = static_cast<int>(i);
    }

    int k() const noexcept { return k_; }
    int m() const noexcept { return m_; }
    std::size_t size() const noexcept { return rows_.size(); }
    const SearchRow& operator[](std::size_t i) const { return rows_[i]; }
    const std::vector<SearchRow>& rows() const noexcept { return rows_; }

    /// Row index of a generator, -1 when the column is not in the table.
    int row_of(Column c) const { return c.index() < row_of_.size() ? row_of_[c.index()] : -1; }

private:
    int k_;
    int m_;
    std::vector<SearchRow> rows_;
    std::vector<int> row_of_;
};

namespace detail {

struct RowKey {
    int order;
    int type;
    std::vector<int> two_level_letters;
    std::vector<std::pair<int, int>> pseudo_letters;

    auto operator<=>(const RowKey&) const = default;
};

inline RowKey row_key(std::uint32_t c, int m) {
    RowKey key{relabeled_order(c, m), column_type(c, m), {}, {}};
    for (int b = 2 * m; b < 32; ++b)
        if ((c >> b) & 1u) key.two_level_letters.push_back(b);
    for (int j = 0; j < m; ++j)
        if (const int pair = static_cast<int>((c >> (2 * j)) & 3u)) key.pseudo_letters.emplace_back(j, pair);
    return key;
}

} // namespace detail

inline SearchTable build_search_table(int k, int m) {
    if (k < 1 || k > kMaxBasicFactors || m < 0 || 2 * m > k) throw ConfigError("search table: need 0 <= 2m <= k");
    std::vector<std::pair<detail::RowKey, std::uint32_t>> keyed;
    for (std::uint32_t c = 1; c < (1u << k); ++c)
        if (std::popcount(c) >= 2) keyed.emplace_back(detail::row_key(c, m), c);
    std::sort(keyed.begin(), keyed.end());
    std::vector<SearchRow> rows;
    rows.reserve(keyed.size());
    for (const auto& [key, c] : keyed) rows.push_back({Column(c), key.order, key.type});
    return SearchTable(k, m, std::move(rows));
}

} // namespace ffd

#endif // FFD_SEARCH_TABLE_HPP
