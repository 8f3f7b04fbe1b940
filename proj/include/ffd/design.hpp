#ifndef FFD_DESIGN_HPP
#define FFD_DESIGN_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "column.hpp"
#include "errors.hpp"

namespace ffd {

namespace detail {

/// Rank over GF(2) of a set of vectors packed in 32-bit words.
inline int gf2_rank(std::vector<std::uint32_t> rows) {
    int rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        const std::uint32_t mask = 1u << bit;
        auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                                  [&](std::uint32_t r) { return (r & mask) != 0; });
        if (pivot == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, pivot);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

} // namespace detail

/// A regular 4^m 2^(n-p) design in 2^k runs. Four-level factor j is always
/// built from basic factors 2j and 2j+1; the two-level factors are given by
/// their GF(2) columns. Values are immutable once constructed.
class Design {
public:
    Design() = default;

    int k() const noexcept { return k_; }
    int m() const noexcept { return m_; }
    int n() const noexcept { return static_cast<int>(columns_.size()); }
    std::uint32_t runs() const noexcept { return 1u << k_; }
    /// Number of added factors, 2m + n - k. Negative only for projections that lost rank.
    int added() const noexcept { return 2 * m_ + n() - k_; }
    bool spans() const noexcept { return spans_; }

    const std::vector<Column>& two_level() const noexcept { return columns_; }

    /// Pseudo basics (2m of them, in factor order) followed by the two-level columns.
    std::vector<Column> all_columns() const {
        std::vector<Column> out;
        out.reserve(2 * m_ + columns_.size());
        for (int b = 0; b < 2 * m_; ++b) out.emplace_back(1u << b);
        out.insert(out.end(), columns_.begin(), columns_.end());
        return out;
    }

    bool contains(Column c) const noexcept {
        return std::find(columns_.begin(), columns_.end(), c) != columns_.end();
    }

    /// The design with one more two-level column appended.
    Design with_column(Column c) const {
        Design d = *this;
        d.columns_.push_back(c);
        d.spans_ = spans_ || compute_spans(k_, m_, d.columns_);
        return d;
    }

    bool operator==(const Design&) const = default;

    friend Design make_design(int k, int m, std::vector<Column> two_level);
    friend Design dop(const Design& d, int i);
    friend Design projection_design(int k, int m, std::vector<Column> two_level);

private:
    static bool compute_spans(int k, int m, const std::vector<Column>& cols) {
        std::vector<std::uint32_t> high;
        high.reserve(cols.size());
        for (Column c : cols) high.push_back(c.index() >> (2 * m));
        return detail::gf2_rank(std::move(high)) == k - 2 * m;
    }

    static void check_columns(int k, int m, const std::vector<Column>& cols) {
        if (k < 1 || k > kMaxBasicFactors)
            throw ValidationError("design: k must lie in [1, " + std::to_string(kMaxBasicFactors) + "]");
        if (m < 0 || 2 * m > k) throw ValidationError("design: need 0 <= 2m <= k");
        const std::uint32_t runs = 1u << k;
        std::vector<std::uint32_t> seen;
        seen.reserve(cols.size());
        for (Column c : cols) {
            if (c.index() == 0 || c.index() >= runs)
                throw ValidationError("design: column " + std::to_string(c.index()) + " out of range");
            seen.push_back(c.index());
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw ValidationError("design: duplicate two-level column");
    }

    int k_ = 1;
    int m_ = 0;
    std::vector<Column> columns_;
    bool spans_ = false;
};

/// Validated construction. The full column set must span GF(2)^k so that
/// all 2^k runs are distinct.
inline Design make_design(int k, int m, std::vector<Column> two_level) {
    Design::check_columns(k, m, two_level);
    Design d;
    d.k_ = k;
    d.m_ = m;
    d.spans_ = Design::compute_spans(k, m, two_level);
    if (!d.spans_) throw ValidationError("design: columns do not span all basic factors (replicated runs)");
    d.columns_ = std::move(two_level);
    return d;
}

inline Design make_design(int k, int m, std::initializer_list<std::uint32_t> two_level) {
    std::vector<Column> cols;
    for (auto c : two_level) cols.emplace_back(c);
    return make_design(k, m, std::move(cols));
}

/// Like make_design but accepts column sets that do not span (projections).
inline Design projection_design(int k, int m, std::vector<Column> two_level) {
    Design::check_columns(k, m, two_level);
    Design d;
    d.k_ = k;
    d.m_ = m;
    d.spans_ = Design::compute_spans(k, m, two_level);
    d.columns_ = std::move(two_level);
    return d;
}

/// Delete-one-factor projection: drops two-level column i.
inline Design dop(const Design& d, int i) {
    if (i < 0 || i >= d.n()) throw std::out_of_range("dop: index out of range");
    Design out;
    out.k_ = d.k_;
    out.m_ = d.m_;
    out.columns_ = d.columns_;
    out.columns_.erase(out.columns_.begin() + i);
    out.spans_ = Design::compute_spans(out.k_, out.m_, out.columns_);
    return out;
}

/// The basic-factor design: 2m pseudo basics plus the k - 2m remaining basics
/// as two-level factors.
inline Design seed_design(int k, int m) {
    std::vector<Column> cols;
    for (int b = 2 * m; b < k; ++b) cols.emplace_back(1u << b);
    return make_design(k, m, std::move(cols));
}

inline std::vector<std::uint32_t> column_indices(const Design& d) {
    std::vector<std::uint32_t> out;
    out.reserve(d.two_level().size());
    for (Column c : d.two_level()) out.push_back(c.index());
    return out;
}

} // namespace ffd

#endif // FFD_DESIGN_HPP
