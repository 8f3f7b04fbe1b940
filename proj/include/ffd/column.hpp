#ifndef FFD_COLUMN_HPP
#define FFD_COLUMN_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffd {

inline constexpr int kMaxBasicFactors = 20;

/// A nonzero element of GF(2)^k. Bit i set means basic factor i takes part
/// in the interaction that defines the column.
class Column {
public:
    constexpr Column() = default;
    constexpr explicit Column(std::uint32_t index) : index_(index) {}

    constexpr std::uint32_t index() const noexcept { return index_; }
    constexpr int order() const noexcept { return std::popcount(index_); }

    constexpr Column operator^(Column other) const noexcept { return Column(index_ ^ other.index_); }
    constexpr auto operator<=>(const Column&) const = default;

private:
    std::uint32_t index_ = 0;
};

/// Mask of the 2m basic factors used as pseudo-factor pairs.
constexpr std::uint32_t pseudo_mask(int m) noexcept {
    return m == 0 ? 0u : ((1u << (2 * m)) - 1u);
}

/// Number of four-level factors touched by a column (its type).
constexpr int column_type(std::uint32_t c, int m) noexcept {
    int t = 0;
    for (int j = 0; j < m; ++j)
        if ((c >> (2 * j)) & 3u) ++t;
    return t;
}

/// Letter count of a column after the pseudo-factors of each four-level
/// factor are collapsed into a single a1/a2/a3 letter.
constexpr int relabeled_order(std::uint32_t c, int m) noexcept {
    return column_type(c, m) + std::popcount(c >> (2 * m));
}

/// +1/-1 evaluation of a column over the 2^k runs in natural binary order.
/// Digit 0 of a basic factor maps to +1, digit 1 to -1.
inline std::vector<int> column_values(Column c, int k) {
    if (k < 1 || k > kMaxBasicFactors)
        throw std::domain_error("column_values: k out of range");
    const std::uint32_t runs = 1u << k;
    if (c.index() == 0 || c.index() >= runs)
        throw std::domain_error("column_values: column " + std::to_string(c.index()) +
                                " outside [1, 2^k - 1]");
    std::vector<int> values(runs);
    for (std::uint32_t r = 0; r < runs; ++r)
        values[r] = (std::popcount(r & c.index()) & 1) ? -1 : 1;
    return values;
}

/// Human-readable relabeled generator, e.g. "a1cd" for index 13 with m = 1.
inline std::string column_label(std::uint32_t c, int m) {
    std::string out;
    for (int j = 0; j < m; ++j) {
        const unsigned pair = (c >> (2 * j)) & 3u;
        if (pair == 0) continue;
        out += static_cast<char>('a' + 2 * j);
        out += static_cast<char>('0' + pair);
    }
    for (int b = 2 * m; b < 32; ++b)
        if ((c >> b) & 1u) out += static_cast<char>('a' + b);
    return out;
}

} // namespace ffd

#endif // FFD_COLUMN_HPP
