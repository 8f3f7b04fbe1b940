#ifndef FFD_RUN_MATRIX_HPP
#define FFD_RUN_MATRIX_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "design.hpp"
#include "errors.hpp"

namespace ffd {

/// N runs; four-level factors hold levels 0..3, two-level factors hold -1/+1.
class RunMatrix {
public:
    RunMatrix() = default;
    RunMatrix(std::size_t runs, int four_level, int two_level)
        : runs_(runs), m_(four_level), n_(two_level),
          four_(runs * static_cast<std::size_t>(four_level), 0),
          two_(runs * static_cast<std::size_t>(two_level), 1) {}

    std::size_t runs() const noexcept { return runs_; }
    int four_level_count() const noexcept { return m_; }
    int two_level_count() const noexcept { return n_; }

    int four(std::size_t row, int j) const { return four_[row * m_ + j]; }
    int two(std::size_t row, int i) const { return two_[row * n_ + i]; }
    void set_four(std::size_t row, int j, int level) { four_[row * m_ + j] = static_cast<std::uint8_t>(level); }
    void set_two(std::size_t row, int i, int value) { two_[row * n_ + i] = static_cast<std::int8_t>(value); }

    bool operator==(const RunMatrix&) const = default;

private:
    std::size_t runs_ = 0;
    int m_ = 0;
    int n_ = 0;
    std::vector<std::uint8_t> four_;
    std::vector<std::int8_t> two_;
};

/// Grouping scheme: with a = basic factor 2j+1 and b = basic factor 2j,
/// (+1,+1) -> 0, (+1,-1) -> 1, (-1,+1) -> 2, (-1,-1) -> 3. In natural run
/// order this makes the level equal to the two-digit number formed by the pair.
constexpr int group_levels(int a, int b) noexcept {
    return (a < 0 ? 2 : 0) + (b < 0 ? 1 : 0);
}

/// Inverse of group_levels: the +1/-1 values of (a, b) for a level.
constexpr std::array<int, 2> ungroup_level(int level) noexcept {
    return {(level & 2) ? -1 : 1, (level & 1) ? -1 : 1};
}

inline RunMatrix design_matrix(const Design& d) {
    const std::uint32_t runs = d.runs();
    RunMatrix x(runs, d.m(), d.n());
    for (std::uint32_t r = 0; r < runs; ++r) {
        for (int j = 0; j < d.m(); ++j) {
            const int b = ((r >> (2 * j)) & 1u) ? -1 : 1;
            const int a = ((r >> (2 * j + 1)) & 1u) ? -1 : 1;
            x.set_four(r, j, group_levels(a, b));
        }
        for (int i = 0; i < d.n(); ++i)
            x.set_two(r, i, (std::popcount(r & d.two_level()[i].index()) & 1) ? -1 : 1);
    }
    return x;
}

namespace detail {

/// +1/-1 contrast columns of a run matrix: three pseudo contrasts per
/// four-level factor, then one per two-level factor.
inline std::vector<std::vector<int>> contrast_columns(const RunMatrix& x) {
    std::vector<std::vector<int>> cols;
    const std::size_t runs = x.runs();
    for (int j = 0; j < x.four_level_count(); ++j) {
        std::vector<int> a(runs), b(runs), ab(runs);
        for (std::size_t r = 0; r < runs; ++r) {
            const auto pair = ungroup_level(x.four(r, j));
            b[r] = pair[1];
            a[r] = pair[0];
            ab[r] = pair[0] * pair[1];
        }
        cols.push_back(std::move(b));
        cols.push_back(std::move(a));
        cols.push_back(std::move(ab));
    }
    for (int i = 0; i < x.two_level_count(); ++i) {
        std::vector<int> c(runs);
        for (std::size_t r = 0; r < runs; ++r) c[r] = x.two(r, i);
        cols.push_back(std::move(c));
    }
    return cols;
}

inline void walsh_hadamard(std::vector<long long>& v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1)
        for (std::size_t i = 0; i < v.size(); i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j) {
                const long long u = v[j], w = v[j + h];
                v[j] = u + w;
                v[j + h] = u - w;
            }
}

} // namespace detail

/// True iff every entry of N^-1 X'D is 0 or +-1, where X holds all 2^k - 1
/// basic-factor interaction contrasts in natural run order and D is the
/// +1/-1 coded design (four-level factors expanded to pseudo contrasts).
inline bool regularity_check(const RunMatrix& x, int k) {
    const std::size_t runs = x.runs();
    if (runs == 0 || !std::has_single_bit(runs))
        throw ValidationError("regularity_check: run count " + std::to_string(runs) + " is not a power of two");
    if (k < 1 || k > kMaxBasicFactors || runs != (std::size_t{1} << k))
        throw ValidationError("regularity_check: run count does not equal 2^k");
    for (const auto& col : detail::contrast_columns(x)) {
        std::vector<long long> v(col.begin(), col.end());
        detail::walsh_hadamard(v);
        for (std::size_t c = 1; c < runs; ++c) {
            const long long a = std::llabs(v[c]);
            if (a != 0 && a != static_cast<long long>(runs)) return false;
        }
    }
    return true;
}

/// Rebuilds a column-set design from a (possibly permuted) regular run
/// matrix. Row 0 is taken as the origin, the pseudo pairs of the four-level
/// factors become basic factors 0..2m-1 and independent two-level columns
/// fill the remaining basics in order.
inline Design recover_design(const RunMatrix& x, int k) {
    const std::size_t runs = x.runs();
    const int m = x.four_level_count();
    if (runs != (std::size_t{1} << k)) throw ValidationError("recover_design: run count does not equal 2^k");
    if (2 * m > k) throw ValidationError("recover_design: too many four-level factors");
    const std::size_t words = (runs + 63) / 64;
    using Bits = std::vector<std::uint64_t>;

    auto to_bits = [&](auto value_at) {
        Bits b(words, 0);
        const bool flip = value_at(0) < 0;
        for (std::size_t r = 0; r < runs; ++r)
            if ((value_at(r) < 0) != flip) b[r / 64] |= std::uint64_t{1} << (r % 64);
        return b;
    };

    std::vector<Bits> inputs;
    for (int j = 0; j < m; ++j) {
        inputs.push_back(to_bits([&](std::size_t r) { return ungroup_level(x.four(r, j))[1]; }));
        inputs.push_back(to_bits([&](std::size_t r) { return ungroup_level(x.four(r, j))[0]; }));
    }
    for (int i = 0; i < x.two_level_count(); ++i)
        inputs.push_back(to_bits([&](std::size_t r) { return x.two(r, i); }));

    struct Pivot {
        Bits vec;
        std::size_t bit;
        std::uint32_t coords;
    };
    std::vector<Pivot> pivots;
    std::vector<std::uint32_t> two_level_coords;
    std::vector<std::size_t> basis_input;
    int next_basic = 0;

    for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
        Bits v = inputs[idx];
        std::uint32_t coords = 0;
        for (const auto& p : pivots) {
            if ((v[p.bit / 64] >> (p.bit % 64)) & 1u) {
                for (std::size_t w = 0; w < words; ++w) v[w] ^= p.vec[w];
                coords ^= p.coords;
            }
        }
        std::size_t lead = runs;
        for (std::size_t w = 0; w < words && lead == runs; ++w)
            if (v[w]) lead = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
        const bool pseudo = idx < static_cast<std::size_t>(2 * m);
        if (lead == runs) {
            if (pseudo) throw ValidationError("recover_design: four-level factors are not a full factorial");
            two_level_coords.push_back(coords);
            continue;
        }
        if (next_basic >= k) throw ValidationError("recover_design: rank exceeds k");
        const std::uint32_t self = 1u << next_basic++;
        pivots.push_back({v, lead, coords ^ self});
        basis_input.push_back(idx);
        if (!pseudo) two_level_coords.push_back(self);
    }
    if (next_basic != k) throw ValidationError("recover_design: columns do not span 2^k distinct runs");

    // Rows must form the full factorial in the chosen basis.
    std::vector<char> seen(runs, 0);
    for (std::size_t r = 0; r < runs; ++r) {
        std::uint32_t code = 0;
        for (int b = 0; b < k; ++b) {
            const Bits& col = inputs[basis_input[b]];
            if ((col[r / 64] >> (r % 64)) & 1u) code |= 1u << b;
        }
        if (seen[code]++) throw ValidationError("recover_design: matrix is not regular");
    }

    std::vector<Column> cols;
    for (auto c : two_level_coords) cols.emplace_back(c);
    return make_design(k, m, std::move(cols));
}

} // namespace ffd

#endif // FFD_RUN_MATRIX_HPP
