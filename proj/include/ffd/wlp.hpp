#ifndef FFD_WLP_HPP
#define FFD_WLP_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "design.hpp"
#include "errors.hpp"

namespace ffd {

inline constexpr int kMaxTwoLevelFactors = 256;
inline constexpr int kInfiniteResolution = std::numeric_limits<int>::max();

/// Subset of the two-level factor letters of a design.
class LetterSet {
public:
    static constexpr int kWords = kMaxTwoLevelFactors / 64;

    void flip(int i) noexcept { bits_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    bool test(int i) const noexcept { return (bits_[i / 64] >> (i % 64)) & 1u; }
    int count() const noexcept {
        int c = 0;
        for (auto w : bits_) c += std::popcount(w);
        return c;
    }
    bool empty() const noexcept {
        return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
    }
    LetterSet& operator^=(const LetterSet& o) noexcept {
        for (int w = 0; w < kWords; ++w) bits_[w] ^= o.bits_[w];
        return *this;
    }
    std::uint64_t word(int w) const noexcept { return bits_[w]; }
    bool operator==(const LetterSet&) const = default;

private:
    std::array<std::uint64_t, kWords> bits_{};
};

/// Number of four-level factors with at least one pseudo letter present.
constexpr int pseudo_type(std::uint32_t pseudo) noexcept {
    return std::popcount((pseudo | (pseudo >> 1)) & 0x55555555u);
}

/// A defining-relation element: a set of two-level letters together with the
/// pseudo basics (bit 2j = a1, bit 2j+1 = a2 of factor j) that make the
/// product of all member columns the identity.
struct Word {
    LetterSet two_level;
    std::uint32_t pseudo = 0;
    bool operator==(const Word&) const = default;
};

struct LengthType {
    int length;
    int type;
    bool operator==(const LengthType&) const = default;
};

/// Length after relabeling (both pseudo letters of one factor count once as
/// a3) and type (number of four-level factors involved).
inline LengthType word_length_type(const Word& w, int m) {
    const std::uint32_t p = w.pseudo & pseudo_mask(m);
    const int t = pseudo_type(p);
    return {w.two_level.count() + t, t};
}

/// A basis of the word group of a design, one word per dependent two-level column.
struct WordBasis {
    int m = 0;
    int n = 0;
    std::vector<Word> words;
};

inline WordBasis word_basis(const Design& d) {
    if (d.n() > kMaxTwoLevelFactors) throw ValidationError("word_basis: too many two-level factors");
    const int m = d.m();
    const std::uint32_t low_mask = pseudo_mask(m);
    struct Pivot {
        std::uint32_t high = 0;
        std::uint32_t low = 0;
        LetterSet letters;
        bool used = false;
    };
    std::array<Pivot, 32> pivot{};
    WordBasis basis{m, d.n(), {}};
    for (int i = 0; i < d.n(); ++i) {
        const std::uint32_t c = d.two_level()[i].index();
        std::uint32_t high = c >> (2 * m);
        std::uint32_t low = c & low_mask;
        LetterSet letters;
        letters.flip(i);
        while (high) {
            const int b = 31 - std::countl_zero(high);
            if (!pivot[b].used) {
                pivot[b] = {high, low, letters, true};
                break;
            }
            high ^= pivot[b].high;
            low ^= pivot[b].low;
            letters ^= pivot[b].letters;
        }
        if (high == 0) basis.words.push_back({letters, low});
    }
    return basis;
}

/// A_{i,t}: number of words of relabeled length i (1..m+n) and type t (0..m).
class WlpMatrix {
public:
    WlpMatrix() = default;
    WlpMatrix(int m, int max_length)
        : m_(m), max_length_(std::max(max_length, 0)),
          counts_(static_cast<std::size_t>(max_length_ + 1) * (m + 1), 0) {}

    int m() const noexcept { return m_; }
    int max_length() const noexcept { return max_length_; }

    std::int64_t at(int length, int type) const { return counts_.at(index(length, type)); }
    std::int64_t& at(int length, int type) { return counts_.at(index(length, type)); }

    /// A_{length,0..m}, by ascending type. Zero vector outside 1..max_length.
    std::vector<std::int64_t> a_vector(int length) const {
        std::vector<std::int64_t> out(m_ + 1, 0);
        if (length >= 1 && length <= max_length_)
            for (int t = 0; t <= m_; ++t) out[t] = at(length, t);
        return out;
    }

    std::int64_t total() const noexcept {
        std::int64_t s = 0;
        for (auto c : counts_) s += c;
        return s;
    }

    bool operator==(const WlpMatrix&) const = default;

private:
    std::size_t index(int length, int type) const {
        if (length < 0 || length > max_length_ || type < 0 || type > m_)
            throw std::out_of_range("WlpMatrix: index out of range");
        return static_cast<std::size_t>(length) * (m_ + 1) + type;
    }

    int m_ = 0;
    int max_length_ = 0;
    std::vector<std::int64_t> counts_;
};

namespace detail {

inline constexpr int kMaxWordDimension = 40;

template <int W, typename Visit>
void gray_walk(const WordBasis& basis, Visit&& visit) {
    const std::size_t dim = basis.words.size();
    if (dim > static_cast<std::size_t>(kMaxWordDimension)) throw ValidationError("too many defining words to enumerate");
    std::vector<std::array<std::uint64_t, W>> letters(dim);
    std::vector<std::uint32_t> pseudo(dim);
    for (std::size_t g = 0; g < dim; ++g) {
        for (int w = 0; w < W; ++w) letters[g][w] = basis.words[g].two_level.word(w);
        pseudo[g] = basis.words[g].pseudo;
    }
    std::array<std::uint64_t, W> cur{};
    std::uint32_t cur_pseudo = 0;
    const std::uint64_t total = std::uint64_t{1} << dim;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int g = std::countr_zero(i);
        for (int w = 0; w < W; ++w) cur[w] ^= letters[g][w];
        cur_pseudo ^= pseudo[g];
        visit(cur, cur_pseudo);
    }
}

template <typename Visit>
void for_each_word(const WordBasis& basis, Visit&& visit) {
    const int words = (basis.n + 63) / 64;
    if (words <= 1) gray_walk<1>(basis, visit);
    else if (words == 2) gray_walk<2>(basis, visit);
    else gray_walk<4>(basis, visit);
}

template <std::size_t W>
int letter_count(const std::array<std::uint64_t, W>& a) noexcept {
    int c = 0;
    for (auto w : a) c += std::popcount(w);
    return c;
}

} // namespace detail

/// All 2^p - 1 defining words.
inline std::vector<Word> defining_words(const Design& d) {
    const WordBasis basis = word_basis(d);
    std::vector<Word> out;
    out.reserve((std::size_t{1} << basis.words.size()) - 1);
    detail::for_each_word(basis, [&](const auto& letters, std::uint32_t pseudo) {
        Word w;
        for (std::size_t i = 0; i < letters.size(); ++i)
            for (std::uint64_t bits = letters[i]; bits; bits &= bits - 1)
                w.two_level.flip(static_cast<int>(i * 64) + std::countr_zero(bits));
        w.pseudo = pseudo;
        out.push_back(w);
    });
    return out;
}

inline WlpMatrix wlp(const Design& d) {
    const WordBasis basis = word_basis(d);
    WlpMatrix a(d.m(), d.m() + d.n());
    detail::for_each_word(basis, [&](const auto& letters, std::uint32_t pseudo) {
        const int t = pseudo_type(pseudo);
        ++a.at(detail::letter_count(letters) + t, t);
    });
    return a;
}

/// WLP of every delete-one-factor projection, computed from one pass over
/// the words of d: the words of d(i) are exactly the words of d avoiding i.
inline std::vector<WlpMatrix> dop_wlps(const Design& d) {
    const int n = d.n();
    const int m = d.m();
    const int max_len = m + n;
    const std::size_t stride = static_cast<std::size_t>(max_len + 1) * (m + 1);
    std::vector<std::int64_t> total(stride, 0);
    std::vector<std::int64_t> with(stride * n, 0);
    const WordBasis basis = word_basis(d);
    detail::for_each_word(basis, [&](const auto& letters, std::uint32_t pseudo) {
        const int t = pseudo_type(pseudo);
        const std::size_t cell = static_cast<std::size_t>(detail::letter_count(letters) + t) * (m + 1) + t;
        ++total[cell];
        for (std::size_t w = 0; w < letters.size(); ++w)
            for (std::uint64_t bits = letters[w]; bits; bits &= bits - 1)
                ++with[(w * 64 + std::countr_zero(bits)) * stride + cell];
    });
    std::vector<WlpMatrix> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        WlpMatrix a(m, max_len - 1);
        for (int len = 0; len <= max_len - 1; ++len)
            for (int t = 0; t <= m; ++t) {
                const std::size_t cell = static_cast<std::size_t>(len) * (m + 1) + t;
                a.at(len, t) = total[cell] - with[i * stride + cell];
            }
        out.push_back(std::move(a));
    }
    return out;
}

/// Smallest word length, or kInfiniteResolution when there are no words.
inline int resolution(const WlpMatrix& a) {
    for (int len = 1; len <= a.max_length(); ++len)
        for (int t = 0; t <= a.m(); ++t)
            if (a.at(len, t) > 0) return len;
    return kInfiniteResolution;
}

inline int resolution(const Design& d) { return resolution(wlp(d)); }

enum class AberrationOrdering { Type0, TypeM };

/// (A_3, ..., A_{m+n}) with each length block ordered by descending type
/// (TypeM) or ascending type (Type0).
inline std::vector<std::int64_t> flatten(const WlpMatrix& a, AberrationOrdering ordering) {
    std::vector<std::int64_t> out;
    if (a.max_length() < 3) return out;
    out.reserve(static_cast<std::size_t>(a.max_length() - 2) * (a.m() + 1));
    for (int len = 3; len <= a.max_length(); ++len)
        for (int i = 0; i <= a.m(); ++i)
            out.push_back(a.at(len, ordering == AberrationOrdering::TypeM ? a.m() - i : i));
    return out;
}

inline std::strong_ordering compare_aberration(const Design& d1, const Design& d2, AberrationOrdering ordering) {
    if (d1.m() != d2.m() || d1.n() != d2.n())
        throw ValidationError("compare_aberration: designs differ in (m, n)");
    const auto a = flatten(wlp(d1), ordering);
    const auto b = flatten(wlp(d2), ordering);
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

namespace detail {

inline void check_uniform(std::span<const Design> designs, const char* what) {
    if (designs.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
    for (const auto& d : designs)
        if (d.m() != designs.front().m() || d.n() != designs.front().n())
            throw ValidationError(std::string(what) + ": designs differ in (m, n)");
}

template <typename Key>
std::vector<std::size_t> arg_extreme(const std::vector<Key>& keys, bool want_max) {
    std::vector<std::size_t> best;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (best.empty()) {
            best.push_back(i);
            continue;
        }
        const auto& ref = keys[best.front()];
        if (keys[i] == ref) best.push_back(i);
        else if (want_max ? (ref < keys[i]) : (keys[i] < ref)) best = {i};
    }
    return best;
}

} // namespace detail

/// Indices of the designs attaining the lexicographic minimum of the flattened WLP.
inline std::vector<std::size_t> min_aberration_indices(std::span<const WlpMatrix> wlps, AberrationOrdering ordering) {
    std::vector<std::vector<std::int64_t>> keys;
    keys.reserve(wlps.size());
    for (const auto& a : wlps) keys.push_back(flatten(a, ordering));
    return detail::arg_extreme(keys, false);
}

inline std::vector<Design> select_min_aberration(std::span<const Design> designs, AberrationOrdering ordering) {
    detail::check_uniform(designs, "select_min_aberration");
    std::vector<WlpMatrix> wlps;
    for (const auto& d : designs) wlps.push_back(wlp(d));
    std::vector<Design> out;
    for (auto i : min_aberration_indices(wlps, ordering)) out.push_back(designs[i]);
    return out;
}

/// (A_{3,m}, ..., A_{3,0}), the key maximized by the worst-A3 selection.
inline std::vector<std::int64_t> a3_descending(const WlpMatrix& a) {
    auto v = a.a_vector(3);
    std::reverse(v.begin(), v.end());
    return v;
}

inline std::vector<std::size_t> worst_a3_indices(std::span<const WlpMatrix> wlps) {
    std::vector<std::vector<std::int64_t>> keys;
    keys.reserve(wlps.size());
    for (const auto& a : wlps) keys.push_back(a3_descending(a));
    return detail::arg_extreme(keys, true);
}

/// Designs whose A_3 vector sequentially maximizes A_{3,t} for t = m down to 0.
inline std::vector<Design> worst_a3(std::span<const Design> designs, int m) {
    detail::check_uniform(designs, "worst_a3");
    if (designs.front().m() != m) throw ValidationError("worst_a3: m does not match the designs");
    std::vector<WlpMatrix> wlps;
    for (const auto& d : designs) wlps.push_back(wlp(d));
    std::vector<Design> out;
    for (auto i : worst_a3_indices(wlps)) out.push_back(designs[i]);
    return out;
}

} // namespace ffd

#endif // FFD_WLP_HPP
