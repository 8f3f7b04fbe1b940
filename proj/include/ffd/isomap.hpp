#ifndef FFD_ISOMAP_HPP
#define FFD_ISOMAP_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "design.hpp"
#include "errors.hpp"
#include "run_matrix.hpp"

namespace ffd {

/// Isomorphic map on a run matrix: row permutation, permutations of the
/// four-level and two-level factors, a level permutation per four-level
/// factor and a sign switch per two-level factor. Entry i of each
/// permutation gives the image position of row/factor i.
struct IsoMap {
    std::vector<std::size_t> row_perm;
    std::vector<int> four_level_perm;
    std::vector<int> two_level_perm;
    std::vector<std::array<int, 4>> four_level_level_perms;
    std::vector<bool> two_level_sign_switches;

    bool operator==(const IsoMap&) const = default;
};

inline IsoMap identity_isomap(std::size_t runs, int m, int n) {
    IsoMap f;
    f.row_perm.resize(runs);
    std::iota(f.row_perm.begin(), f.row_perm.end(), std::size_t{0});
    f.four_level_perm.resize(m);
    std::iota(f.four_level_perm.begin(), f.four_level_perm.end(), 0);
    f.two_level_perm.resize(n);
    std::iota(f.two_level_perm.begin(), f.two_level_perm.end(), 0);
    f.four_level_level_perms.assign(m, {0, 1, 2, 3});
    f.two_level_sign_switches.assign(n, false);
    return f;
}

namespace detail {

inline void check_isomap(const IsoMap& f, std::size_t runs, int m, int n) {
    if (f.row_perm.size() != runs || f.four_level_perm.size() != static_cast<std::size_t>(m) ||
        f.two_level_perm.size() != static_cast<std::size_t>(n) ||
        f.four_level_level_perms.size() != static_cast<std::size_t>(m) ||
        f.two_level_sign_switches.size() != static_cast<std::size_t>(n))
        throw ValidationError("isomap: dimension mismatch");
}

} // namespace detail

inline RunMatrix apply_isomap(const RunMatrix& x, const IsoMap& f) {
    const int m = x.four_level_count();
    const int n = x.two_level_count();
    detail::check_isomap(f, x.runs(), m, n);
    RunMatrix y(x.runs(), m, n);
    for (std::size_t r = 0; r < x.runs(); ++r) {
        const std::size_t to = f.row_perm[r];
        for (int j = 0; j < m; ++j)
            y.set_four(to, f.four_level_perm[j], f.four_level_level_perms[j][x.four(r, j)]);
        for (int i = 0; i < n; ++i)
            y.set_two(to, f.two_level_perm[i], f.two_level_sign_switches[i] ? -x.two(r, i) : x.two(r, i));
    }
    return y;
}

/// The map equal to applying `first` and then `second`.
inline IsoMap compose(const IsoMap& first, const IsoMap& second) {
    const std::size_t runs = first.row_perm.size();
    const int m = static_cast<int>(first.four_level_perm.size());
    const int n = static_cast<int>(first.two_level_perm.size());
    detail::check_isomap(second, runs, m, n);
    IsoMap h = identity_isomap(runs, m, n);
    for (std::size_t r = 0; r < runs; ++r) h.row_perm[r] = second.row_perm[first.row_perm[r]];
    for (int j = 0; j < m; ++j) {
        const int mid = first.four_level_perm[j];
        h.four_level_perm[j] = second.four_level_perm[mid];
        for (int l = 0; l < 4; ++l)
            h.four_level_level_perms[j][l] = second.four_level_level_perms[mid][first.four_level_level_perms[j][l]];
    }
    for (int i = 0; i < n; ++i) {
        const int mid = first.two_level_perm[i];
        h.two_level_perm[i] = second.two_level_perm[mid];
        h.two_level_sign_switches[i] = first.two_level_sign_switches[i] != second.two_level_sign_switches[mid];
    }
    return h;
}

inline IsoMap inverse(const IsoMap& f) {
    const std::size_t runs = f.row_perm.size();
    const int m = static_cast<int>(f.four_level_perm.size());
    const int n = static_cast<int>(f.two_level_perm.size());
    IsoMap g = identity_isomap(runs, m, n);
    for (std::size_t r = 0; r < runs; ++r) g.row_perm[f.row_perm[r]] = r;
    for (int j = 0; j < m; ++j) {
        const int to = f.four_level_perm[j];
        g.four_level_perm[to] = j;
        for (int l = 0; l < 4; ++l) g.four_level_level_perms[to][f.four_level_level_perms[j][l]] = l;
    }
    for (int i = 0; i < n; ++i) {
        const int to = f.two_level_perm[i];
        g.two_level_perm[to] = i;
        g.two_level_sign_switches[to] = f.two_level_sign_switches[i];
    }
    return g;
}

/// Deterministic per seed; uniform within each component.
inline IsoMap random_isomap(const Design& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    IsoMap f = identity_isomap(d.runs(), d.m(), d.n());
    std::shuffle(f.row_perm.begin(), f.row_perm.end(), rng);
    std::shuffle(f.four_level_perm.begin(), f.four_level_perm.end(), rng);
    std::shuffle(f.two_level_perm.begin(), f.two_level_perm.end(), rng);
    for (auto& perm : f.four_level_level_perms) std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < f.two_level_sign_switches.size(); ++i) f.two_level_sign_switches[i] = coin(rng);
    return f;
}

} // namespace ffd

#endif // FFD_ISOMAP_HPP
