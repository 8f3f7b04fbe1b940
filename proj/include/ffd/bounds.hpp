#ifndef FFD_BOUNDS_HPP
#define FFD_BOUNDS_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "design.hpp"
#include "errors.hpp"
#include "isomorphism.hpp"
#include "wlp.hpp"

namespace ffd {

/// Cap value that never rejects; written as "inf".
inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

/// Caps on the number of length-3 words by type, per (m, n).
class BoundSpec {
public:
    using Key = std::pair<int, int>;

    /// Adds or replaces the row for (m, n). Throws ConfigError on a bad row.
    void set(int m, int n, std::vector<std::int64_t> delta) {
        if (m < 0 || n < 0) throw ConfigError("bounds: negative m or n");
        if (static_cast<int>(delta.size()) != m + 1)
            throw ConfigError("bounds: row (" + std::to_string(m) + "," + std::to_string(n) + ") needs m+1 caps");
        for (auto v : delta)
            if (v < 0) throw ConfigError("bounds: negative cap");
        rows_[{m, n}] = std::move(delta);
    }

    const std::vector<std::int64_t>* find(int m, int n) const {
        auto it = rows_.find({m, n});
        return it == rows_.end() ? nullptr : &it->second;
    }

    bool contains(int m, int n) const { return rows_.count({m, n}) > 0; }
    const std::map<Key, std::vector<std::int64_t>>& rows() const noexcept { return rows_; }
    bool empty() const noexcept { return rows_.empty(); }

    /// Each cap must be non-decreasing in n over the rows defined for an m.
    void validate() const {
        for (auto it = rows_.begin(); it != rows_.end(); ++it) {
            auto next = std::next(it);
            if (next == rows_.end() || next->first.first != it->first.first) continue;
            for (std::size_t t = 0; t < it->second.size(); ++t)
                if (next->second[t] < it->second[t])
                    throw ConfigError("bounds: caps for m=" + std::to_string(it->first.first) + " decrease at n=" +
                                      std::to_string(next->first.second));
        }
    }

    bool operator==(const BoundSpec&) const = default;

private:
    std::map<Key, std::vector<std::int64_t>> rows_;
};

/// Reads lines "m,n,d0,...,dm" ('#' comments and blank lines ignored; "inf"
/// allowed for a cap) and validates the result.
inline BoundSpec parse_bounds(std::istream& is) {
    BoundSpec spec;
    std::string text;
    std::size_t line = 0;
    while (std::getline(is, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        const auto first = text.find_first_not_of(" \t");
        if (first == std::string::npos || text[first] == '#') continue;
        std::vector<std::int64_t> values;
        for (auto tok : detail::split(text, ',')) {
            const auto b = tok.find_first_not_of(" \t");
            const auto e = tok.find_last_not_of(" \t");
            tok = b == std::string_view::npos ? std::string_view{} : tok.substr(b, e - b + 1);
            std::int64_t v = 0;
            if (tok == "inf") v = kUnbounded;
            else if (!detail::parse_number(tok, v)) throw ParseError(line, "bad number '" + std::string(tok) + "'");
            values.push_back(v);
        }
        if (values.size() < 3) throw ParseError(line, "expected m,n,d0,...,dm");
        if (values[0] == kUnbounded || values[1] == kUnbounded) throw ParseError(line, "m and n must be finite");
        const int m = static_cast<int>(values[0]);
        const int n = static_cast<int>(values[1]);
        if (spec.contains(m, n)) throw ParseError(line, "duplicate row");
        try {
            spec.set(m, n, {values.begin() + 2, values.end()});
        } catch (const ConfigError& e) {
            throw ParseError(line, e.what());
        }
    }
    spec.validate();
    return spec;
}

inline BoundSpec read_bounds_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bounds file '" + path.string() + "'");
    return parse_bounds(in);
}

inline void write_bounds(std::ostream& os, const BoundSpec& spec) {
    os << "# m,n,d0,...,dm\n";
    for (const auto& [key, delta] : spec.rows()) {
        os << key.first << ',' << key.second;
        for (auto v : delta) os << ',' << (v == kUnbounded ? std::string("inf") : std::to_string(v));
        os << '\n';
    }
}

/// Caps used for the bounded 64-run resolution III enumerations.
inline BoundSpec builtin_bounds_64() {
    BoundSpec spec;
    for (int n = 17; n <= 20; ++n) spec.set(1, n, {0, 5});
    const std::int64_t m2[] = {12, 13, 14, 16, 16, 16, 16, 16};
    for (int n = 13; n <= 20; ++n) spec.set(2, n, {0, m2[n - 13], 0});
    const std::int64_t m3[] = {6, 7, 9, 11, 14, 16, 18, 19, 20, 21, 22};
    for (int n = 10; n <= 20; ++n) spec.set(3, n, {0, m3[n - 10], 6, 0});
    return spec;
}

/// True (keep) iff A_{3,t} <= cap_t for every type t. Throws ConfigError when
/// the bounds have no row for (m, n).
inline bool bound_filter(const WlpMatrix& a, int n, const BoundSpec& bounds) {
    const auto* delta = bounds.find(a.m(), n);
    if (!delta)
        throw ConfigError("bounds: no row for m=" + std::to_string(a.m()) + ", n=" + std::to_string(n));
    const auto a3 = a.a_vector(3);
    for (std::size_t t = 0; t < a3.size(); ++t)
        if (a3[t] > (*delta)[t]) return false;
    return true;
}

inline bool bound_filter(const Design& d, const BoundSpec& bounds) { return bound_filter(wlp(d), d.n(), bounds); }

/// Bounds from a seed design: the seed's A_3 at its own level, then at each
/// lower level the worst A_3 over all delete-one-factor projections of the
/// current worst set, which is reduced by isomorphism before descending.
inline BoundSpec compute_bounds(const Design& seed, int n_low, ReduceOptions options = {}) {
    const int n0 = seed.k() - 2 * seed.m();
    if (n_low < n0) throw ConfigError("compute_bounds: n_low is below the seed level " + std::to_string(n0));
    if (n_low > seed.n()) throw ConfigError("compute_bounds: n_low exceeds the seed's two-level factor count");
    BoundSpec spec;
    spec.set(seed.m(), seed.n(), wlp(seed).a_vector(3));
    std::vector<Design> worst{seed};
    for (int n = seed.n() - 1; n >= n_low; --n) {
        std::vector<Design> projections;
        for (const auto& d : worst)
            for (int i = 0; i < d.n(); ++i) projections.push_back(dop(d, i));
        std::vector<WlpMatrix> wlps(projections.size());
        parallel_for(projections.size(), options.workers, [&](std::size_t i) { wlps[i] = wlp(projections[i]); });
        const auto idx = worst_a3_indices(wlps);
        spec.set(seed.m(), n, wlps[idx.front()].a_vector(3));
        std::vector<Design> chosen;
        std::vector<WlpMatrix> chosen_wlps;
        for (auto i : idx) {
            chosen.push_back(projections[i]);
            chosen_wlps.push_back(wlps[i]);
        }
        const auto reduced = reduce_indices(chosen, chosen_wlps, options);
        worst.clear();
        for (auto i : reduced.representatives) worst.push_back(chosen[i]);
    }
    return spec;
}

} // namespace ffd

#endif // FFD_BOUNDS_HPP
