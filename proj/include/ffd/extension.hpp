#ifndef FFD_EXTENSION_HPP
#define FFD_EXTENSION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "design.hpp"
#include "errors.hpp"
#include "search_table.hpp"
#include "wlp.hpp"

namespace ffd {

enum class Method { SearchTable, Dop, Full };

inline std::string_view method_name(Method m) {
    switch (m) {
    case Method::SearchTable: return "st";
    case Method::Dop: return "dop";
    case Method::Full: return "full";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "st") return Method::SearchTable;
    if (s == "dop") return Method::Dop;
    if (s == "full") return Method::Full;
    return std::nullopt;
}

/// An (n+1)-factor design produced from a parent. `last_row` is the search
/// table row of the newest generator (ST method only; -1 marks a seed).
struct Candidate {
    Design design;
    std::optional<int> last_row;
    std::string parent_id;
};

/// A column may be added as a new two-level factor when it has relabeled
/// order >= 2 and is not already a factor of the design.
inline bool admissible_column(const Design& d, Column c) {
    return relabeled_order(c.index(), d.m()) >= 2 && !d.contains(c);
}

/// Search-table extension: one candidate per admissible row strictly below
/// the parent's last row.
inline std::vector<Candidate> st_extend(const Design& parent, int last_row, const SearchTable& table,
                                        std::string_view parent_id = {}) {
    if (table.k() != parent.k() || table.m() != parent.m())
        throw ValidationError("st_extend: search table does not match the design");
    std::vector<Candidate> out;
    for (std::size_t row = static_cast<std::size_t>(last_row + 1); row < table.size(); ++row) {
        const Column c = table[row].generator;
        if (table[row].relabeled_order < 2 || parent.contains(c)) continue;
        out.push_back({parent.with_column(c), static_cast<int>(row), std::string(parent_id)});
    }
    return out;
}

inline std::vector<Candidate> st_extend(const Candidate& parent, const SearchTable& table,
                                        std::string_view parent_id = {}) {
    if (!parent.last_row) throw ValidationError("st_extend: parent has no search-table row");
    return st_extend(parent.design, *parent.last_row, table, parent_id);
}

/// Sorted search-table rows of the design's generators (basic columns have no row).
inline std::vector<int> row_sequence(const Design& d, const SearchTable& table) {
    std::vector<int> rows;
    for (Column c : d.two_level()) {
        const int r = table.row_of(c);
        if (r >= 0) rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

/// Candidate indices stably sorted by lexicographic row sequence. Reduction
/// keeps the first member of each class, so each class is represented by its
/// member using the earliest rows.
inline std::vector<std::size_t> st_order(const std::vector<Candidate>& candidates, const SearchTable& table) {
    std::vector<std::vector<int>> keys;
    keys.reserve(candidates.size());
    for (const auto& c : candidates) keys.push_back(row_sequence(c.design, table));
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return order;
}

/// All admissible one-column extensions of resolution >= min_resolution.
inline std::vector<Candidate> full_extend(const Design& parent, int min_resolution, std::string_view parent_id = {}) {
    std::vector<Candidate> out;
    for (std::uint32_t c = 1; c < parent.runs(); ++c) {
        if (!admissible_column(parent, Column(c))) continue;
        Design cand = parent.with_column(Column(c));
        if (resolution(cand) < min_resolution) continue;
        out.push_back({std::move(cand), std::nullopt, std::string(parent_id)});
    }
    return out;
}

/// Delete-one-factor projection extension: keeps D_c = parent + c when its
/// resolution is at least min_resolution and the parent's type-m WLP equals
/// the minimum over all projections of D_c.
inline std::vector<Candidate> dop_extend(const Design& parent, int min_resolution, std::string_view parent_id = {}) {
    const auto parent_key = flatten(wlp(parent), AberrationOrdering::TypeM);
    std::vector<Candidate> out;
    for (std::uint32_t c = 1; c < parent.runs(); ++c) {
        if (!admissible_column(parent, Column(c))) continue;
        Design cand = parent.with_column(Column(c));
        if (resolution(wlp(cand)) < min_resolution) continue;
        bool parent_is_min = true;
        for (const auto& projection : dop_wlps(cand)) {
            if (flatten(projection, AberrationOrdering::TypeM) < parent_key) {
                parent_is_min = false;
                break;
            }
        }
        if (parent_is_min) out.push_back({std::move(cand), std::nullopt, std::string(parent_id)});
    }
    return out;
}

} // namespace ffd

#endif // FFD_EXTENSION_HPP
