#ifndef FFD_QUERY_HPP
#define FFD_QUERY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "isomorphism.hpp"
#include "run_matrix.hpp"
#include "wlp.hpp"

namespace ffd {

struct QueryFilter {
    std::optional<std::uint32_t> runs;
    std::optional<int> m;
    std::optional<int> n;
    std::optional<int> min_resolution;

    bool matches(const CatalogRecord& r) const {
        const RecordKey key = parse_record_id(r.id);
        return (!runs || key.runs == *runs) && (!m || key.m == *m) && (!n || key.n == *n) &&
               (!min_resolution || r.resolution >= *min_resolution);
    }
};

/// A_3, A_4, A_5 concatenated, each block by ascending (Type0) or descending (TypeM) type.
inline std::vector<std::int64_t> signature(const CatalogRecord& r, AberrationOrdering ordering) {
    std::vector<std::int64_t> out;
    for (const auto& v : r.a) {
        if (ordering == AberrationOrdering::TypeM) out.insert(out.end(), v.rbegin(), v.rend());
        else out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

struct RankedRecord {
    CatalogRecord record;
    std::vector<std::int64_t> signature;
};

/// Filtered records sorted by flattened WLP ascending under `ordering`, ties
/// broken by certificate; at most `top` results when given.
inline std::vector<RankedRecord> query(const std::vector<CatalogRecord>& records, const QueryFilter& filter,
                                       AberrationOrdering ordering, std::optional<std::size_t> top = std::nullopt) {
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> by_key;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!filter.matches(records[i])) continue;
        by_key[flatten(wlp(record_design(records[i])), ordering)].push_back(i);
    }
    std::vector<RankedRecord> out;
    const std::size_t limit = top.value_or(records.size());
    for (auto& [key, members] : by_key) {
        if (out.size() >= limit) break;
        if (members.size() > 1) {
            std::vector<std::pair<Certificate, std::size_t>> certs;
            for (auto i : members) certs.emplace_back(design_certificate(record_design(records[i])), i);
            std::stable_sort(certs.begin(), certs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t j = 0; j < members.size(); ++j) members[j] = certs[j].second;
        }
        for (auto i : members) {
            if (out.size() >= limit) break;
            out.push_back({records[i], signature(records[i], ordering)});
        }
    }
    return out;
}

inline std::string render_ranked(std::size_t rank, const RankedRecord& r) {
    std::string out = std::to_string(rank) + " " + r.record.id;
    std::size_t pos = 0;
    for (const auto& block : r.record.a) {
        out += " (";
        for (std::size_t t = 0; t < block.size(); ++t) out += (t ? "," : "") + std::to_string(r.signature[pos + t]);
        out += ")";
        pos += block.size();
    }
    return out;
}

inline const CatalogRecord& find_record(const std::vector<CatalogRecord>& records, const std::string& id) {
    for (const auto& r : records)
        if (r.id == id) return r;
    throw std::out_of_range("unknown id '" + id + "'");
}

/// The integer column list, comma separated.
inline std::string export_columns(const CatalogRecord& r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + std::to_string(r.columns[i]);
    return out + "\n";
}

/// N lines of comma-separated levels: four-level factors (0..3) then two-level factors (-1/+1).
inline std::string export_matrix(const CatalogRecord& r) {
    const RunMatrix x = design_matrix(record_design(r));
    std::string out;
    for (std::size_t row = 0; row < x.runs(); ++row) {
        bool first = true;
        const auto put = [&](int v) {
            if (!first) out += ',';
            out += std::to_string(v);
            first = false;
        };
        for (int j = 0; j < x.four_level_count(); ++j) put(x.four(row, j));
        for (int i = 0; i < x.two_level_count(); ++i) put(x.two(row, i));
        out += '\n';
    }
    return out;
}

/// Reads a comma-separated column list as produced by export_columns.
inline std::vector<std::uint32_t> parse_column_list(std::string_view text) {
    std::vector<std::uint32_t> out;
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) return out;
    for (auto tok : detail::split(text, ',')) {
        std::uint32_t c = 0;
        if (!detail::parse_number(tok, c)) throw ParseError(1, "bad column '" + std::string(tok) + "'");
        out.push_back(c);
    }
    return out;
}

} // namespace ffd

#endif // FFD_QUERY_HPP
