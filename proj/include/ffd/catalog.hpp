#ifndef FFD_CATALOG_HPP
#define FFD_CATALOG_HPP

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "design.hpp"
#include "errors.hpp"
#include "wlp.hpp"

namespace ffd {

/// Identity encoded in a record id "N-m-n.r".
struct RecordKey {
    std::uint32_t runs = 0;
    int m = 0;
    int n = 0;
    int rank = 0;

    bool operator==(const RecordKey&) const = default;
};

/// One catalog line. `a[0..2]` hold A_3, A_4, A_5 by ascending type.
struct CatalogRecord {
    std::string id;
    std::vector<std::uint32_t> columns;
    int resolution = kInfiniteResolution;
    std::array<std::vector<std::int64_t>, 3> a;
    std::string parent_id;
    std::string method;

    bool operator==(const CatalogRecord&) const = default;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

inline int log2_exact(std::uint32_t runs) {
    if (runs < 2 || (runs & (runs - 1)) != 0) return -1;
    return std::countr_zero(runs);
}

} // namespace detail

inline std::string make_record_id(const RecordKey& key) {
    return std::to_string(key.runs) + "-" + std::to_string(key.m) + "-" + std::to_string(key.n) + "." +
           std::to_string(key.rank);
}

/// Parses "N-m-n.r"; throws ValidationError on malformed ids.
inline RecordKey parse_record_id(std::string_view id) {
    RecordKey key;
    const auto dot = id.rfind('.');
    if (dot == std::string_view::npos) throw ValidationError("malformed id '" + std::string(id) + "'");
    const auto parts = detail::split(id.substr(0, dot), '-');
    if (parts.size() != 3 || !detail::parse_number(parts[0], key.runs) || !detail::parse_number(parts[1], key.m) ||
        !detail::parse_number(parts[2], key.n) || !detail::parse_number(id.substr(dot + 1), key.rank) ||
        detail::log2_exact(key.runs) < 0 || key.m < 0 || key.n < 0 || key.rank < 1)
        throw ValidationError("malformed id '" + std::string(id) + "'");
    return key;
}

inline CatalogRecord make_record(const Design& d, const WlpMatrix& w, int rank, std::string parent_id,
                                 std::string method) {
    CatalogRecord r;
    r.id = make_record_id({d.runs(), d.m(), d.n(), rank});
    r.columns = column_indices(d);
    r.resolution = resolution(w);
    for (int len = 3; len <= 5; ++len) r.a[len - 3] = w.a_vector(len);
    r.parent_id = std::move(parent_id);
    r.method = std::move(method);
    return r;
}

inline CatalogRecord make_record(const Design& d, int rank, std::string parent_id, std::string method) {
    return make_record(d, wlp(d), rank, std::move(parent_id), std::move(method));
}

/// Rebuilds the design named by a record.
inline Design record_design(const CatalogRecord& r) {
    const RecordKey key = parse_record_id(r.id);
    std::vector<Column> cols;
    for (auto c : r.columns) cols.emplace_back(c);
    return make_design(detail::log2_exact(key.runs), key.m, std::move(cols));
}

inline std::string render_record(const CatalogRecord& r) {
    std::string out = r.id + ";";
    if (r.columns.empty()) out += "-";
    for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + std::to_string(r.columns[i]);
    out += ";";
    out += r.resolution == kInfiniteResolution ? std::string("inf") : std::to_string(r.resolution);
    for (const auto& v : r.a) {
        out += ";";
        for (std::size_t t = 0; t < v.size(); ++t) out += (t ? "," : "") + std::to_string(t) + ":" + std::to_string(v[t]);
    }
    out += ";" + (r.parent_id.empty() ? std::string("-") : r.parent_id) + ";" + r.method;
    return out;
}

/// Parses one record line; `line` is reported in errors.
inline CatalogRecord parse_record(std::string_view text, std::size_t line = 1) {
    const auto fail = [line](const std::string& what) { return ParseError(line, what); };
    const auto fields = detail::split(text, ';');
    if (fields.size() != 8) throw fail("expected 8 ';'-separated fields, found " + std::to_string(fields.size()));

    CatalogRecord r;
    r.id = std::string(fields[0]);
    RecordKey key;
    try {
        key = parse_record_id(r.id);
    } catch (const ValidationError& e) {
        throw fail(e.what());
    }

    if (fields[1] != "-") {
        for (auto tok : detail::split(fields[1], ',')) {
            std::uint32_t c = 0;
            if (!detail::parse_number(tok, c) || c == 0 || c >= key.runs)
                throw fail("bad column '" + std::string(tok) + "'");
            r.columns.push_back(c);
        }
    }
    if (static_cast<int>(r.columns.size()) != key.n) throw fail("column count does not match id");

    if (fields[2] == "inf") r.resolution = kInfiniteResolution;
    else if (!detail::parse_number(fields[2], r.resolution) || r.resolution < 1)
        throw fail("bad resolution '" + std::string(fields[2]) + "'");

    for (int i = 0; i < 3; ++i) {
        const auto pairs = detail::split(fields[3 + i], ',');
        if (static_cast<int>(pairs.size()) != key.m + 1) throw fail("A" + std::to_string(i + 3) + " needs m+1 entries");
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            const auto colon = pairs[t].find(':');
            int type = -1;
            std::int64_t count = -1;
            if (colon == std::string_view::npos || !detail::parse_number(pairs[t].substr(0, colon), type) ||
                !detail::parse_number(pairs[t].substr(colon + 1), count) || type != static_cast<int>(t) || count < 0)
                throw fail("bad type:count entry '" + std::string(pairs[t]) + "'");
            r.a[i].push_back(count);
        }
    }

    if (fields[6].empty()) throw fail("empty parent field");
    if (fields[6] != "-") r.parent_id = std::string(fields[6]);
    if (fields[7].empty()) throw fail("empty method field");
    r.method = std::string(fields[7]);
    return r;
}

inline constexpr std::string_view kCatalogHeader = "# id;columns;resolution;A3;A4;A5;parent;method";

inline void write_catalog(std::ostream& os, const std::vector<CatalogRecord>& records) {
    os << kCatalogHeader << '\n';
    for (const auto& r : records) os << render_record(r) << '\n';
}

/// Reads records, skipping blank lines and '#' comments. Ids must be unique.
inline std::vector<CatalogRecord> read_catalog(std::istream& is) {
    std::vector<CatalogRecord> out;
    std::set<std::string> ids;
    std::string text;
    std::size_t line = 0;
    while (std::getline(is, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty() || text.front() == '#') continue;
        auto r = parse_record(text, line);
        if (!ids.insert(r.id).second) throw ParseError(line, "duplicate id '" + r.id + "'");
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<CatalogRecord> read_catalog_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog '" + path.string() + "'");
    return read_catalog(in);
}

inline void write_catalog_file(const std::filesystem::path& path, const std::vector<CatalogRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write catalog '" + path.string() + "'");
    write_catalog(out, records);
}

} // namespace ffd

#endif // FFD_CATALOG_HPP
