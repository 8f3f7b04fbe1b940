#ifndef FFD_BENCH_HPP
#define FFD_BENCH_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catalog.hpp"
#include "enumerate.hpp"
#include "extension.hpp"

namespace ffd {

struct BenchCase {
    std::uint32_t runs = 32;
    int m = 1;
    int resolution = 3;
    int n_max = 10;

    std::string label() const {
        return std::to_string(runs) + "/" + std::to_string(m) + "/" + std::to_string(resolution) + "/" +
               std::to_string(n_max);
    }
};

/// Parses "N,m,R,n_max", e.g. "32,1,3,10".
inline BenchCase parse_bench_case(std::string_view text) {
    const auto parts = detail::split(text, ',');
    BenchCase c;
    if (parts.size() != 4 || !detail::parse_number(parts[0], c.runs) || !detail::parse_number(parts[1], c.m) ||
        !detail::parse_number(parts[2], c.resolution) || !detail::parse_number(parts[3], c.n_max))
        throw ConfigError("bench case must be N,m,R,n_max; got '" + std::string(text) + "'");
    return c;
}

inline constexpr std::array<Method, 3> kBenchMethods = {Method::SearchTable, Method::Dop, Method::Full};

/// Median timing and counts for one (method, level).
struct BenchRow {
    Method method = Method::SearchTable;
    int n = 0;
    std::size_t candidates = 0;
    std::size_t designs = 0;
    double seconds = 0.0;
};

struct BenchLevelCheck {
    int n = 0;
    bool time_ordered = false;  ///< st <= dop <= full by median time
    bool counts_ordered = false; ///< full candidates >= st candidates
};

struct BenchReport {
    BenchCase bench_case;
    int repeats = 1;
    std::vector<BenchRow> rows;
    std::vector<BenchLevelCheck> checks;
    double total_seconds[3] = {0, 0, 0};

    bool st_fastest() const { return total_seconds[0] <= total_seconds[1] && total_seconds[0] <= total_seconds[2]; }
    bool counts_ordered() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.counts_ordered; });
    }
};

/// Runs every method `repeats` times. Candidate counts must agree across
/// repeats; timings are medians.
inline BenchReport run_bench(const BenchCase& bench_case, int repeats, unsigned workers = 1) {
    if (repeats < 1) throw ConfigError("bench: repeats must be at least 1");
    BenchReport report;
    report.bench_case = bench_case;
    report.repeats = repeats;
    std::array<std::vector<BenchRow>, 3> per_method;
    for (std::size_t mi = 0; mi < kBenchMethods.size(); ++mi) {
        EnumerationConfig config{bench_case.runs, bench_case.m, bench_case.resolution, bench_case.n_max,
                                 kBenchMethods[mi], std::nullopt, workers};
        std::vector<std::vector<double>> times;
        std::vector<BenchRow>& rows = per_method[mi];
        for (int rep = 0; rep < repeats; ++rep) {
            const auto levels = enumerate(config);
            if (rep == 0) {
                times.resize(levels.size());
                for (const auto& level : levels)
                    rows.push_back({kBenchMethods[mi], level.n, level.candidates, level.designs.size(), 0.0});
            }
            if (levels.size() != rows.size()) throw std::runtime_error("bench: level count changed between repeats");
            for (std::size_t l = 0; l < levels.size(); ++l) {
                if (levels[l].candidates != rows[l].candidates || levels[l].designs.size() != rows[l].designs)
                    throw std::runtime_error("bench: counts changed between repeats");
                times[l].push_back(levels[l].seconds);
            }
        }
        for (std::size_t l = 0; l < rows.size(); ++l) {
            auto& t = times[l];
            std::sort(t.begin(), t.end());
            rows[l].seconds = t[t.size() / 2];
            report.total_seconds[mi] += rows[l].seconds;
        }
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
    const std::size_t levels = std::min({per_method[0].size(), per_method[1].size(), per_method[2].size()});
    for (std::size_t l = 1; l < levels; ++l) {
        const auto& st = per_method[0][l];
        const auto& dop = per_method[1][l];
        const auto& full = per_method[2][l];
        report.checks.push_back(
            {st.n, st.seconds <= dop.seconds && dop.seconds <= full.seconds, full.candidates >= st.candidates});
    }
    return report;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchReport>& reports) {
    os << "case,method,n,candidates,designs,seconds,st_le_dop_le_full_time,full_ge_st_candidates\n";
    for (const auto& report : reports) {
        for (const auto& row : report.rows) {
            const BenchLevelCheck* check = nullptr;
            for (const auto& c : report.checks)
                if (c.n == row.n) check = &c;
            os << report.bench_case.label() << ',' << method_name(row.method) << ',' << row.n << ',' << row.candidates
               << ',' << row.designs << ',' << row.seconds << ',' << (check ? (check->time_ordered ? "1" : "0") : "")
               << ',' << (check ? (check->counts_ordered ? "1" : "0") : "") << '\n';
        }
    }
}

} // namespace ffd

#endif // FFD_BENCH_HPP
