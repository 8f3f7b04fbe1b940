#ifndef FFD_ENUMERATE_HPP
#define FFD_ENUMERATE_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "catalog.hpp"
#include "design.hpp"
#include "errors.hpp"
#include "extension.hpp"
#include "isomorphism.hpp"
#include "parallel.hpp"
#include "search_table.hpp"
#include "wlp.hpp"

namespace ffd {

struct EnumerationConfig {
    std::uint32_t runs = 16;
    int m = 1;
    int resolution = 3;
    int n_max = 0;
    Method method = Method::SearchTable;
    std::optional<BoundSpec> bounds;
    unsigned workers = 1;
};

/// Output of one level: the minimal complete set and its bookkeeping.
struct LevelResult {
    int n = 0;
    std::size_t candidates = 0;
    std::size_t rejected_by_bounds = 0;
    std::vector<Design> designs;
    std::vector<CatalogRecord> records;
    /// Search-table row of each representative's newest generator (ST only).
    std::vector<int> last_rows;
    double seconds = 0.0;
};

/// Number of basic factors for a valid configuration; throws ConfigError otherwise.
inline int check_config(const EnumerationConfig& c) {
    const int k = detail::log2_exact(c.runs);
    if (k < 1 || k > kMaxBasicFactors) throw ConfigError("run size must be a power of two between 2 and 2^20");
    if (c.m < 0 || 2 * c.m > k) throw ConfigError("infeasible configuration: 2m exceeds the number of basic factors");
    if (c.resolution < 3) throw ConfigError("resolution must be at least 3");
    const int n0 = k - 2 * c.m;
    const long long columns = (1LL << k) - 1 - 3LL * c.m;
    if (c.n_max < n0) throw ConfigError("n_max is below the seed level " + std::to_string(n0));
    if (c.n_max > columns)
        throw ConfigError("infeasible configuration: n_max exceeds the " + std::to_string(columns) + " available columns");
    if (c.n_max > kMaxTwoLevelFactors) throw ConfigError("n_max exceeds the supported two-level factor count");
    return k;
}

/// Level-by-level extension and reduction from the seed design. Levels are
/// n0 = k - 2m up to n_max; the run stops after the first empty level.
/// `on_level` is called once per finished level.
inline std::vector<LevelResult> enumerate(const EnumerationConfig& config,
                                          const std::function<void(const LevelResult&)>& on_level = {}) {
    using clock = std::chrono::steady_clock;
    const int k = check_config(config);
    const std::string tag(method_name(config.method));
    std::optional<SearchTable> table;
    if (config.method == Method::SearchTable) table = build_search_table(k, config.m);

    std::vector<LevelResult> levels;
    LevelResult seed_level;
    seed_level.n = k - 2 * config.m;
    seed_level.candidates = 1;
    seed_level.designs.push_back(seed_design(k, config.m));
    seed_level.records.push_back(make_record(seed_level.designs.front(), 1, "", tag));
    seed_level.last_rows.push_back(-1);
    if (on_level) on_level(seed_level);
    levels.push_back(std::move(seed_level));

    while (levels.back().n < config.n_max && !levels.back().designs.empty()) {
        const auto start = clock::now();
        const LevelResult& parent = levels.back();
        LevelResult level;
        level.n = parent.n + 1;

        std::vector<std::vector<Candidate>> per_parent(parent.designs.size());
        parallel_for(parent.designs.size(), config.workers, [&](std::size_t i) {
            const Design& d = parent.designs[i];
            const std::string& id = parent.records[i].id;
            switch (config.method) {
            case Method::SearchTable: per_parent[i] = st_extend(d, parent.last_rows[i], *table, id); break;
            case Method::Dop: per_parent[i] = dop_extend(d, config.resolution, id); break;
            case Method::Full: per_parent[i] = full_extend(d, config.resolution, id); break;
            }
        });
        std::vector<Candidate> candidates;
        for (auto& list : per_parent)
            for (auto& c : list) candidates.push_back(std::move(c));
        per_parent.clear();

        std::vector<WlpMatrix> wlps(candidates.size());
        parallel_for(candidates.size(), config.workers, [&](std::size_t i) { wlps[i] = wlp(candidates[i].design); });

        const bool bounded = config.bounds && config.bounds->contains(config.m, level.n);
        std::vector<Candidate> kept;
        std::vector<WlpMatrix> kept_wlps;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (resolution(wlps[i]) < config.resolution) continue;
            if (bounded && !bound_filter(wlps[i], level.n, *config.bounds)) {
                ++level.rejected_by_bounds;
                continue;
            }
            kept.push_back(std::move(candidates[i]));
            kept_wlps.push_back(std::move(wlps[i]));
        }
        candidates.clear();
        wlps.clear();
        if (table) {
            const auto order = st_order(kept, *table);
            std::vector<Candidate> sorted;
            std::vector<WlpMatrix> sorted_wlps;
            for (auto i : order) {
                sorted.push_back(std::move(kept[i]));
                sorted_wlps.push_back(std::move(kept_wlps[i]));
            }
            kept = std::move(sorted);
            kept_wlps = std::move(sorted_wlps);
        }
        level.candidates = kept.size();

        std::vector<Design> designs;
        designs.reserve(kept.size());
        for (auto& c : kept) designs.push_back(c.design);
        const auto reduced = reduce_indices(designs, kept_wlps, {config.workers});
        int rank = 0;
        for (auto i : reduced.representatives) {
            level.records.push_back(make_record(designs[i], kept_wlps[i], ++rank, kept[i].parent_id, tag));
            level.designs.push_back(std::move(designs[i]));
            level.last_rows.push_back(kept[i].last_row.value_or(-1));
        }
        level.seconds = std::chrono::duration<double>(clock::now() - start).count();
        if (on_level) on_level(level);
        levels.push_back(std::move(level));
    }
    return levels;
}

inline std::filesystem::path level_catalog_path(const std::filesystem::path& dir, std::uint32_t runs, int m, int n) {
    return dir / (std::to_string(runs) + "-" + std::to_string(m) + "-" + std::to_string(n) + ".cat");
}

/// Runs an enumeration and writes DIR/{N}-{m}-{n}.cat per level plus
/// DIR/counts.csv. File contents depend only on the configuration.
inline std::vector<LevelResult> enumerate_to_directory(const EnumerationConfig& config,
                                                       const std::filesystem::path& dir,
                                                       const std::function<void(const LevelResult&)>& on_level = {}) {
    check_config(config);
    std::filesystem::create_directories(dir);
    auto levels = enumerate(config, [&](const LevelResult& level) {
        write_catalog_file(level_catalog_path(dir, config.runs, config.m, level.n), level.records);
        if (on_level) on_level(level);
    });
    std::ofstream counts(dir / "counts.csv", std::ios::binary);
    if (!counts) throw std::runtime_error("cannot write counts file in '" + dir.string() + "'");
    counts << "runs,m,resolution,method,n,candidates,rejected_by_bounds,designs\n";
    for (const auto& level : levels)
        counts << config.runs << ',' << config.m << ',' << config.resolution << ',' << method_name(config.method) << ','
               << level.n << ',' << level.candidates << ',' << level.rejected_by_bounds << ',' << level.designs.size()
               << '\n';
    return levels;
}

} // namespace ffd

#endif // FFD_ENUMERATE_HPP
