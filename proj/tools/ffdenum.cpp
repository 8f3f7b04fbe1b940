#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ffd/ffd.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct EnumerateArgs {
    std::uint32_t runs = 0;
    int m = 0;
    int resolution = 3;
    int n_max = 0;
    std::string method = "st";
    std::string bounds;
    std::string out;
    unsigned workers = 0;
};

struct QueryArgs {
    std::string catalog;
    std::optional<std::uint32_t> runs;
    std::optional<int> m;
    std::optional<int> n;
    std::optional<int> min_resolution;
    std::string rank_by = "typem";
    std::optional<std::size_t> top;
};

struct ExportArgs {
    std::string catalog;
    std::string id;
    std::string format = "columns";
};

struct BenchArgs {
    std::vector<std::string> cases;
    int repeats = 1;
    std::string out;
};

unsigned resolve_workers(unsigned w) { return w == 0 ? ffd::default_workers() : w; }

int run_enumerate(const EnumerateArgs& a) {
    ffd::EnumerationConfig config;
    config.runs = a.runs;
    config.m = a.m;
    config.resolution = a.resolution;
    config.n_max = a.n_max;
    config.method = *ffd::parse_method(a.method);
    config.workers = resolve_workers(a.workers);
    if (!a.bounds.empty()) config.bounds = ffd::read_bounds_file(a.bounds);
    std::cout << "n,candidates,rejected_by_bounds,designs\n";
    ffd::enumerate_to_directory(config, a.out, [](const ffd::LevelResult& level) {
        std::cout << level.n << ',' << level.candidates << ',' << level.rejected_by_bounds << ','
                  << level.designs.size() << std::endl;
    });
    return 0;
}

int run_query(const QueryArgs& a) {
    const auto records = ffd::read_catalog_file(a.catalog);
    ffd::QueryFilter filter{a.runs, a.m, a.n, a.min_resolution};
    const auto ordering = a.rank_by == "type0" ? ffd::AberrationOrdering::Type0 : ffd::AberrationOrdering::TypeM;
    const auto ranked = ffd::query(records, filter, ordering, a.top);
    for (std::size_t i = 0; i < ranked.size(); ++i) std::cout << ffd::render_ranked(i + 1, ranked[i]) << '\n';
    return 0;
}

int run_export(const ExportArgs& a) {
    const auto records = ffd::read_catalog_file(a.catalog);
    const auto& record = ffd::find_record(records, a.id);
    std::cout << (a.format == "matrix" ? ffd::export_matrix(record) : ffd::export_columns(record));
    return 0;
}

int run_bench(const BenchArgs& a) {
    std::vector<ffd::BenchReport> reports;
    for (const auto& spec : a.cases) {
        auto report = ffd::run_bench(ffd::parse_bench_case(spec), a.repeats);
        std::cout << "case " << report.bench_case.label() << ": total seconds st=" << report.total_seconds[0]
                  << " dop=" << report.total_seconds[1] << " full=" << report.total_seconds[2] << '\n';
        for (const auto& c : report.checks)
            std::cout << "  n=" << c.n << " time st<=dop<=full: " << (c.time_ordered ? "yes" : "no")
                      << ", candidates full>=st: " << (c.counts_ordered ? "yes" : "no") << '\n';
        std::cout << "  st fastest overall: " << (report.st_fastest() ? "yes" : "no (deviation)") << '\n';
        reports.push_back(std::move(report));
    }
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + a.out + "'");
    ffd::write_bench_csv(out, reports);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerate, query and export regular 4^m 2^(n-p) designs"};
    app.require_subcommand(1);

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate non-isomorphic designs level by level");
    enumerate->add_option("--runs", ea.runs, "Run size N (power of two)")->required();
    enumerate->add_option("--four-level", ea.m, "Number of four-level factors m")->required();
    enumerate->add_option("--resolution", ea.resolution, "Minimum resolution")->check(CLI::IsMember({3, 4}));
    enumerate->add_option("--max-two-level", ea.n_max, "Largest number of two-level factors")->required();
    enumerate->add_option("--method", ea.method, "Extension method")->check(CLI::IsMember({"st", "dop", "full"}));
    enumerate->add_option("--bounds", ea.bounds, "Bounds file with lines m,n,d0,...,dm");
    enumerate->add_option("--out", ea.out, "Output directory")->required();
    enumerate->add_option("--workers", ea.workers, "Worker threads (0 = hardware concurrency)");

    QueryArgs qa;
    auto* query = app.add_subcommand("query", "Filter and rank catalog records");
    query->add_option("--catalog", qa.catalog, "Catalog file")->required();
    query->add_option("--runs", qa.runs, "Run size filter");
    query->add_option("--m", qa.m, "Four-level factor count filter");
    query->add_option("--n", qa.n, "Two-level factor count filter");
    query->add_option("--min-resolution", qa.min_resolution, "Minimum resolution filter");
    query->add_option("--rank-by", qa.rank_by, "Aberration ordering")->check(CLI::IsMember({"type0", "typem"}));
    query->add_option("--top", qa.top, "Number of records to print");

    ExportArgs xa;
    auto* exporter = app.add_subcommand("export", "Print one design");
    exporter->add_option("--catalog", xa.catalog, "Catalog file")->required();
    exporter->add_option("--id", xa.id, "Record id")->required();
    exporter->add_option("--format", xa.format, "Output format")->check(CLI::IsMember({"matrix", "columns"}));

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Time the three extension methods");
    bench->add_option("--case", ba.cases, "Case N,m,R,n_max (repeatable)")->required();
    bench->add_option("--repeats", ba.repeats, "Repeats per method")->check(CLI::PositiveNumber);
    bench->add_option("--out", ba.out, "CSV output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*enumerate) return run_enumerate(ea);
        if (*query) return run_query(qa);
        if (*exporter) return run_export(xa);
        if (*bench) return run_bench(ba);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}
