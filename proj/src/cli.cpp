#include "fdcv/cli.hpp"

#include "fdcv/config.hpp"
#include "fdcv/error.hpp"
#include "fdcv/reference_tables.hpp"
#include "fdcv/report.hpp"
#include "fdcv/selector.hpp"
#include "fdcv/simulation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fdcv {

namespace {

namespace fs = std::filesystem;

struct Common {
    std::string format = "text";
    std::string output_dir;
    int threads = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> c;
    std::optional<std::size_t> replications;
    std::optional<std::size_t> parzen_max;
};

void apply_threads(int threads)
{
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

void write_file(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path.string() + ": cannot write output file");
    f << content;
}

std::string ext_of(const std::string& format)
{
    return format == "json" ? ".json" : format == "csv" ? ".csv" : ".txt";
}

void check_c(double c)
{
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("--c: must lie in (0, 1)");
}

int cmd_estimate(const std::string& input, const std::string& restriction_text, const Common& o,
                 std::ostream& out)
{
    const double c = o.c.value_or(kDefaultBandExponent);
    check_c(c);
    const auto restriction = parse_restriction(restriction_text);
    apply_threads(o.threads);

    const TimeSeries series(load_series(input));
    CvOptions options;
    options.c = c;
    const auto result = select(series, CandidateClass::for_length(series.size(), 5, o.parzen_max),
                               restriction, options);

    std::string rendered;
    if (o.format == "json") {
        rendered = to_json(result).dump(2) + "\n";
    } else if (o.format == "csv") {
        rendered = estimate_csv(result);
    } else {
        rendered = estimate_text(result);
    }
    out << rendered;
    if (!o.output_dir.empty()) write_file(fs::path(o.output_dir) / ("estimate" + ext_of(o.format)), rendered);
    return kExitOk;
}

ExperimentConfig with_overrides(ExperimentConfig cfg, const Common& o)
{
    if (o.seed) cfg.seed = *o.seed;
    if (o.c) cfg.c = *o.c;
    if (o.replications) cfg.replications = *o.replications;
    if (o.threads > 0) cfg.threads = o.threads;
    if (o.parzen_max) cfg.parzen_max = o.parzen_max;
    cfg.validate();
    return cfg;
}

int cmd_simulate(const std::string& config_path, const Common& o, std::ostream& out)
{
    const auto cfg = with_overrides(experiment_from_config(load_key_values(config_path)), o);
    apply_threads(o.threads);
    const auto report = run_experiment(cfg);
    const auto json = to_json(report).dump(2) + "\n";
    const auto text = coverage_text(report);
    const fs::path dir = o.output_dir.empty() ? fs::path(".") : fs::path(o.output_dir);
    write_file(dir / "simulate.json", json);
    write_file(dir / "simulate.txt", text);
    if (o.format == "json") {
        out << json;
    } else if (o.format == "csv") {
        out << coverage_csv(report);
    } else {
        out << text;
    }
    return kExitOk;
}

std::vector<CoverageReport> run_grid(const ReproducePreset& preset, const Common& o,
                                     std::size_t replications, std::ostream& err)
{
    std::vector<CoverageReport> reports;
    for (double c : preset.c_values) {
        for (const auto& dgp : preset.dgps) {
            ExperimentConfig cfg;
            cfg.dgp = dgp;
            cfg.methods = preset.methods;
            cfg.replications = replications;
            cfg.c = c;
            if (o.seed) cfg.seed = *o.seed;
            cfg.threads = o.threads;
            err << "running " << dgp.label() << " n=" << dgp.n << " c=" << c << " ("
                << replications << " replications)\n";
            reports.push_back(run_experiment(cfg));
        }
    }
    return reports;
}

std::optional<std::vector<CoverageReport>> load_grid(const fs::path& path,
                                                     std::size_t replications,
                                                     std::optional<std::uint64_t> seed)
{
    std::ifstream f(path);
    if (!f) return std::nullopt;
    const auto j = nlohmann::json::parse(f, nullptr, false);
    if (j.is_discarded() || !j.contains("reports")) return std::nullopt;
    std::vector<CoverageReport> reports;
    for (const auto& r : j.at("reports")) reports.push_back(coverage_report_from_json(r));
    for (const auto& r : reports) {
        if (r.config.replications != replications) return std::nullopt;
        if (seed && r.config.seed != *seed) return std::nullopt;
    }
    return reports;
}

int cmd_reproduce(const std::string& table, bool fast, const Common& o, std::ostream& out,
                  std::ostream& err)
{
    const auto preset = reproduce_preset(table);
    if (o.c) throw ConfigError("--c: reproduce presets fix c; use simulate for other values");
    if (o.parzen_max) throw ConfigError("--parzen-max: reproduce presets use the default class");
    const std::size_t replications = o.replications.value_or(fast ? 500 : 3000);
    if (replications < 1) throw ConfigError("--replications: must be at least 1");
    apply_threads(o.threads);
    const fs::path dir = o.output_dir.empty() ? fs::path(".") : fs::path(o.output_dir);

    std::vector<CoverageReport> reports;
    if (preset.coverage_source) {
        // Efficiencies are a deterministic function of the coverages, so an
        // earlier run of the source grid is reused when it matches.
        const auto source = dir / ("reproduce_" + *preset.coverage_source + ".json");
        if (auto loaded = load_grid(source, replications, o.seed)) {
            err << "using coverages from " << source.string() << "\n";
            reports = std::move(*loaded);
        } else {
            reports = run_grid(reproduce_preset(*preset.coverage_source), o, replications, err);
        }
    } else {
        reports = run_grid(preset, o, replications, err);
    }

    const auto rows = compare(preset, reports);
    nlohmann::json j{{"schema_version", kSchemaVersion},
                     {"kind", "reproduce"},
                     {"table", preset.id},
                     {"title", preset.title},
                     {"replications", replications},
                     {"comparison", to_json(rows)}};
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));

    std::string text = preset.title + "\n\n";
    for (const auto& r : reports) text += coverage_text(r) + "\n";
    text += "Published vs observed\n" + comparison_text(rows);

    const auto stem = "reproduce_" + preset.id;
    write_file(dir / (stem + ".json"), j.dump(2) + "\n");
    write_file(dir / (stem + ".txt"), text);
    if (o.format == "json") {
        out << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        out << comparison_csv(rows);
    } else {
        out << text;
    }
    return kExitOk;
}

void add_common(CLI::App* app, Common& o, bool with_c, bool with_replications)
{
    app->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app->add_option("--output-dir", o.output_dir, "Directory for report files");
    app->add_option("--threads", o.threads, "OpenMP threads (0: all cores)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--seed", o.seed, "Base seed for every random stream");
    if (with_c) {
        app->add_option("--c", o.c, "Band exponent c in (0, 1)");
        app->add_option("--parzen-max", o.parzen_max, "Largest Parzen truncation (default m(n))")
            ->check(CLI::PositiveNumber);
    }
    if (with_replications) {
        app->add_option("--replications", o.replications, "Monte Carlo replications");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cross-validated HAC standard errors for the mean of a time series"};
    app.name("fdcv");
    app.require_subcommand(1);

    Common o;
    std::string input;
    std::string restriction = "all";
    auto* estimate = app.add_subcommand("estimate", "Estimate f(0) and intervals for one series");
    estimate->add_option("--input", input, "File with one value per line")->required();
    estimate->add_option("--restriction", restriction, "Candidate subset")
        ->check(CLI::IsMember({"all", "ar-only", "parzen-only"}));
    add_common(estimate, o, true, false);

    std::string config_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a coverage experiment from a config file");
    simulate_cmd->add_option("--config", config_path, "key = value experiment file")->required();
    add_common(simulate_cmd, o, true, true);

    std::string table;
    bool fast = false;
    auto* reproduce = app.add_subcommand("reproduce", "Re-run a published experiment grid");
    reproduce->add_option("table", table, "1-7 or c-study")->required();
    reproduce->add_flag("--fast", fast, "500 replications instead of 3000");
    add_common(reproduce, o, true, true);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*estimate) return cmd_estimate(input, restriction, o, out);
        if (*simulate_cmd) return cmd_simulate(config_path, o, out);
        if (*reproduce) return cmd_reproduce(table, fast, o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace fdcv
