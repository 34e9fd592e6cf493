#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mfa/io.hpp"
#include "mfa/version.hpp"

namespace fs = std::filesystem;
using namespace mfa;

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<std::string> variant;
    bool override_regime = false;
    bool serial = false;
};

RunConfig load_config(const CliOverrides& cli) {
    RunConfig config = parse_config_file(cli.config_path);
    if (cli.out_dir) config.output_dir = *cli.out_dir;
    if (cli.format) config.format = output_format_from_string(*cli.format);
    if (cli.variant) config.variant = eff_variant_from_string(*cli.variant);
    if (cli.override_regime) config.override_regime = true;
    if (!cli.out_dir && config.output_dir == ".") {
        if (const char* env = std::getenv("MFA_OUT_DIR")) config.output_dir = env;
    }
    return config;
}

fs::path output_path(const RunConfig& config, const char* command) {
    fs::create_directories(config.output_dir);
    return fs::path(config.output_dir) / (std::string(command) + "." + to_string(config.format));
}

Exec exec_policy(const CliOverrides& cli) {
    return cli.serial ? Exec::Serial : Exec::Parallel;
}

int run_validate(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    ValidationOptions opts;
    opts.layout = config.layout;
    opts.draws = config.validate.draws;
    opts.seed = config.validate.seed;
    opts.exec = exec_policy(cli);
    const std::vector<CheckResult> results = run_validation(opts);
    bool all = true;
    std::cout << "check                                      value        bound        result\n";
    for (const auto& r : results) {
        const std::string bound = r.bound_lo > 0.0
            ? "[" + format_double(r.bound_lo) + ", " + format_double(r.bound_hi) + "]"
            : "<= " + format_double(r.bound_hi);
        std::printf("%-40s %-12.4g %-16s %s\n", r.name.c_str(), r.value, bound.c_str(),
                    r.pass ? "pass" : "FAIL");
        all = all && r.pass;
    }
    write_validation(results, config, output_path(config, "validate"), config.format);
    if (!all) {
        std::cerr << "validation failed\n";
        return 1;
    }
    return 0;
}

int run_evolve(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    const StateVector psi0 = make_state(config.state, config.layout,
                                        {config.leakage_threshold, config.override_leakage});
    EvolveOptions opts;
    opts.variant = config.variant;
    opts.leakage_threshold = config.leakage_threshold;
    opts.guard = config.guard_band;
    opts.allow_leakage = config.override_leakage;
    opts.exec = exec_policy(cli);
    const ObservableSeries series = evolve(psi0, config.evolve_kind, config.grid, config.params, opts);
    write_series(series, config, output_path(config, "evolve"), config.format);
    std::cout << "evolve: " << series.times.size() << " samples, kind "
              << to_string(config.evolve_kind) << ", max leakage "
              << format_double(series.max_leakage) << "\n";
    return 0;
}

CompareOptions compare_options(const RunConfig& config, const CliOverrides& cli) {
    CompareOptions opts;
    opts.variant = config.variant;
    opts.both_variants = config.both_variants;
    opts.override_regime = config.override_regime;
    opts.with_operator_distance = config.with_operator_distance;
    opts.leakage_threshold = config.leakage_threshold;
    opts.guard = config.guard_band;
    opts.allow_leakage = config.override_leakage;
    opts.exec = exec_policy(cli);
    return opts;
}

int run_compare(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    const StateVector psi0 = make_state(config.state, config.layout,
                                        {config.leakage_threshold, config.override_leakage});
    const ComparisonReport report = compare(psi0, config.params, config.grid,
                                            compare_options(config, cli));
    write_report(report, config, output_path(config, "compare"), config.format);
    std::cout << "compare: min fidelity " << format_double(report.min_fidelity) << " ("
              << to_string(report.variant) << "), regime " << report.regime.verdict_name() << "\n";
    if (report.min_fidelity < config.fidelity_floor) {
        std::cerr << "min fidelity " << format_double(report.min_fidelity)
                  << " fell below the configured floor " << format_double(config.fidelity_floor) << "\n";
        return 3;
    }
    return 0;
}

int run_spectrum(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    const int levels = config.spectrum.levels > 0 ? config.spectrum.levels : config.layout.mirror_dim;
    std::vector<SpectrumRow> rows;
    for (int n = 0; n <= config.spectrum.n_max; ++n) {
        for (const int s : {+1, -1}) {
            const SectorSpec spec = sector_params(n, s, config.params, config.variant);
            const auto numeric = sector_spectrum(n, s, config.params, config.variant,
                                                 SpectrumMethod::Numeric, levels);
            std::vector<double> analytic;
            if (spec.stable)
                analytic = sector_spectrum(n, s, config.params, config.variant,
                                           SpectrumMethod::Analytic, levels);
            for (int m = 0; m < levels; ++m) {
                SpectrumRow row;
                row.n = n;
                row.s = s;
                row.level = m;
                row.numeric = numeric[static_cast<std::size_t>(m)];
                row.analytic = spec.stable ? analytic[static_cast<std::size_t>(m)]
                                           : std::numeric_limits<double>::quiet_NaN();
                row.stable = spec.stable;
                rows.push_back(row);
            }
        }
    }
    write_spectrum(rows, config, output_path(config, "spectrum"), config.format);
    std::cout << "spectrum: " << rows.size() << " levels over n <= " << config.spectrum.n_max << "\n";
    return 0;
}

int run_sweep(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    if (config.sweep.values.empty())
        throw ConfigError("sweep requires 'sweep.values' in the config");
    const StateVector psi0 = make_state(config.state, config.layout,
                                        {config.leakage_threshold, config.override_leakage});
    CompareOptions opts = compare_options(config, cli);
    opts.with_operator_distance = false; // summaries only
    opts.exec = Exec::Serial;            // points run in parallel below

    const std::size_t count = config.sweep.values.size();
    std::vector<SweepRow> rows(count);
    std::vector<std::exception_ptr> errors(count);
    kernels::for_each_index(count, exec_policy(cli), [&](std::size_t i) {
        try {
            SystemParams p = config.params;
            const double v = config.sweep.values[i];
            if (config.sweep.parameter == "chi")
                p.chi = v;
            else if (config.sweep.parameter == "lambda")
                p.lambda = v;
            else
                p.nu = v;
            const ComparisonReport r = compare(psi0, p, config.grid, opts);
            rows[i] = {v, r.min_fidelity, r.regime.max_xi1, r.regime.max_xi2,
                       r.regime.min_resonance_distance, r.regime.verdict_name()};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    write_sweep(rows, config, output_path(config, "sweep"), config.format);
    std::cout << "sweep: " << rows.size() << " points over " << config.sweep.parameter << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mirror-field-atom interaction toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliOverrides cli;
    for (auto* sub : {app.add_subcommand("validate", "run the exact-identity and property suites"),
                      app.add_subcommand("evolve", "evolve one trajectory and record observables"),
                      app.add_subcommand("compare", "exact vs effective dynamics from one state"),
                      app.add_subcommand("spectrum", "per-sector spectra of the effective model"),
                      app.add_subcommand("sweep", "parameter sweep of exact-vs-effective summaries")}) {
        sub->add_option("--config", cli.config_path, "path to the JSON run configuration")->required();
        sub->add_option("--out", cli.out_dir, "output directory (overrides output.dir)");
        sub->add_option("--format", cli.format, "output format: csv or json");
        sub->add_option("--variant", cli.variant, "effective variant: derivation or as_printed");
        sub->add_flag("--override-regime", cli.override_regime, "run even if the regime verdict is invalid");
        sub->add_flag("--serial", cli.serial, "disable the OpenMP kernels (timing reference)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("validate")) return run_validate(cli);
        if (app.got_subcommand("evolve")) return run_evolve(cli);
        if (app.got_subcommand("compare")) return run_compare(cli);
        if (app.got_subcommand("spectrum")) return run_spectrum(cli);
        if (app.got_subcommand("sweep")) return run_sweep(cli);
    } catch (const ModelAssumptionError& e) {
        std::cerr << "physics assumption violated: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
