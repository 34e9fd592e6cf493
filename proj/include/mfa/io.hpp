#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfa/evolution.hpp"
#include "mfa/validation.hpp"

namespace mfa {

enum class OutputFormat { Csv, Json };
std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& name);

enum class ConfigModel { Fm, Afm, Int };

struct SweepConfig {
    std::string parameter = "chi"; // chi | lambda | nu
    std::vector<double> values;
};

struct SpectrumConfig {
    int n_max = 8;
    int levels = 0; // 0: use mirror_dim
};

struct ValidateConfig {
    int draws = 20;
    std::uint64_t seed = 0x5eed5eedULL;
};

/// Fully resolved run configuration. parse_config applies the documented
/// defaults and rejects unknown keys; resolved_config_json echoes the result,
/// defaults included, so every output can embed it.
struct RunConfig {
    SystemParams params;
    TensorLayout layout;
    StateSpec state;
    TimeGrid grid;
    ConfigModel model = ConfigModel::Int;
    PropagatorKind evolve_kind = PropagatorKind::Exact;
    EffVariant variant = EffVariant::Derivation;
    bool both_variants = false;
    bool with_operator_distance = true;
    bool override_regime = false;
    bool override_leakage = false;
    double leakage_threshold = 1e-8;
    int guard_band = 2;
    double fidelity_floor = 0.0;
    int max_total_dim = 8192;
    SweepConfig sweep;
    SpectrumConfig spectrum;
    ValidateConfig validate;
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::Csv;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

nlohmann::json resolved_config_json(const RunConfig& config);

// 17-significant-digit decimal rendering, '.' separator, locale-free.
std::string format_double(double v);

// Write content to path via a temp file plus rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

struct Column {
    std::string name;
    const std::vector<double>* data;
};

// Header row then one row per sample, LF endings.
std::string csv_table(const std::vector<Column>& columns);

void write_series(const ObservableSeries& series, const RunConfig& config,
                  const std::filesystem::path& path, OutputFormat format);
void write_report(const ComparisonReport& report, const RunConfig& config,
                  const std::filesystem::path& path, OutputFormat format);

struct SpectrumRow {
    int n = 0;
    int s = 0;
    int level = 0;
    double analytic = 0.0; // NaN when the sector is unstable
    double numeric = 0.0;
    bool stable = true;
};
void write_spectrum(const std::vector<SpectrumRow>& rows, const RunConfig& config,
                    const std::filesystem::path& path, OutputFormat format);

struct SweepRow {
    double value = 0.0;
    double min_fidelity = 0.0;
    double max_xi1 = 0.0;
    double max_xi2 = 0.0;
    double min_resonance_distance = 0.0;
    std::string verdict;
};
void write_sweep(const std::vector<SweepRow>& rows, const RunConfig& config,
                 const std::filesystem::path& path, OutputFormat format);

void write_validation(const std::vector<CheckResult>& results, const RunConfig& config,
                      const std::filesystem::path& path, OutputFormat format);

} // namespace mfa
