#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "isospec/deflation.hpp"
#include "isospec/matrix.hpp"
#include "isospec/rng.hpp"

namespace isospec {

struct TwTableConfig {
    double t_min = -6.0;
    double t_max = 3.0;
    double step = 0.25;
    int m = 60; // Airy-kernel quadrature size
    int grid_n = 1600;
    double l_minus = 8.0;
    double l_plus = 8.0;
};

struct SineGapConfig {
    double s_max = 2.0;
    double step = 0.1;
    int m = 50;
};

struct XyConfig {
    double beta = 1.0;
    double t_max = 10.0;
    double step = 0.5;
    int m = 60;
};

struct LisMcConfig {
    int dimension = 1000;
    int trials = 10000;
    std::uint64_t master_seed = 1;
    int workers = 0;
    std::string tw_table; // optional reference table (t, F); empty = compute
};

struct SampleEnsembleConfig {
    EnsembleKind kind = EnsembleKind::GOE;
    int dimension = 8;
    int trials = 1;
    std::uint64_t master_seed = 1;
};

struct TodaTraceConfig {
    EnsembleKind kind = EnsembleKind::GOE;
    int dimension = 8;
    std::uint64_t master_seed = 1;
    double t_max = 10.0;
    double dt = 0.1;
};

struct QrTraceConfig {
    EnsembleKind kind = EnsembleKind::GOE;
    int dimension = 8;
    std::uint64_t master_seed = 1;
    int iterations = 50;
};

struct StrobeCheckConfig {
    int dimension = 8;
    int trials = 10;
    int k_max = 5;
    std::uint64_t master_seed = 1;
};

using ConfigPayload =
    std::variant<UniversalityConfig, GapLawConfig, TwTableConfig, SineGapConfig, XyConfig,
                 LisMcConfig, SampleEnsembleConfig, TodaTraceConfig, QrTraceConfig,
                 StrobeCheckConfig>;

/// Fully validated experiment description. `echo` is the normalized JSON
/// form, reproduced verbatim in summary.json.
struct ExperimentConfig {
    std::string subcommand;
    std::string output_dir = "out";
    ConfigPayload payload;
    nlohmann::json echo;
};

/// Built-in presets encoding the reference parameter sets:
/// fig3a-qr, fig3b-toda, gap-law, tw-table, sine-gap, xy, lis-mc.
nlohmann::json preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Validates a JSON config ({"subcommand": ..., fields...}). Unknown keys
/// are rejected; missing required fields are reported by name.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Reads a JSON config file.
ExperimentConfig parse_config(const std::string& path);

/// Everything a run emits. Records are pre-formatted (17 significant
/// digits) so the writers produce byte-stable files.
struct RunResult {
    nlohmann::json summary; // config echo, statistics, tool version
    std::vector<std::string> records_header;
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> histogram_header;            // empty when no histogram
    std::vector<std::vector<std::string>> histogram_rows;
    std::vector<std::pair<std::string, Matrix>> matrices; // extra CSV artifacts
    double wall_seconds = 0.0;
};

/// Dispatches to the owning module and assembles the result tables.
RunResult run(const ExperimentConfig& config);

/// Writes records.csv, summary.json and (when present) histogram.csv plus
/// matrix artifacts under output_dir. Files are written to a temporary
/// name and renamed, so an interrupted run leaves no partial outputs.
void write_outputs(const RunResult& result, const std::string& output_dir);

} // namespace isospec
