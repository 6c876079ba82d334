#pragma once

#include "deepesn/data.hpp"
#include "deepesn/measures.hpp"
#include "deepesn/readout.hpp"
#include "deepesn/reservoir.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace deepesn {

enum class TaskKind { narma10, laser };

const char* to_string(TaskKind t) noexcept;
TaskKind parse_task_kind(const std::string& name);

/// Sweep description. Defaults follow the reference protocol: 100 units,
/// rho 0.9, input scaling 1, inter-layer scaling in {0.5, 1, 2}, 15
/// realizations, 5000 training steps, washout 1000, LMS eta 0.01 for 5000
/// epochs, 5 layers.
struct ExperimentConfig {
    TaskKind task = TaskKind::narma10;
    std::optional<std::filesystem::path> laser_path;
    std::size_t layers = 5;
    std::size_t units = 100;
    double rho = 0.9;
    double omega_in = 1.0;
    std::vector<double> omega_il_grid{0.5, 1.0, 2.0};
    std::size_t realizations = 15;
    std::size_t train_len = 5000;
    std::optional<std::size_t> test_len; ///< 5000 for narma10, 5092 for laser when unset
    std::size_t washout = 1000;
    LmsParams lms;
    std::uint64_t master_seed = 1;
    double explained = 0.9;

    // extensions, all off or neutral by default
    double ridge = 0.0;
    bool readout_bias = false;
    bool ud_centered = false;
    double laser_scale = 0.01;
    EntropyParams entropy;
    std::size_t threads = 1; ///< 0: one per hardware thread
    std::optional<std::filesystem::path> weights_dir; ///< realization-0 weights per grid value
    std::optional<std::filesystem::path> traces_dir;  ///< every LMS loss trace

    std::size_t effective_test_len() const;
    void validate() const;
};

/// One measured value of one (grid value, realization, layer).
struct Record {
    std::string task;
    double omega_il;
    std::size_t realization;
    std::size_t layer; ///< 1-based
    std::string metric;
    double value; ///< NaN when the measure is undefined (see flag)
    std::string flag; ///< empty, "rank_deficient", "lms_diverged", "degenerate"
};

struct ResultRow {
    std::string task;
    double omega_il;
    std::size_t layer;
    std::string metric;
    double mean;
    double std;
    std::size_t n;
    std::string flags;

    bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    const ResultRow* find(double omega_il, std::size_t layer, const std::string& metric) const;
};

/// Realization seed: derive_seed(master_seed, realization, r). The grid index
/// is not mixed in, so every grid value rescales the same draws.
std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t realization);

ReservoirConfig reservoir_config(const ExperimentConfig& cfg, double omega_il, std::size_t realization);

/// The task a config describes (NARMA drawn from derive_seed(master, task_data, 0)).
TimeSeriesTask load_task(const ExperimentConfig& cfg);

/// Per-realization ASE / UD / log10 kappa on the training inputs.
std::vector<Record> richness_records(const ExperimentConfig& cfg, const TimeSeriesTask& task);
std::vector<Record> richness_records(const ExperimentConfig& cfg);

/// Per-realization test MSE of LMS and direct readouts, layer by layer.
std::vector<Record> prediction_records(const ExperimentConfig& cfg, const TimeSeriesTask& task);
std::vector<Record> prediction_records(const ExperimentConfig& cfg);

ResultTable run_richness_sweep(const ExperimentConfig& cfg);
ResultTable run_prediction_sweep(const ExperimentConfig& cfg);

/// Mean and population standard deviation per (task, omega_il, layer,
/// metric), rows in canonical order. NaN values are left out of the
/// statistics; n counts the values used and flags count each flag kind.
ResultTable aggregate(const std::vector<Record>& records);

/// Header `task,omega_il,layer,metric,mean,std,n,flags`, values with 12
/// significant digits, rows sorted by (task, omega_il, layer, metric).
void emit_csv(const ResultTable& table, const std::filesystem::path& path);
std::string to_csv(const ResultTable& table);
ResultTable read_result_csv(const std::filesystem::path& path);

} // namespace deepesn
