#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace deepesn {

/// Univariate input/target sequence. The first train_len pairs are the
/// training set; the next test_len pairs continue it as the test set.
struct TimeSeriesTask {
    std::string name;
    std::vector<double> inputs;
    std::vector<double> targets;
    std::size_t train_len = 0;
    std::size_t test_len = 0;

    void validate() const;
    std::size_t size() const noexcept { return inputs.size(); }
};

/// y(t) = a y(t-1) + b y(t-1) sum_{i=1..order} y(t-i) + c u(t-order) u(t-1) + d
struct NarmaParams {
    std::size_t order = 10;
    double state_coeff = 0.3;
    double sum_coeff = 0.05;
    double input_coeff = 1.5;
    double offset = 0.1;
    double input_low = 0.0;
    double input_high = 0.5;
};

/// Evaluates the recurrence on given inputs with zero history for t <= 0.
/// The task holds everything as training data.
TimeSeriesTask narma_from_inputs(std::vector<double> inputs, const NarmaParams& params = {});

/// Draws u(t) uniformly on [input_low, input_high] from Rng(seed) and
/// evaluates the recurrence. If any |y| exceeds 1e3 the series is redrawn
/// from seed + 1, seed + 2, ... (10 attempts in total).
TimeSeriesTask generate_narma10(std::size_t length, std::uint64_t seed, const NarmaParams& params = {});

enum class LaserFormat {
    one_per_line, ///< one sample per line
    comma,        ///< comma-separated samples, any number per line
};

/// Reads a Santa Fe style sample file and multiplies every value by scale.
std::vector<double> load_laser(const std::filesystem::path& path, double scale = 0.01,
                               LaserFormat format = LaserFormat::one_per_line);

/// Next-step prediction: inputs series[0..n-2], targets series[1..n-1].
/// Requires n >= train_len + test_len + 1.
TimeSeriesTask next_step_task(std::span<const double> series, std::size_t train_len, std::size_t test_len,
                              std::string name = "laser");

/// Same data, new train/test boundary.
TimeSeriesTask resplit(TimeSeriesTask task, std::size_t train_len, std::size_t test_len);

struct TaskSplit {
    std::vector<double> train_inputs;
    std::vector<double> train_targets;
    std::vector<double> test_inputs;
    std::vector<double> test_targets;
};

TaskSplit split(const TimeSeriesTask& task);

/// "t,u,y_tg" with t starting at 1.
void write_task_csv(const TimeSeriesTask& task, const std::filesystem::path& path);

} // namespace deepesn
