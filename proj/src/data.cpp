#include "deepesn/data.hpp"

#include "deepesn/errors.hpp"
#include "deepesn/io.hpp"
#include "deepesn/rng.hpp"

#include <cmath>
#include <fstream>

namespace deepesn {

namespace {

constexpr double narma_guard = 1e3;
constexpr int narma_attempts = 10;

bool finite_and_bounded(const std::vector<double>& v, double bound)
{
    for (double e : v)
        if (!std::isfinite(e) || std::abs(e) > bound) return false;
    return true;
}

std::vector<double> narma_targets(const std::vector<double>& u, const NarmaParams& p)
{
    const std::size_t n = u.size();
    const std::size_t order = p.order;
    std::vector<double> y(n, 0.0);
    // 1-based time t maps to index t - 1; anything at t <= 0 is zero
    auto y_at = [&](std::ptrdiff_t t) { return t >= 1 ? y[std::size_t(t - 1)] : 0.0; };
    auto u_at = [&](std::ptrdiff_t t) { return t >= 1 ? u[std::size_t(t - 1)] : 0.0; };
    for (std::ptrdiff_t t = 1; t <= std::ptrdiff_t(n); ++t) {
        double window = 0.0;
        for (std::size_t i = 1; i <= order; ++i) window += y_at(t - std::ptrdiff_t(i));
        const double prev = y_at(t - 1);
        y[std::size_t(t - 1)] = p.state_coeff * prev + p.sum_coeff * prev * window
                                + p.input_coeff * u_at(t - std::ptrdiff_t(order)) * u_at(t - 1) + p.offset;
    }
    return y;
}

} // namespace

void TimeSeriesTask::validate() const
{
    if (inputs.size() != targets.size())
        throw DimensionError("TimeSeriesTask '" + name + "': inputs and targets differ in length");
    if (inputs.size() < train_len + test_len)
        throw DimensionError("TimeSeriesTask '" + name + "': " + std::to_string(inputs.size())
                             + " samples cannot hold train " + std::to_string(train_len) + " + test "
                             + std::to_string(test_len));
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (!std::isfinite(inputs[i]) || !std::isfinite(targets[i]))
            throw DataError("TimeSeriesTask '" + name + "': non-finite value at index " + std::to_string(i));
}

TimeSeriesTask narma_from_inputs(std::vector<double> inputs, const NarmaParams& params)
{
    if (inputs.empty()) throw InvalidArgument("narma: length must be >= 1");
    if (params.order < 1) throw InvalidArgument("narma: order must be >= 1");
    auto targets = narma_targets(inputs, params);
    const std::size_t n = inputs.size();
    return TimeSeriesTask{"narma10", std::move(inputs), std::move(targets), n, 0};
}

TimeSeriesTask generate_narma10(std::size_t length, std::uint64_t seed, const NarmaParams& params)
{
    if (length < 1) throw InvalidArgument("generate_narma10: length must be >= 1");
    if (!(params.input_high >= params.input_low))
        throw InvalidArgument("generate_narma10: input range is empty");
    for (int attempt = 0; attempt < narma_attempts; ++attempt) {
        Rng rng(seed + std::uint64_t(attempt));
        std::vector<double> u(length);
        for (double& v : u) v = rng.uniform(params.input_low, params.input_high);
        auto task = narma_from_inputs(std::move(u), params);
        if (finite_and_bounded(task.targets, narma_guard)) return task;
    }
    throw Error("generate_narma10: target exceeded 1e3 on " + std::to_string(narma_attempts) + " consecutive seeds");
}

std::vector<double> load_laser(const std::filesystem::path& path, double scale, LaserFormat format)
{
    if (!std::isfinite(scale)) throw InvalidArgument("load_laser: scale must be finite");
    std::ifstream f(path);
    if (!f) throw DataError("load_laser: cannot read " + path.string());
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto fields =
            format == LaserFormat::comma ? split_fields(body, ',') : std::vector<std::string_view>{body};
        for (auto field : fields) {
            if (format == LaserFormat::comma && trim(field).empty()) continue;
            double v;
            if (!parse_double(field, v) || !std::isfinite(v))
                throw DataError("load_laser: " + path.string() + ":" + std::to_string(line_no) + ": not a number: '"
                                + std::string(trim(field)) + "'");
            out.push_back(v * scale);
        }
    }
    if (out.empty()) throw DataError("load_laser: " + path.string() + " contains no samples");
    return out;
}

TimeSeriesTask next_step_task(std::span<const double> series, std::size_t train_len, std::size_t test_len,
                              std::string name)
{
    const std::size_t required = train_len + test_len + 1;
    if (series.size() < required)
        throw DataError("next_step_task: series has " + std::to_string(series.size())
                        + " samples, needs at least " + std::to_string(required));
    TimeSeriesTask task;
    task.name = std::move(name);
    task.inputs.assign(series.begin(), series.end() - 1);
    task.targets.assign(series.begin() + 1, series.end());
    task.train_len = train_len;
    task.test_len = test_len;
    task.validate();
    return task;
}

TimeSeriesTask resplit(TimeSeriesTask task, std::size_t train_len, std::size_t test_len)
{
    task.train_len = train_len;
    task.test_len = test_len;
    task.validate();
    return task;
}

TaskSplit split(const TimeSeriesTask& task)
{
    task.validate();
    const auto tr = std::ptrdiff_t(task.train_len);
    const auto te = std::ptrdiff_t(task.train_len + task.test_len);
    return TaskSplit{{task.inputs.begin(), task.inputs.begin() + tr},
                     {task.targets.begin(), task.targets.begin() + tr},
                     {task.inputs.begin() + tr, task.inputs.begin() + te},
                     {task.targets.begin() + tr, task.targets.begin() + te}};
}

void write_task_csv(const TimeSeriesTask& task, const std::filesystem::path& path)
{
    std::ofstream f(path);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    f << "t,u,y_tg\n";
    for (std::size_t i = 0; i < task.inputs.size(); ++i)
        f << (i + 1) << ',' << format_exact(task.inputs[i]) << ',' << format_exact(task.targets[i]) << '\n';
    if (!f) throw DataError("write failed: " + path.string());
}

} // namespace deepesn
