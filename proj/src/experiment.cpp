#include "deepesn/experiment.hpp"

#include "deepesn/errors.hpp"
#include "deepesn/io.hpp"
#include "deepesn/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace deepesn {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Runs f(0..count-1) on up to `threads` workers. Every index owns its output
// slot, so the merged result does not depend on scheduling.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& f)
{
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Unit {
    std::size_t grid_index;
    std::size_t realization;
};

std::vector<Unit> work_units(const ExperimentConfig& cfg)
{
    std::vector<Unit> units;
    for (std::size_t g = 0; g < cfg.omega_il_grid.size(); ++g)
        for (std::size_t r = 0; r < cfg.realizations; ++r) units.push_back({g, r});
    return units;
}

std::vector<Record> flatten(std::vector<std::vector<Record>> per_unit)
{
    std::vector<Record> out;
    for (auto& v : per_unit)
        for (auto& r : v) out.push_back(std::move(r));
    return out;
}

std::filesystem::path grid_dir(const std::filesystem::path& base, double omega_il)
{
    return base / ("omega_il_" + format_12g(omega_il));
}

void require_task_fits(const ExperimentConfig& cfg, const TimeSeriesTask& task, bool need_test)
{
    const std::size_t need = cfg.train_len + (need_test ? cfg.effective_test_len() : 0);
    if (task.size() < need)
        throw DataError("task '" + task.name + "' has " + std::to_string(task.size()) + " samples, sweep needs "
                        + std::to_string(need));
}

bool row_less(const ResultRow& a, const ResultRow& b)
{
    return std::tie(a.task, a.omega_il, a.layer, a.metric) < std::tie(b.task, b.omega_il, b.layer, b.metric);
}

} // namespace

const char* to_string(TaskKind t) noexcept
{
    return t == TaskKind::narma10 ? "narma10" : "laser";
}

TaskKind parse_task_kind(const std::string& name)
{
    if (name == "narma10" || name == "narma") return TaskKind::narma10;
    if (name == "laser") return TaskKind::laser;
    throw InvalidArgument("unknown task '" + name + "' (expected narma10 or laser)");
}

std::size_t ExperimentConfig::effective_test_len() const
{
    if (test_len) return *test_len;
    return task == TaskKind::narma10 ? 5000 : 5092;
}

void ExperimentConfig::validate() const
{
    if (layers < 1) throw InvalidArgument("config: layers must be >= 1");
    if (units < 2) throw InvalidArgument("config: units must be >= 2 (entropy needs two units)");
    if (!(rho > 0.0)) throw InvalidArgument("config: rho must be positive");
    if (!(omega_in > 0.0)) throw InvalidArgument("config: omega-in must be positive");
    if (omega_il_grid.empty()) throw InvalidArgument("config: omega-il grid is empty");
    for (double w : omega_il_grid)
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("config: omega-il values must be positive");
    if (realizations < 1) throw InvalidArgument("config: realizations must be >= 1");
    if (washout >= train_len)
        throw InvalidArgument("config: washout " + std::to_string(washout) + " must be below train-len "
                              + std::to_string(train_len));
    if (effective_test_len() < 1) throw InvalidArgument("config: test-len must be >= 1");
    if (!(explained > 0.0 && explained <= 1.0)) throw InvalidArgument("config: explained must lie in (0, 1]");
    if (!(ridge >= 0.0)) throw InvalidArgument("config: ridge must be non-negative");
    if (task == TaskKind::laser && !laser_path) throw InvalidArgument("config: task laser needs --laser-path");
    lms.validate();
    entropy.validate();
}

const ResultRow* ResultTable::find(double omega_il, std::size_t layer, const std::string& metric) const
{
    for (const auto& r : rows)
        if (r.omega_il == omega_il && r.layer == layer && r.metric == metric) return &r;
    return nullptr;
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t realization)
{
    return derive_seed(master_seed, StreamTag::realization, realization);
}

ReservoirConfig reservoir_config(const ExperimentConfig& cfg, double omega_il, std::size_t realization)
{
    ReservoirConfig rc;
    rc.n_layers = cfg.layers;
    rc.units = cfg.units;
    rc.input_dim = 1;
    rc.spectral_radius = cfg.rho;
    rc.input_scaling = cfg.omega_in;
    rc.interlayer_scaling = omega_il;
    rc.seed = realization_seed(cfg.master_seed, realization);
    return rc;
}

TimeSeriesTask load_task(const ExperimentConfig& cfg)
{
    const std::size_t test = cfg.effective_test_len();
    if (cfg.task == TaskKind::narma10) {
        auto task = generate_narma10(cfg.train_len + test, derive_seed(cfg.master_seed, StreamTag::task_data, 0));
        return resplit(std::move(task), cfg.train_len, test);
    }
    if (!cfg.laser_path) throw InvalidArgument("config: task laser needs --laser-path");
    const auto series = load_laser(*cfg.laser_path, cfg.laser_scale);
    return next_step_task(series, cfg.train_len, test, "laser");
}

std::vector<Record> richness_records(const ExperimentConfig& cfg, const TimeSeriesTask& task)
{
    cfg.validate();
    require_task_fits(cfg, task, false);
    const auto units = work_units(cfg);
    std::vector<std::vector<Record>> out(units.size());
    const std::span<const double> inputs(task.inputs.data(), cfg.train_len);
    const UdOptions ud{cfg.explained, cfg.ud_centered};

    parallel_for(units.size(), cfg.threads, [&](std::size_t i) {
        const auto [g, r] = units[i];
        const double omega = cfg.omega_il_grid[g];
        const auto res = init_reservoir(reservoir_config(cfg, omega, r));
        if (cfg.weights_dir && r == 0) dump_weights_csv(res, grid_dir(*cfg.weights_dir, omega));
        const auto layers = run(res, inputs, cfg.washout);
        auto& recs = out[i];
        for (const auto& states : layers) {
            const std::size_t l = states.layer_index();
            recs.push_back({task.name, omega, r, l, "ase", average_state_entropy(states, cfg.entropy), ""});
            recs.push_back({task.name, omega, r, l, "ud", double(uncoupled_dynamics(states, ud)), ""});
            try {
                recs.push_back({task.name, omega, r, l, "log10_kappa", condition_number(states).log10_kappa, ""});
            } catch (const IllConditionedError&) {
                recs.push_back({task.name, omega, r, l, "log10_kappa", nan, "rank_deficient"});
            }
        }
    });
    return flatten(std::move(out));
}

std::vector<Record> richness_records(const ExperimentConfig& cfg)
{
    cfg.validate();
    return richness_records(cfg, load_task(cfg));
}

std::vector<Record> prediction_records(const ExperimentConfig& cfg, const TimeSeriesTask& task)
{
    cfg.validate();
    require_task_fits(cfg, task, true);
    const std::size_t test = cfg.effective_test_len();
    const std::size_t total = cfg.train_len + test;
    const std::size_t train_kept = cfg.train_len - cfg.washout;
    const std::span<const double> inputs(task.inputs.data(), total);

    auto target_row = [&](std::size_t first, std::size_t count) {
        return DenseMatrix(1, count,
                           std::vector<double>(task.targets.begin() + std::ptrdiff_t(first),
                                               task.targets.begin() + std::ptrdiff_t(first + count)));
    };
    const DenseMatrix train_targets = target_row(cfg.washout, train_kept);
    const DenseMatrix test_targets = target_row(cfg.train_len, test);

    if (cfg.traces_dir) std::filesystem::create_directories(*cfg.traces_dir);

    const auto units = work_units(cfg);
    std::vector<std::vector<Record>> out(units.size());
    parallel_for(units.size(), cfg.threads, [&](std::size_t i) {
        const auto [g, r] = units[i];
        const double omega = cfg.omega_il_grid[g];
        const auto res = init_reservoir(reservoir_config(cfg, omega, r));
        if (cfg.weights_dir && r == 0) dump_weights_csv(res, grid_dir(*cfg.weights_dir, omega));
        // one uninterrupted run; the test window continues the training window
        const auto layers = run(res, inputs, cfg.washout);
        auto& recs = out[i];
        for (const auto& states : layers) {
            const std::size_t l = states.layer_index();
            const auto train_states = states.slice(0, train_kept);
            const auto test_states = states.slice(train_kept, test);

            try {
                auto fit = train_lms(train_states, train_targets, cfg.lms, cfg.readout_bias);
                if (cfg.traces_dir)
                    write_loss_trace_csv(fit.trace, *cfg.traces_dir
                                                        / ("omega_il_" + format_12g(omega) + "_r" + std::to_string(r)
                                                           + "_layer" + std::to_string(l) + ".csv"));
                recs.push_back(
                    {task.name, omega, r, l, "test_mse_lms", mse(predict(fit.readout, test_states), test_targets), ""});
            } catch (const DivergenceError& e) {
                recs.push_back({task.name, omega, r, l, "test_mse_lms", e.trace().back(), "lms_diverged"});
            }

            try {
                const auto direct = train_direct(train_states, train_targets, cfg.ridge, cfg.readout_bias);
                recs.push_back(
                    {task.name, omega, r, l, "test_mse_direct", mse(predict(direct, test_states), test_targets), ""});
            } catch (const DegenerateSystemError&) {
                recs.push_back({task.name, omega, r, l, "test_mse_direct", nan, "degenerate"});
            }
        }
    });
    return flatten(std::move(out));
}

std::vector<Record> prediction_records(const ExperimentConfig& cfg)
{
    cfg.validate();
    return prediction_records(cfg, load_task(cfg));
}

ResultTable run_richness_sweep(const ExperimentConfig& cfg)
{
    return aggregate(richness_records(cfg));
}

ResultTable run_prediction_sweep(const ExperimentConfig& cfg)
{
    return aggregate(prediction_records(cfg));
}

ResultTable aggregate(const std::vector<Record>& records)
{
    using Key = std::tuple<std::string, double, std::size_t, std::string>;
    struct Group {
        std::vector<double> values;
        std::map<std::string, std::size_t> flags;
        std::size_t total = 0;
    };
    std::map<Key, Group> groups;
    for (const auto& rec : records) {
        auto& g = groups[Key{rec.task, rec.omega_il, rec.layer, rec.metric}];
        ++g.total;
        if (std::isfinite(rec.value)) g.values.push_back(rec.value);
        if (!rec.flag.empty()) ++g.flags[rec.flag];
    }

    ResultTable table;
    for (const auto& [key, g] : groups) {
        if (g.total == 0) throw InvalidArgument("aggregate: empty group");
        ResultRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), nan, nan, 0, ""};
        row.n = g.values.size();
        if (row.n > 0) {
            double sum = 0.0;
            for (double v : g.values) sum += v;
            row.mean = sum / double(row.n);
            double ss = 0.0;
            for (double v : g.values) ss += (v - row.mean) * (v - row.mean);
            row.std = std::sqrt(ss / double(row.n));
        }
        for (const auto& [flag, count] : g.flags) {
            if (!row.flags.empty()) row.flags += ';';
            row.flags += flag + "=" + std::to_string(count);
        }
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(), row_less);
    return table;
}

std::string to_csv(const ResultTable& table)
{
    auto rows = table.rows;
    std::sort(rows.begin(), rows.end(), row_less);
    std::ostringstream os;
    os << "task,omega_il,layer,metric,mean,std,n,flags\n";
    for (const auto& r : rows)
        os << r.task << ',' << format_12g(r.omega_il) << ',' << r.layer << ',' << r.metric << ','
           << format_12g(r.mean) << ',' << format_12g(r.std) << ',' << r.n << ',' << r.flags << '\n';
    return os.str();
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("emit_csv: cannot open " + path.string() + " for writing");
    f << to_csv(table);
    f.flush();
    if (!f) throw DataError("emit_csv: write failed for " + path.string());
}

ResultTable read_result_csv(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f) throw DataError("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    ResultTable table;
    while (std::getline(f, line)) {
        ++line_no;
        if (line_no == 1) continue;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 8)
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected 8 fields");
        ResultRow row;
        row.task = std::string(fields[0]);
        row.metric = std::string(fields[3]);
        row.flags = std::string(fields[7]);
        double layer = 0, n = 0;
        auto num = [&](std::string_view s, double& v) {
            if (trim(s) == "nan" || trim(s) == "-nan") {
                v = nan;
                return;
            }
            if (!parse_double(s, v)) throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad number");
        };
        num(fields[1], row.omega_il);
        num(fields[2], layer);
        num(fields[4], row.mean);
        num(fields[5], row.std);
        num(fields[6], n);
        row.layer = std::size_t(layer);
        row.n = std::size_t(n);
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace deepesn
