// deepesn: layer-wise richness and prediction sweeps for deep echo state networks.
//
//   deepesn richness  [flags]     ASE / UD / log10 kappa per layer
//   deepesn predict   [flags]     LMS and direct readout test MSE per layer
//   deepesn narma-gen [flags]     dump a NARMA-10 task as t,u,y_tg
//   deepesn measure   [flags]     measures of a user-supplied state CSV

#include "deepesn/deepesn.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace deepesn;

/// Flag storage for the sweep subcommands; applied on top of the config file.
struct SweepFlags {
    std::string config_path;
    std::string task;
    std::string laser_path;
    std::size_t layers = 0;
    std::size_t units = 0;
    double rho = 0;
    double omega_in = 0;
    std::vector<double> omega_il;
    std::size_t realizations = 0;
    std::size_t train_len = 0;
    std::size_t test_len = 0;
    std::size_t washout = 0;
    double lms_eta = 0;
    std::size_t lms_epochs = 0;
    std::uint64_t seed = 0;
    double explained = 0;
    std::string out;
    std::size_t threads = 1;
    double ridge = 0;
    bool readout_bias = false;
    bool ud_centered = false;
    double laser_scale = 0;
    std::string weights_dir;
    std::string traces_dir;
};

struct Registered {
    CLI::App* app;
    SweepFlags flags;
    std::vector<std::pair<CLI::Option*, std::string>> options;
};

void add_sweep_flags(Registered& r)
{
    auto& f = r.flags;
    auto* app = r.app;
    auto add = [&](CLI::Option* opt, std::string key) { r.options.emplace_back(opt, std::move(key)); };
    app->add_option("--config", f.config_path, "JSON file with flag-named keys; flags override it")
        ->check(CLI::ExistingFile);
    add(app->add_option("--task", f.task, "narma10 | laser"), "task");
    add(app->add_option("--laser-path", f.laser_path, "Santa Fe laser file, one sample per line"), "laser-path");
    add(app->add_option("--layers", f.layers, "number of reservoir layers (default 5)"), "layers");
    add(app->add_option("--units", f.units, "units per layer (default 100)"), "units");
    add(app->add_option("--rho", f.rho, "spectral radius of every recurrent matrix (default 0.9)"), "rho");
    add(app->add_option("--omega-in", f.omega_in, "2-norm of the input matrix (default 1)"), "omega-in");
    add(app->add_option("--omega-il", f.omega_il, "inter-layer 2-norm grid, repeatable (default 0.5 1 2)"),
        "omega-il");
    add(app->add_option("--realizations", f.realizations, "reservoir draws per grid value (default 15)"),
        "realizations");
    add(app->add_option("--train-len", f.train_len, "training length (default 5000)"), "train-len");
    add(app->add_option("--test-len", f.test_len, "test length (default 5000 narma10, 5092 laser)"), "test-len");
    add(app->add_option("--washout", f.washout, "discarded leading steps (default 1000)"), "washout");
    add(app->add_option("--lms-eta", f.lms_eta, "LMS learning rate (default 0.01)"), "lms-eta");
    add(app->add_option("--lms-epochs", f.lms_epochs, "LMS epochs (default 5000)"), "lms-epochs");
    add(app->add_option("--seed", f.seed, "master seed (default 1)"), "seed");
    add(app->add_option("--explained", f.explained, "explained fraction for UD (default 0.9)"), "explained");
    add(app->add_option("--out", f.out, "output CSV (stdout when omitted)"), "out");
    add(app->add_option("--threads", f.threads, "worker threads, 0 = all cores (default 1)"), "threads");
    add(app->add_option("--ridge", f.ridge, "ridge for the direct readout baseline (default 0)"), "ridge");
    add(app->add_flag("--readout-bias", f.readout_bias, "append a constant input to the readouts"), "readout-bias");
    add(app->add_flag("--ud-centered", f.ud_centered, "center unit activations before the UD spectrum"),
        "ud-centered");
    add(app->add_option("--laser-scale", f.laser_scale, "laser sample scale (default 0.01)"), "laser-scale");
    add(app->add_option("--weights-dir", f.weights_dir, "dump realization-0 weights per grid value"), "weights-dir");
    add(app->add_option("--traces-dir", f.traces_dir, "dump every LMS loss trace (predict only)"), "traces-dir");
}

/// Defaults, then config file, then explicitly given flags.
std::pair<ExperimentConfig, std::optional<std::string>> resolve(const Registered& r)
{
    ExperimentConfig cfg;
    std::optional<std::string> out;
    const auto& f = r.flags;
    if (!f.config_path.empty())
        if (auto file_out = apply_config_file(f.config_path, cfg)) out = file_out->string();
    for (const auto& [opt, key] : r.options) {
        if (opt->count() == 0) continue;
        if (key == "task") cfg.task = parse_task_kind(f.task);
        else if (key == "laser-path") cfg.laser_path = f.laser_path;
        else if (key == "layers") cfg.layers = f.layers;
        else if (key == "units") cfg.units = f.units;
        else if (key == "rho") cfg.rho = f.rho;
        else if (key == "omega-in") cfg.omega_in = f.omega_in;
        else if (key == "omega-il") cfg.omega_il_grid = f.omega_il;
        else if (key == "realizations") cfg.realizations = f.realizations;
        else if (key == "train-len") cfg.train_len = f.train_len;
        else if (key == "test-len") cfg.test_len = f.test_len;
        else if (key == "washout") cfg.washout = f.washout;
        else if (key == "lms-eta") cfg.lms.learning_rate = f.lms_eta;
        else if (key == "lms-epochs") cfg.lms.epochs = f.lms_epochs;
        else if (key == "seed") cfg.master_seed = f.seed;
        else if (key == "explained") cfg.explained = f.explained;
        else if (key == "out") out = f.out;
        else if (key == "threads") cfg.threads = f.threads;
        else if (key == "ridge") cfg.ridge = f.ridge;
        else if (key == "readout-bias") cfg.readout_bias = f.readout_bias;
        else if (key == "ud-centered") cfg.ud_centered = f.ud_centered;
        else if (key == "laser-scale") cfg.laser_scale = f.laser_scale;
        else if (key == "weights-dir") cfg.weights_dir = f.weights_dir;
        else if (key == "traces-dir") cfg.traces_dir = f.traces_dir;
    }
    cfg.validate();
    return {cfg, out};
}

void write_table(const ResultTable& table, const std::optional<std::string>& out)
{
    if (out) emit_csv(table, *out);
    else std::cout << to_csv(table);
}

int measure_states(const std::string& path, std::size_t washout, double explained, bool units_as_rows,
                   bool centered, const std::string& out)
{
    DenseMatrix m = read_matrix_csv(path);
    // default layout: one row per time step, one column per unit
    if (!units_as_rows) m = m.transposed();
    if (washout >= m.cols())
        throw InvalidArgument("measure: washout " + std::to_string(washout) + " leaves no columns out of "
                              + std::to_string(m.cols()));
    const std::size_t kept = m.cols() - washout;
    LayerStates states(1, m.column_slice(washout, kept), washout, m.cols());

    const double ase = average_state_entropy(states);
    const std::size_t ud = uncoupled_dynamics(states, UdOptions{explained, centered});
    std::string kappa = "nan", log10_kappa = "nan", flags;
    try {
        const auto c = condition_number(states);
        kappa = format_12g(c.kappa);
        log10_kappa = format_12g(c.log10_kappa);
    } catch (const IllConditionedError& e) {
        flags = "rank_deficient";
    }
    std::string csv = "units,kept,ase,ud,kappa,log10_kappa,flags\n" + std::to_string(states.units()) + ","
                      + std::to_string(kept) + "," + format_12g(ase) + "," + std::to_string(ud) + "," + kappa + ","
                      + log10_kappa + "," + flags + "\n";
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out);
        if (!f) throw DataError("cannot open " + out + " for writing");
        f << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Deep echo state network richness and readout sweeps"};
    app.require_subcommand(1);

    Registered richness{app.add_subcommand("richness", "per-layer ASE, UD and log10 kappa sweep"), {}, {}};
    add_sweep_flags(richness);
    Registered predict_cmd{app.add_subcommand("predict", "per-layer LMS / direct readout test MSE sweep"), {}, {}};
    add_sweep_flags(predict_cmd);

    auto* narma = app.add_subcommand("narma-gen", "write a NARMA-10 task as CSV (t,u,y_tg)");
    std::size_t narma_length = 10000;
    std::uint64_t narma_seed = 1;
    std::string narma_out;
    narma->add_option("--length", narma_length, "number of steps (default 10000)");
    narma->add_option("--seed", narma_seed, "input seed (default 1)");
    narma->add_option("--out", narma_out, "output CSV")->required();

    auto* measure = app.add_subcommand("measure", "ASE / UD / kappa of a state CSV");
    std::string states_path, measure_out;
    std::size_t measure_washout = 0;
    double measure_explained = 0.9;
    bool units_as_rows = false, measure_centered = false;
    measure->add_option("--states", states_path, "CSV, one row per time step and one column per unit")
        ->required()
        ->check(CLI::ExistingFile);
    measure->add_option("--washout", measure_washout, "leading time steps to drop (default 0)");
    measure->add_option("--explained", measure_explained, "explained fraction for UD (default 0.9)");
    measure->add_flag("--units-as-rows", units_as_rows, "CSV rows are units and columns are time steps");
    measure->add_flag("--ud-centered", measure_centered, "center unit activations before the UD spectrum");
    measure->add_option("--out", measure_out, "output CSV (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (richness.app->parsed()) {
            const auto [cfg, out] = resolve(richness);
            write_table(run_richness_sweep(cfg), out);
        } else if (predict_cmd.app->parsed()) {
            const auto [cfg, out] = resolve(predict_cmd);
            write_table(run_prediction_sweep(cfg), out);
        } else if (narma->parsed()) {
            write_task_csv(generate_narma10(narma_length, narma_seed), narma_out);
        } else if (measure->parsed()) {
            return measure_states(states_path, measure_washout, measure_explained, units_as_rows, measure_centered,
                                  measure_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "deepesn: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
