#include "deepesn/reservoir.hpp"

#include "deepesn/errors.hpp"
#include "deepesn/io.hpp"
#include "deepesn/numerics.hpp"
#include "deepesn/rng.hpp"

#include <cmath>
#include <string>

namespace deepesn {

namespace {

constexpr IterativeOptions rescale_opts{1e-8, 10000};

DenseMatrix draw_uniform(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> data(rows * cols);
    for (double& v : data) v = rng.uniform(-1.0, 1.0);
    return DenseMatrix(rows, cols, std::move(data));
}

enum class Scaling { operator_norm, spectral_radius };

DenseMatrix draw_scaled(std::size_t rows, std::size_t cols, std::uint64_t seed, StreamTag tag, std::uint64_t layer,
                        Scaling how, double target, const char* name)
{
    for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
        DenseMatrix draw = draw_uniform(rows, cols, derive_seed(seed, tag, layer, attempt));
        const double current = how == Scaling::operator_norm ? operator_norm_2(draw, rescale_opts)
                                                             : spectral_radius(draw, rescale_opts);
        if (current > 0.0) return scaled(draw, target / current);
    }
    throw Error(std::string("init_reservoir: ") + name + " draw has zero scale after one redraw");
}

void advance(const DeepReservoir& res, std::span<const double> u, std::vector<std::vector<double>>& state,
             std::vector<double>& scratch)
{
    const std::size_t n = res.units();
    for (std::size_t l = 0; l < res.n_layers(); ++l) {
        const DenseMatrix& w_drive = l == 0 ? res.w_in() : res.w_inter()[l - 1];
        std::span<const double> drive = l == 0 ? u : std::span<const double>(state[l - 1]);
        const DenseMatrix& w_rec = res.w_rec()[l];
        for (std::size_t i = 0; i < n; ++i) {
            const double from_drive = dot(w_drive.row(i), drive);
            const double from_self = dot(w_rec.row(i), state[l]);
            scratch[i] = std::tanh(from_drive + from_self);
        }
        state[l].swap(scratch);
    }
}

std::vector<LayerStates> run_impl(const DeepReservoir& res, std::size_t t_total, std::size_t washout,
                                  auto&& input_at)
{
    if (t_total == 0) throw InvalidArgument("run: empty input sequence");
    if (washout >= t_total)
        throw InvalidArgument("run: washout " + std::to_string(washout) + " must be smaller than sequence length "
                              + std::to_string(t_total));
    const std::size_t n = res.units();
    const std::size_t kept = t_total - washout;
    std::vector<std::vector<double>> state(res.n_layers(), std::vector<double>(n, 0.0));
    std::vector<double> scratch(n);
    std::vector<std::vector<double>> collected(res.n_layers(), std::vector<double>(n * kept));

    for (std::size_t t = 0; t < t_total; ++t) {
        advance(res, input_at(t), state, scratch);
        if (t < washout) continue;
        const std::size_t col = t - washout;
        for (std::size_t l = 0; l < res.n_layers(); ++l)
            for (std::size_t i = 0; i < n; ++i) collected[l][i * kept + col] = state[l][i];
    }

    std::vector<LayerStates> out;
    out.reserve(res.n_layers());
    for (std::size_t l = 0; l < res.n_layers(); ++l)
        out.emplace_back(l + 1, DenseMatrix(n, kept, std::move(collected[l])), washout, t_total);
    return out;
}

} // namespace

void ReservoirConfig::validate() const
{
    if (n_layers < 1) throw InvalidArgument("ReservoirConfig: n_layers must be >= 1");
    if (units < 1) throw InvalidArgument("ReservoirConfig: units must be >= 1");
    if (input_dim < 1) throw InvalidArgument("ReservoirConfig: input_dim must be >= 1");
    if (!(spectral_radius > 0.0) || !std::isfinite(spectral_radius))
        throw InvalidArgument("ReservoirConfig: spectral_radius must be positive");
    if (!(input_scaling > 0.0) || !std::isfinite(input_scaling))
        throw InvalidArgument("ReservoirConfig: input_scaling must be positive");
    if (!(interlayer_scaling > 0.0) || !std::isfinite(interlayer_scaling))
        throw InvalidArgument("ReservoirConfig: interlayer_scaling must be positive");
}

DeepReservoir DeepReservoir::from_weights(DenseMatrix w_in, std::vector<DenseMatrix> w_inter,
                                          std::vector<DenseMatrix> w_rec, std::uint64_t seed)
{
    if (w_rec.empty()) throw DimensionError("DeepReservoir: at least one recurrent matrix required");
    if (w_inter.size() + 1 != w_rec.size())
        throw DimensionError("DeepReservoir: expected " + std::to_string(w_rec.size() - 1)
                             + " inter-layer matrices, got " + std::to_string(w_inter.size()));
    const std::size_t n = w_rec.front().rows();
    if (w_in.rows() != n) throw DimensionError("DeepReservoir: w_in must have one row per unit");
    for (const auto& m : w_rec)
        if (m.rows() != n || m.cols() != n) throw DimensionError("DeepReservoir: recurrent matrices must be NxN");
    for (const auto& m : w_inter)
        if (m.rows() != n || m.cols() != n) throw DimensionError("DeepReservoir: inter-layer matrices must be NxN");

    DeepReservoir res;
    res.config_.n_layers = w_rec.size();
    res.config_.units = n;
    res.config_.input_dim = w_in.cols();
    res.config_.seed = seed;
    res.config_.input_scaling = operator_norm_2(w_in, rescale_opts);
    res.config_.spectral_radius = spectral_radius(w_rec.front(), rescale_opts);
    res.config_.interlayer_scaling = w_inter.empty() ? 1.0 : operator_norm_2(w_inter.front(), rescale_opts);
    res.w_in_ = std::move(w_in);
    res.w_inter_ = std::move(w_inter);
    res.w_rec_ = std::move(w_rec);
    return res;
}

LayerStates::LayerStates(std::size_t layer_index, DenseMatrix states, std::size_t washout, std::size_t t_total)
  : layer_index_(layer_index), states_(std::move(states)), washout_(washout), t_total_(t_total)
{
    if (layer_index_ < 1) throw InvalidArgument("LayerStates: layer_index is 1-based");
    if (states_.empty()) throw DimensionError("LayerStates: empty state matrix");
    if (washout_ >= t_total_ || t_total_ - washout_ != states_.cols())
        throw DimensionError("LayerStates: kept columns " + std::to_string(states_.cols())
                             + " != t_total - washout = " + std::to_string(t_total_) + " - "
                             + std::to_string(washout_));
}

LayerStates LayerStates::slice(std::size_t first, std::size_t count) const
{
    return LayerStates(layer_index_, states_.column_slice(first, count), washout_ + first, washout_ + first + count);
}

DeepReservoir init_reservoir(const ReservoirConfig& config)
{
    config.validate();
    const std::size_t n = config.units;
    DeepReservoir res;
    res.config_ = config;
    res.w_in_ = draw_scaled(n, config.input_dim, config.seed, StreamTag::input_weights, 1, Scaling::operator_norm,
                            config.input_scaling, "w_in");
    for (std::size_t l = 1; l <= config.n_layers; ++l) {
        if (l >= 2)
            res.w_inter_.push_back(draw_scaled(n, n, config.seed, StreamTag::inter_weights, l, Scaling::operator_norm,
                                               config.interlayer_scaling, "w_inter"));
        res.w_rec_.push_back(draw_scaled(n, n, config.seed, StreamTag::recurrent_weights, l,
                                         Scaling::spectral_radius, config.spectral_radius, "w_rec"));
    }
    return res;
}

std::vector<DenseVector> step(const DeepReservoir& res, const DenseVector& u, const std::vector<DenseVector>& prev)
{
    if (u.size() != res.input_dim())
        throw DimensionError("step: input has length " + std::to_string(u.size()) + ", expected "
                             + std::to_string(res.input_dim()));
    if (prev.size() != res.n_layers())
        throw DimensionError("step: expected " + std::to_string(res.n_layers()) + " previous states");
    std::vector<std::vector<double>> state;
    state.reserve(prev.size());
    for (const auto& p : prev) {
        if (p.size() != res.units()) throw DimensionError("step: previous state has wrong length");
        state.push_back(p.raw());
    }
    std::vector<double> scratch(res.units());
    advance(res, u.values(), state, scratch);
    std::vector<DenseVector> out;
    out.reserve(state.size());
    for (auto& s : state) out.emplace_back(std::move(s));
    return out;
}

std::vector<LayerStates> run(const DeepReservoir& res, const std::vector<DenseVector>& inputs, std::size_t washout)
{
    for (const auto& u : inputs)
        if (u.size() != res.input_dim()) throw DimensionError("run: input vector has wrong length");
    return run_impl(res, inputs.size(), washout, [&](std::size_t t) { return inputs[t].values(); });
}

std::vector<LayerStates> run(const DeepReservoir& res, std::span<const double> inputs, std::size_t washout)
{
    if (res.input_dim() != 1) throw DimensionError("run: scalar inputs need input_dim == 1");
    return run_impl(res, inputs.size(), washout, [&](std::size_t t) { return inputs.subspan(t, 1); });
}

void dump_weights_csv(const DeepReservoir& res, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    write_matrix_csv(res.w_in(), dir / "w_in.csv");
    for (std::size_t l = 0; l < res.w_inter().size(); ++l)
        write_matrix_csv(res.w_inter()[l], dir / ("w_inter_" + std::to_string(l + 2) + ".csv"));
    for (std::size_t l = 0; l < res.w_rec().size(); ++l)
        write_matrix_csv(res.w_rec()[l], dir / ("w_rec_" + std::to_string(l + 1) + ".csv"));
}

} // namespace deepesn
