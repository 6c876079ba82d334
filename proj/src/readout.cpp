#include "deepesn/readout.hpp"

#include "deepesn/errors.hpp"
#include "deepesn/io.hpp"
#include "deepesn/numerics.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace deepesn {

namespace {

constexpr double divergence_threshold = 1e12;

void require_targets(const LayerStates& s, const DenseMatrix& targets, const char* who)
{
    if (targets.empty() || targets.cols() != s.kept())
        throw DimensionError(std::string(who) + ": targets have " + std::to_string(targets.cols())
                             + " columns, states have " + std::to_string(s.kept()));
}

DenseMatrix with_bias_row(const DenseMatrix& x)
{
    DenseMatrix out(x.rows() + 1, x.cols(), 1.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto src = x.row(r);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

// Samples as contiguous rows (T x n), optionally with a trailing 1.
std::vector<double> samples_by_row(const DenseMatrix& x, bool bias, std::size_t& width)
{
    width = x.rows() + (bias ? 1 : 0);
    std::vector<double> out(x.cols() * width, 1.0);
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t t = 0; t < x.cols(); ++t) out[t * width + r] = x(r, t);
    return out;
}

// Four interleaved partial sums; fixed order so results are reproducible.
inline double dot4(const double* a, const double* b, std::size_t n)
{
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

} // namespace

const char* to_string(ReadoutMethod m) noexcept
{
    return m == ReadoutMethod::direct ? "direct" : "lms";
}

void LmsParams::validate() const
{
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw InvalidArgument("LmsParams: learning_rate must be positive");
    if (epochs < 1) throw InvalidArgument("LmsParams: epochs must be >= 1");
}

Readout train_direct(const LayerStates& s, const DenseMatrix& targets, double ridge, bool bias)
{
    require_targets(s, targets, "train_direct");
    DenseMatrix w = bias ? least_squares_solve(with_bias_row(s.states()), targets, ridge)
                         : least_squares_solve(s.states(), targets, ridge);
    return Readout{std::move(w), s.layer_index(), ReadoutMethod::direct, bias};
}

LmsResult train_lms(const LayerStates& s, const DenseMatrix& targets, const LmsParams& params, bool bias)
{
    require_targets(s, targets, "train_lms");
    params.validate();

    std::size_t width = 0;
    const std::vector<double> x = samples_by_row(s.states(), bias, width);
    const std::size_t n_out = targets.rows();
    const std::size_t n_samples = s.kept();
    std::vector<double> y(n_samples * n_out);
    for (std::size_t k = 0; k < n_out; ++k)
        for (std::size_t t = 0; t < n_samples; ++t) y[t * n_out + k] = targets(k, t);

    std::vector<double> w(n_out * width, 0.0);
    const double eta = params.learning_rate;
    LossTrace trace;
    trace.per_epoch_mse.reserve(params.epochs);

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        for (std::size_t t = 0; t < n_samples; ++t) {
            const double* xt = &x[t * width];
            for (std::size_t k = 0; k < n_out; ++k) {
                double* wk = &w[k * width];
                const double step = eta * (y[t * n_out + k] - dot4(wk, xt, width));
                for (std::size_t i = 0; i < width; ++i) wk[i] += step * xt[i];
            }
        }
        double sse = 0.0;
        for (std::size_t t = 0; t < n_samples; ++t) {
            const double* xt = &x[t * width];
            for (std::size_t k = 0; k < n_out; ++k) {
                const double e = y[t * n_out + k] - dot4(&w[k * width], xt, width);
                sse += e * e;
            }
        }
        const double epoch_mse = sse / double(n_samples * n_out);
        trace.per_epoch_mse.push_back(epoch_mse);
        if (!std::isfinite(epoch_mse) || epoch_mse > divergence_threshold)
            throw DivergenceError("train_lms: diverged at epoch " + std::to_string(epoch + 1) + " (mse "
                                      + format_12g(epoch_mse) + ")",
                                  std::move(trace.per_epoch_mse));
    }

    return LmsResult{Readout{DenseMatrix(n_out, width, std::move(w)), s.layer_index(), ReadoutMethod::lms, bias},
                     std::move(trace)};
}

DenseMatrix predict(const Readout& r, const LayerStates& s)
{
    const std::size_t width = s.units() + (r.bias ? 1 : 0);
    if (r.weights.cols() != width)
        throw DimensionError("predict: readout expects " + std::to_string(r.weights.cols()) + " inputs, states give "
                             + std::to_string(width));
    const DenseMatrix& x = s.states();
    DenseMatrix out(r.weights.rows(), s.kept());
    std::vector<double> column(width, 1.0);
    for (std::size_t t = 0; t < s.kept(); ++t) {
        for (std::size_t i = 0; i < s.units(); ++i) column[i] = x(i, t);
        for (std::size_t k = 0; k < r.weights.rows(); ++k) out(k, t) = dot(r.weights.row(k), column);
    }
    return out;
}

double mse(const DenseMatrix& pred, const DenseMatrix& targets)
{
    if (pred.rows() != targets.rows() || pred.cols() != targets.cols() || pred.empty())
        throw DimensionError("mse: shape mismatch " + std::to_string(pred.rows()) + "x" + std::to_string(pred.cols())
                             + " vs " + std::to_string(targets.rows()) + "x" + std::to_string(targets.cols()));
    double sse = 0.0;
    const auto p = pred.values();
    const auto q = targets.values();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = p[i] - q[i];
        sse += e * e;
    }
    return sse / double(p.size());
}

void write_loss_trace_csv(const LossTrace& trace, const std::filesystem::path& path)
{
    std::ofstream f(path);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    f << "epoch,mse\n";
    for (std::size_t e = 0; e < trace.per_epoch_mse.size(); ++e)
        f << (e + 1) << ',' << format_exact(trace.per_epoch_mse[e]) << '\n';
    if (!f) throw DataError("write failed: " + path.string());
}

} // namespace deepesn
