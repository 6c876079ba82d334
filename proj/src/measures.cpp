#include "deepesn/measures.hpp"

#include "deepesn/errors.hpp"
#include "deepesn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace deepesn {

namespace {

// exp(-x) is exactly zero in double precision beyond this
constexpr double exp_underflow = 746.0;

void require_explained(double explained)
{
    if (!(explained > 0.0 && explained <= 1.0))
        throw InvalidArgument("uncoupled_dynamics: explained fraction must lie in (0, 1]");
}

// Spectrum of an N x T state matrix, padded with zeros to length N when T < N.
SingularSpectrum state_spectrum(const DenseMatrix& states)
{
    if (states.rows() <= states.cols()) return singular_values(states);
    auto values = singular_values(states.transposed()).values();
    values.resize(states.rows(), 0.0);
    return SingularSpectrum(std::move(values));
}

DenseMatrix centered_rows(const DenseMatrix& m)
{
    DenseMatrix out = m;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto row = out.row(r);
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= double(row.size());
        for (double& v : row) v -= mean;
    }
    return out;
}

} // namespace

void EntropyParams::validate() const
{
    if (!(shrink_factor > 0.0) || !std::isfinite(shrink_factor))
        throw InvalidArgument("EntropyParams: shrink_factor must be positive");
    if (!(min_kernel_sigma > 0.0) || !std::isfinite(min_kernel_sigma))
        throw InvalidArgument("EntropyParams: min_kernel_sigma must be positive");
}

double instantaneous_entropy(std::span<const double> x, const EntropyParams& params)
{
    params.validate();
    const std::size_t n = x.size();
    if (n < 2) throw InvalidArgument("instantaneous_entropy: need at least 2 units, got " + std::to_string(n));

    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());

    // population variance as (1/n^2) sum_{i<j} (x_j - x_i)^2: built from
    // differences only, so a shift that moves every value exactly leaves it unchanged
    double var = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = v[j] - v[i];
            var += d * d;
        }
    var /= double(n) * double(n);

    const double sigma = std::max(params.shrink_factor * std::sqrt(var), params.min_kernel_sigma);
    const double two_var = 2.0 * sigma * sigma;

    // sum over ordered pairs of exp(-d^2 / 2 sigma^2): n diagonal ones plus
    // twice the strictly upper triangle
    double off = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = v[j] - v[i];
            const double e = d * d / two_var;
            if (e > exp_underflow) break;
            off += std::exp(-e);
        }
    }
    const double kernel_sum = double(n) + 2.0 * off;
    const double norm = std::sqrt(2.0 * std::numbers::pi) * sigma;
    return -std::log(kernel_sum / (double(n) * double(n) * norm));
}

double average_state_entropy(const LayerStates& s, const EntropyParams& params)
{
    const DenseMatrix& m = s.states();
    std::vector<double> column(m.rows());
    double total = 0.0;
    for (std::size_t t = 0; t < m.cols(); ++t) {
        for (std::size_t i = 0; i < m.rows(); ++i) column[i] = m(i, t);
        total += instantaneous_entropy(column, params);
    }
    return total / double(m.cols());
}

std::size_t uncoupled_dynamics(const SingularSpectrum& spectrum, double explained)
{
    require_explained(explained);
    double total = 0.0;
    for (double s : spectrum.values()) total += s;
    if (!(total > 0.0))
        throw DegenerateSystemError("uncoupled_dynamics: all singular values are zero, relevances undefined");
    // 1e-12 relative slack absorbs rounding in the running sum
    const double needed = explained * total - 1e-12 * total;
    double cumulative = 0.0;
    for (std::size_t d = 0; d < spectrum.size(); ++d) {
        cumulative += spectrum[d];
        if (cumulative >= needed) return d + 1;
    }
    return spectrum.size();
}

std::size_t uncoupled_dynamics(const LayerStates& s, const UdOptions& opts)
{
    require_explained(opts.explained);
    const auto spectrum = opts.centered ? state_spectrum(centered_rows(s.states())) : state_spectrum(s.states());
    return uncoupled_dynamics(spectrum, opts.explained);
}

ConditionNumber condition_number(const SingularSpectrum& spectrum)
{
    const double hi = spectrum.largest();
    const double lo = spectrum.smallest();
    if (!(hi > 0.0) || lo < 1e-14 * hi)
        throw IllConditionedError("condition_number: smallest singular value below 1e-14 * largest (rank deficient)",
                                  hi);
    const double kappa = hi / lo;
    return {kappa, std::log10(kappa)};
}

ConditionNumber condition_number(const LayerStates& s)
{
    return condition_number(state_spectrum(s.states()));
}

RichnessReport richness(const LayerStates& s, const EntropyParams& entropy, const UdOptions& ud)
{
    require_explained(ud.explained);
    const auto raw = state_spectrum(s.states());
    const std::size_t d = ud.centered ? uncoupled_dynamics(s, ud) : uncoupled_dynamics(raw, ud.explained);
    const auto cond = condition_number(raw);
    return {s.layer_index(), average_state_entropy(s, entropy), d, cond.kappa, cond.log10_kappa};
}

} // namespace deepesn
