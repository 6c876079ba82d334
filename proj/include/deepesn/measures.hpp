#pragma once

#include "deepesn/matrix.hpp"
#include "deepesn/reservoir.hpp"

#include <cstddef>
#include <span>

namespace deepesn {

/// Kernel width for the quadratic-entropy estimator: the population standard
/// deviation of the instantaneous activations times shrink_factor, floored
/// at min_kernel_sigma.
struct EntropyParams {
    double shrink_factor = 0.3;
    double min_kernel_sigma = 1e-8;

    void validate() const;
};

struct UdOptions {
    double explained = 0.9;
    /// Subtract each unit's time mean first. Off: singular values of the raw
    /// state matrix are used.
    bool centered = false;
};

struct ConditionNumber {
    double kappa;
    double log10_kappa;
};

struct RichnessReport {
    std::size_t layer_index;
    double ase;
    std::size_t ud;
    double kappa;
    double log10_kappa;
};

/// Renyi quadratic entropy of one instantaneous state,
///   H = -log( (1/N^2) sum_j sum_i K(x_j - x_i) ),
/// with K the normalized Gaussian density of standard deviation sigma_k.
/// Diagonal (i == j) terms are included. Activations are sorted before
/// summation, so the result is exactly invariant under unit permutation.
double instantaneous_entropy(std::span<const double> x, const EntropyParams& params = {});

/// Time average of instantaneous_entropy over the kept columns.
double average_state_entropy(const LayerStates& s, const EntropyParams& params = {});

/// Smallest d with sum_{k<=d} sigma_k >= explained * sum_k sigma_k.
std::size_t uncoupled_dynamics(const SingularSpectrum& spectrum, double explained);
std::size_t uncoupled_dynamics(const LayerStates& s, const UdOptions& opts = {});

/// sigma_max / sigma_min; IllConditionedError when sigma_min < 1e-14 sigma_max.
ConditionNumber condition_number(const SingularSpectrum& spectrum);
ConditionNumber condition_number(const LayerStates& s);

/// All three measures for one layer (condition number may throw).
RichnessReport richness(const LayerStates& s, const EntropyParams& entropy = {}, const UdOptions& ud = {});

} // namespace deepesn
