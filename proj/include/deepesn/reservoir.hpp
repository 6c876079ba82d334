#pragma once

#include "deepesn/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace deepesn {

struct ReservoirConfig {
    std::size_t n_layers = 1;
    std::size_t units = 100;
    std::size_t input_dim = 1;
    double spectral_radius = 0.9;
    double input_scaling = 1.0;
    double interlayer_scaling = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Frozen weights of a layered reservoir. Layer indices are 0-based here;
/// inter[l] feeds layer l + 1 from layer l.
class DeepReservoir {
public:
    /// Wraps explicit matrices. The scaling fields of the stored config are
    /// recomputed from the matrices so they always describe the weights.
    static DeepReservoir from_weights(DenseMatrix w_in, std::vector<DenseMatrix> w_inter,
                                      std::vector<DenseMatrix> w_rec, std::uint64_t seed = 0);

    const ReservoirConfig& config() const noexcept { return config_; }
    std::size_t n_layers() const noexcept { return w_rec_.size(); }
    std::size_t units() const noexcept { return config_.units; }
    std::size_t input_dim() const noexcept { return config_.input_dim; }

    const DenseMatrix& w_in() const noexcept { return w_in_; }
    const std::vector<DenseMatrix>& w_inter() const noexcept { return w_inter_; }
    const std::vector<DenseMatrix>& w_rec() const noexcept { return w_rec_; }

private:
    friend DeepReservoir init_reservoir(const ReservoirConfig& config);
    DeepReservoir() = default;

    ReservoirConfig config_;
    DenseMatrix w_in_;
    std::vector<DenseMatrix> w_inter_;
    std::vector<DenseMatrix> w_rec_;
};

/// Collected post-washout states of one layer, one column per time step.
class LayerStates {
public:
    LayerStates(std::size_t layer_index, DenseMatrix states, std::size_t washout, std::size_t t_total);

    std::size_t layer_index() const noexcept { return layer_index_; } ///< 1-based
    const DenseMatrix& states() const noexcept { return states_; }
    std::size_t units() const noexcept { return states_.rows(); }
    std::size_t kept() const noexcept { return states_.cols(); }
    std::size_t washout() const noexcept { return washout_; }
    std::size_t t_total() const noexcept { return t_total_; }

    /// Columns [first, first + count) of the kept window, as a new LayerStates
    /// whose washout counts everything before the slice.
    LayerStates slice(std::size_t first, std::size_t count) const;

private:
    std::size_t layer_index_;
    DenseMatrix states_;
    std::size_t washout_;
    std::size_t t_total_;
};

/// Uniform [-1, 1] draws per matrix from independent substreams keyed by
/// (seed, role, layer), then rescaled: w_in to 2-norm input_scaling, each
/// inter-layer matrix to 2-norm interlayer_scaling, each recurrent matrix to
/// spectral radius spectral_radius.
DeepReservoir init_reservoir(const ReservoirConfig& config);

/// One time step. Layer 1 sees the input; layer l > 1 sees the fresh state of
/// layer l - 1 at the same step. Pre-activations are accumulated as
/// (sum_j W[i,j] drive_j) + (sum_j W_rec[i,j] prev_j), each sum left to right.
std::vector<DenseVector> step(const DeepReservoir& res, const DenseVector& u, const std::vector<DenseVector>& prev);

/// Drives the reservoir from the zero state and keeps columns washout+1..T.
std::vector<LayerStates> run(const DeepReservoir& res, const std::vector<DenseVector>& inputs, std::size_t washout);

/// Scalar-input convenience (input_dim must be 1).
std::vector<LayerStates> run(const DeepReservoir& res, std::span<const double> inputs, std::size_t washout);

/// Writes w_in.csv, w_inter_<l>.csv (l = 2..L) and w_rec_<l>.csv (l = 1..L).
void dump_weights_csv(const DeepReservoir& res, const std::filesystem::path& dir);

} // namespace deepesn
