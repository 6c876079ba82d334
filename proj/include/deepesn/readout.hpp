#pragma once

#include "deepesn/matrix.hpp"
#include "deepesn/reservoir.hpp"

#include <cstddef>
#include <filesystem>
#include <vector>

namespace deepesn {

enum class ReadoutMethod { direct, lms };

const char* to_string(ReadoutMethod m) noexcept;

/// Linear map from one layer's state to the output. With `bias`, the last
/// weight column multiplies a constant 1 appended to every state.
struct Readout {
    DenseMatrix weights; ///< N_Y x N_R (N_R + 1 with bias)
    std::size_t trained_on_layer = 0;
    ReadoutMethod method = ReadoutMethod::direct;
    bool bias = false;
};

struct LmsParams {
    double learning_rate = 0.01;
    std::size_t epochs = 5000;

    void validate() const;
};

struct LossTrace {
    std::vector<double> per_epoch_mse;
};

struct LmsResult {
    Readout readout;
    LossTrace trace;
};

/// Least-squares readout, W = argmin ||W X - Y||^2 + ridge ||W||^2.
Readout train_direct(const LayerStates& s, const DenseMatrix& targets, double ridge = 0.0, bool bias = false);

/// Per-sample LMS from zero weights, chronological sweep, no shuffling:
///   W <- W + eta (y(t) - W x(t)) x(t)^T
/// The trace holds the full-pass MSE after every epoch. An epoch MSE above
/// 1e12 (or non-finite) raises DivergenceError carrying the trace.
LmsResult train_lms(const LayerStates& s, const DenseMatrix& targets, const LmsParams& params = {}, bool bias = false);

DenseMatrix predict(const Readout& r, const LayerStates& s);

/// Mean over all entries of the squared difference.
double mse(const DenseMatrix& pred, const DenseMatrix& targets);

/// "epoch,mse" CSV, epochs numbered from 1.
void write_loss_trace_csv(const LossTrace& trace, const std::filesystem::path& path);

} // namespace deepesn
