#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace deepesn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An iterative method hit its iteration cap. Carries the last estimate.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double last_estimate)
      : Error(what), last_estimate_(last_estimate) {}
    double last_estimate() const noexcept { return last_estimate_; }

private:
    double last_estimate_;
};

/// Least squares with no usable direction (every Gram eigenvalue below cutoff).
class DegenerateSystemError : public Error {
public:
    using Error::Error;
};

/// Smallest singular value under the rank-deficiency floor.
class IllConditionedError : public Error {
public:
    IllConditionedError(const std::string& what, double sigma_max)
      : Error(what), sigma_max_(sigma_max) {}
    double sigma_max() const noexcept { return sigma_max_; }

private:
    double sigma_max_;
};

/// LMS epoch MSE blew past the divergence threshold. Carries the trace so far.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::vector<double> trace)
      : Error(what), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

/// Malformed or unreadable input data.
class DataError : public Error {
public:
    using Error::Error;
};

} // namespace deepesn
