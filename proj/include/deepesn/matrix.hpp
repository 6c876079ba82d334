#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace deepesn {

/// Real dense vector with finite entries.
class DenseVector {
public:
    DenseVector() = default;
    explicit DenseVector(std::size_t len, double fill = 0.0);
    explicit DenseVector(std::vector<double> data);
    DenseVector(std::initializer_list<double> values);

    std::size_t size() const noexcept { return data_.size(); }
    double operator[](std::size_t i) const noexcept { return data_[i]; }
    double& operator[](std::size_t i) noexcept { return data_[i]; }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }
    const std::vector<double>& raw() const noexcept { return data_; }

    bool operator==(const DenseVector&) const = default;

private:
    std::vector<double> data_;
};

/// Row-major real dense matrix. Shape is at least 1x1 and entries are finite
/// on construction.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    DenseVector column(std::size_t c) const;

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    DenseMatrix transposed() const;
    /// Columns [first, first + count).
    DenseMatrix column_slice(std::size_t first, std::size_t count) const;

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Singular values in non-increasing order, all non-negative.
class SingularSpectrum {
public:
    explicit SingularSpectrum(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double largest() const { return values_.front(); }
    double smallest() const { return values_.back(); }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

// Kernels. Sums are accumulated left to right so results are reproducible
// bit-for-bit across builds (the project compiles with -ffp-contract=off).

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseVector multiply(const DenseMatrix& a, const DenseVector& x);
/// a * a^T
DenseMatrix gram_rows(const DenseMatrix& a);
/// a^T * a
DenseMatrix gram_cols(const DenseMatrix& a);
DenseMatrix scaled(const DenseMatrix& a, double factor);

double frobenius_norm(const DenseMatrix& a);
double trace(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);

} // namespace deepesn
