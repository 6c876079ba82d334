#include "deepesn/matrix.hpp"

#include "deepesn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deepesn {

namespace {

void require_finite(std::span<const double> values, const char* what)
{
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

} // namespace

DenseVector::DenseVector(std::size_t len, double fill) : data_(len, fill)
{
    require_finite(data_, "DenseVector");
}

DenseVector::DenseVector(std::vector<double> data) : data_(std::move(data))
{
    require_finite(data_, "DenseVector");
}

DenseVector::DenseVector(std::initializer_list<double> values) : data_(values)
{
    require_finite(data_, "DenseVector");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
  : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
    if (rows == 0 || cols == 0) throw DimensionError("DenseMatrix: rows and cols must be positive");
    require_finite(data_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
  : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (rows == 0 || cols == 0) throw DimensionError("DenseMatrix: rows and cols must be positive");
    if (data_.size() != rows * cols)
        throw DimensionError("DenseMatrix: data length " + std::to_string(data_.size()) + " != "
                             + std::to_string(rows) + "x" + std::to_string(cols));
    require_finite(data_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) throw DimensionError("DenseMatrix: rows and cols must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag)
{
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(m.values(), "DenseMatrix");
    return m;
}

DenseVector DenseMatrix::column(std::size_t c) const
{
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return DenseVector(std::move(out));
}

DenseMatrix DenseMatrix::transposed() const
{
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

DenseMatrix DenseMatrix::column_slice(std::size_t first, std::size_t count) const
{
    if (count == 0 || first + count > cols_)
        throw DimensionError("column_slice: range [" + std::to_string(first) + ", "
                             + std::to_string(first + count) + ") outside " + std::to_string(cols_)
                             + " columns");
    DenseMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto src = row(r).subspan(first, count);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

SingularSpectrum::SingularSpectrum(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty()) throw InvalidArgument("SingularSpectrum: empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
            throw InvalidArgument("SingularSpectrum: values must be finite and non-negative");
        if (i > 0 && values_[i] > values_[i - 1])
            throw InvalidArgument("SingularSpectrum: values must be non-increasing");
    }
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double squared_norm(std::span<const double> a)
{
    return dot(a, a);
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols())
                             + " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            auto src = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += aik * src[j];
        }
    }
    return out;
}

DenseVector multiply(const DenseMatrix& a, const DenseVector& x)
{
    if (a.cols() != x.size()) throw DimensionError("multiply: matrix/vector shape mismatch");
    std::vector<double> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x.values());
    return DenseVector(std::move(out));
}

DenseMatrix gram_rows(const DenseMatrix& a)
{
    const std::size_t n = a.rows();
    DenseMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = dot(a.row(i), a.row(j));
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

DenseMatrix gram_cols(const DenseMatrix& a)
{
    const std::size_t n = a.cols();
    DenseMatrix g(n, n);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto row = a.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            const double ri = row[i];
            for (std::size_t j = i; j < n; ++j) g(i, j) += ri * row[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

DenseMatrix scaled(const DenseMatrix& a, double factor)
{
    DenseMatrix out = a;
    for (double& v : out.values()) v *= factor;
    return out;
}

double frobenius_norm(const DenseMatrix& a)
{
    return std::sqrt(squared_norm(a.values()));
}

double trace(const DenseMatrix& a)
{
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
    return s;
}

double max_abs(const DenseMatrix& a)
{
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace deepesn
