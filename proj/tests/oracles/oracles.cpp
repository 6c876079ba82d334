#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

std::vector<long double> characteristic_polynomial(const DenseMatrix& a)
{
    const std::size_t n = a.rows();
    std::vector<long double> c(n + 1, 0.0L);
    c[n] = 1.0L;
    std::vector<long double> m(n * n, 0.0L), am(n * n);
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        std::vector<long double> next(n * n, 0.0L);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long double s = 0.0L;
                for (std::size_t l = 0; l < n; ++l) s += (long double)a(i, l) * m[l * n + j];
                next[i * n + j] = s;
            }
        for (std::size_t i = 0; i < n; ++i) next[i * n + i] += c[n - k + 1];
        m = next;
        long double tr = 0.0L;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += (long double)a(i, l) * m[l * n + i];
        c[n - k] = -tr / (long double)k;
    }
    return c;
}

std::vector<std::complex<long double>> polynomial_roots(const std::vector<long double>& coeffs)
{
    using C = std::complex<long double>;
    const std::size_t n = coeffs.size() - 1;
    auto eval = [&](C z) {
        C p = coeffs[n];
        for (std::size_t k = n; k-- > 0;) p = p * z + coeffs[k];
        return p;
    };
    auto deriv = [&](C z) {
        C p = (long double)n * coeffs[n];
        for (std::size_t k = n - 1; k >= 1; --k) p = p * z + (long double)k * coeffs[k];
        return p;
    };
    long double bound = 1.0L;
    for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, 1.0L + std::abs(coeffs[k]));
    std::vector<C> roots(n);
    const C seed(0.4L, 0.9L);
    for (std::size_t k = 0; k < n; ++k) roots[k] = bound * 0.5L * std::pow(seed, (long double)k);
    for (int iter = 0; iter < 5000; ++iter) {
        long double change = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            C denom = 1.0L;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            const C delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            change = std::max(change, std::abs(delta));
        }
        if (change < 1e-30L) break;
    }
    for (auto& r : roots)
        for (int k = 0; k < 5; ++k) {
            const C d = deriv(r);
            if (std::abs(d) == 0.0L) break;
            r -= eval(r) / d;
        }
    return roots;
}

double spectral_radius_by_roots(const DenseMatrix& a)
{
    long double m = 0.0L;
    for (const auto& r : polynomial_roots(characteristic_polynomial(a))) m = std::max(m, std::abs(r));
    return double(m);
}

std::vector<double> hestenes_singular_values(const DenseMatrix& x)
{
    const std::size_t r = x.rows(), c = x.cols();
    std::vector<std::vector<long double>> rows(r, std::vector<long double>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) rows[i][j] = x(i, j);
    auto dotl = [](const std::vector<long double>& a, const std::vector<long double>& b) {
        long double s = 0.0L;
        for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
        return s;
    };
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                const long double alpha = dotl(rows[i], rows[i]);
                const long double beta = dotl(rows[j], rows[j]);
                const long double gamma = dotl(rows[i], rows[j]);
                if (std::abs(gamma) <= 1e-19L * std::sqrt(alpha * beta) || gamma == 0.0L) continue;
                rotated = true;
                const long double zeta = (beta - alpha) / (2.0L * gamma);
                const long double t = (zeta >= 0 ? 1.0L : -1.0L) / (std::abs(zeta) + std::sqrt(1.0L + zeta * zeta));
                const long double cs = 1.0L / std::sqrt(1.0L + t * t);
                const long double sn = cs * t;
                for (std::size_t k = 0; k < c; ++k) {
                    const long double a = rows[i][k], b = rows[j][k];
                    rows[i][k] = cs * a - sn * b;
                    rows[j][k] = sn * a + cs * b;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = double(std::sqrt(dotl(rows[i], rows[i])));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

DenseMatrix gauss_solve(const DenseMatrix& a_in, const DenseMatrix& b_in)
{
    const std::size_t n = a_in.rows(), m = b_in.cols();
    std::vector<std::vector<long double>> a(n, std::vector<long double>(n)), b(n, std::vector<long double>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = a_in(i, j);
        for (std::size_t j = 0; j < m; ++j) b[i][j] = b_in(i, j);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        if (a[p][k] == 0.0L) throw std::runtime_error("gauss_solve: singular");
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            for (std::size_t j = 0; j < m; ++j) b[i][j] -= f * b[k][j];
        }
    }
    DenseMatrix z(n, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = n; i-- > 0;) {
            long double s = b[i][j];
            for (std::size_t l = i + 1; l < n; ++l) s -= a[i][l] * (long double)z(l, j);
            z(i, j) = double(s / a[i][i]);
        }
    return z;
}

DenseMatrix normal_equation_solution(const DenseMatrix& x, const DenseMatrix& y)
{
    const std::size_t n = x.rows(), m = y.rows(), t = x.cols();
    DenseMatrix g(n, n), rhs(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double s = 0.0L;
            for (std::size_t k = 0; k < t; ++k) s += (long double)x(i, k) * x(j, k);
            g(i, j) = double(s);
        }
        for (std::size_t j = 0; j < m; ++j) {
            long double s = 0.0L;
            for (std::size_t k = 0; k < t; ++k) s += (long double)x(i, k) * y(j, k);
            rhs(i, j) = double(s);
        }
    }
    return gauss_solve(g, rhs).transposed();
}

double naive_entropy(std::span<const double> x, double shrink, double floor)
{
    const double n = double(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= n;
    const double sigma = std::max(shrink * std::sqrt(var), floor);
    double total = 0.0;
    for (double xj : x)
        for (double xi : x) {
            const double d = xj - xi;
            total += std::exp(-d * d / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
        }
    return -std::log(total / (n * n));
}

DenseMatrix reference_esn_states(const DenseMatrix& w_in, const DenseMatrix& w, const DenseMatrix& inputs)
{
    const std::size_t n = w.rows(), t_total = inputs.cols();
    DenseMatrix out(n, t_total);
    std::vector<double> x(n, 0.0), next(n);
    for (std::size_t t = 0; t < t_total; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            double a = 0.0;
            for (std::size_t j = 0; j < w_in.cols(); ++j) a += w_in(i, j) * inputs(j, t);
            double b = 0.0;
            for (std::size_t j = 0; j < n; ++j) b += w(i, j) * x[j];
            next[i] = std::tanh(a + b);
        }
        x.swap(next);
        for (std::size_t i = 0; i < n; ++i) out(i, t) = x[i];
    }
    return out;
}

MeanStd two_pass_mean_std(std::span<const double> v)
{
    long double s = 0.0L;
    for (double e : v) s += e;
    const long double mean = s / (long double)v.size();
    long double ss = 0.0L;
    for (double e : v) ss += (e - mean) * (e - mean);
    return {double(mean), double(std::sqrt(ss / (long double)v.size()))};
}

double TestRng::uniform(double lo, double hi)
{
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t z = state_;
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    return lo + (hi - lo) * double(z >> 11) * 0x1.0p-53;
}

DenseMatrix random_matrix(TestRng& rng, std::size_t rows, std::size_t cols, double lo, double hi)
{
    DenseMatrix m(rows, cols);
    for (double& v : m.values()) v = rng.uniform(lo, hi);
    return m;
}

double lms_rounding_floor(const DenseMatrix& teacher, const DenseMatrix& x)
{
    double scale = 0.0;
    for (std::size_t t = 0; t < x.cols(); ++t)
        for (std::size_t o = 0; o < teacher.rows(); ++o) {
            double y = 0.0, mag = 0.0;
            for (std::size_t i = 0; i < x.rows(); ++i) {
                y += teacher(o, i) * x(i, t);
                mag += std::abs(teacher(o, i) * x(i, t));
            }
            scale = std::max(scale, std::abs(y) + mag);
        }
    const double bound = double(x.rows() + 2) * std::numeric_limits<double>::epsilon() * scale;
    return bound * bound;
}

double lms_stability_bound(const DenseMatrix& x)
{
    const double s1 = hestenes_singular_values(x).front();
    return 2.0 / (s1 * s1 / double(x.cols()));
}

} // namespace oracle
