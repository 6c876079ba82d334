#include "deepesn/numerics.hpp"

#include "deepesn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace deepesn {

namespace {

void require_square(const DenseMatrix& a, const char* who)
{
    if (a.empty() || !a.is_square())
        throw DimensionError(std::string(who) + ": expected a non-empty square matrix, got "
                             + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_options(const IterativeOptions& opts, const char* who)
{
    if (!(opts.tol > 0.0)) throw InvalidArgument(std::string(who) + ": tol must be positive");
    if (opts.max_iter < 1) throw InvalidArgument(std::string(who) + ": max_iter must be >= 1");
}

/// 1-based square work array for the Hessenberg/QR routines.
class Work {
public:
    explicit Work(const DenseMatrix& a) : n_(a.rows()), data_((n_ + 1) * (n_ + 1), 0.0)
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) at(int(i + 1), int(j + 1)) = a(i, j);
    }
    double& at(int i, int j) noexcept { return data_[std::size_t(i) * (n_ + 1) + std::size_t(j)]; }
    int n() const noexcept { return int(n_); }

private:
    std::size_t n_;
    std::vector<double> data_;
};

// Diagonal similarity scaling by powers of two; leaves eigenvalues unchanged
// and makes row/column norms comparable.
void balance(Work& a)
{
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    const int n = a.n();
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 1; i <= n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 1; j <= n; ++j)
                if (j != i) {
                    c += std::abs(a.at(j, i));
                    r += std::abs(a.at(i, j));
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix;
                double f = 1.0;
                const double s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (int j = 1; j <= n; ++j) a.at(i, j) *= g;
                    for (int j = 1; j <= n; ++j) a.at(j, i) *= f;
                }
            }
        }
    }
}

// Reduction to upper Hessenberg form by stabilized elementary similarity
// transforms (Gaussian elimination with pivoting).
void to_hessenberg(Work& a)
{
    const int n = a.n();
    for (int m = 2; m < n; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j <= n; ++j)
            if (std::abs(a.at(j, m - 1)) > std::abs(x)) {
                x = a.at(j, m - 1);
                i = j;
            }
        if (i != m) {
            for (int j = m - 1; j <= n; ++j) std::swap(a.at(i, j), a.at(m, j));
            for (int j = 1; j <= n; ++j) std::swap(a.at(j, i), a.at(j, m));
        }
        if (x != 0.0) {
            for (i = m + 1; i <= n; ++i) {
                double y = a.at(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a.at(i, m - 1) = y;
                    for (int j = m; j <= n; ++j) a.at(i, j) -= y * a.at(m, j);
                    for (int j = 1; j <= n; ++j) a.at(j, m) += y * a.at(j, i);
                }
            }
        }
    }
    for (int i = 3; i <= n; ++i)
        for (int j = 1; j < i - 1; ++j) a.at(i, j) = 0.0;
}

double copysign_of(double magnitude, double sign_source)
{
    return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

double max_modulus(const std::vector<double>& re, const std::vector<double>& im, std::size_t upto_from,
                   std::size_t n)
{
    double m = 0.0;
    for (std::size_t k = upto_from; k <= n; ++k) m = std::max(m, std::hypot(re[k], im[k]));
    return m;
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
ComplexEigenvalues hessenberg_qr(Work& a, std::size_t max_iter)
{
    const int n = a.n();
    std::vector<double> wr(std::size_t(n) + 1, 0.0), wi(std::size_t(n) + 1, 0.0);

    double anorm = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a.at(i, j));

    int nn = n;
    double t = 0.0;
    std::size_t total_iter = 0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
    while (nn >= 1) {
        int its = 0;
        int l = 1;
        do {
            for (l = nn; l >= 2; --l) {
                s = std::abs(a.at(l - 1, l - 1)) + std::abs(a.at(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a.at(l, l - 1)) + s == s) {
                    a.at(l, l - 1) = 0.0;
                    break;
                }
            }
            x = a.at(nn, nn);
            if (l == nn) {
                wr[std::size_t(nn)] = x + t;
                wi[std::size_t(nn)] = 0.0;
                --nn;
            } else {
                y = a.at(nn - 1, nn - 1);
                w = a.at(nn, nn - 1) * a.at(nn - 1, nn);
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + copysign_of(z, p);
                        wr[std::size_t(nn - 1)] = wr[std::size_t(nn)] = x + z;
                        if (z != 0.0) wr[std::size_t(nn)] = x - w / z;
                        wi[std::size_t(nn - 1)] = wi[std::size_t(nn)] = 0.0;
                    } else {
                        wr[std::size_t(nn - 1)] = wr[std::size_t(nn)] = x + p;
                        wi[std::size_t(nn - 1)] = -z;
                        wi[std::size_t(nn)] = z;
                    }
                    nn -= 2;
                } else {
                    if (its >= 60 || total_iter >= max_iter) {
                        const double found = max_modulus(wr, wi, std::size_t(nn) + 1, std::size_t(n));
                        throw NonConvergenceError("spectral_radius: QR iteration did not converge after "
                                                      + std::to_string(total_iter) + " sweeps",
                                                  found);
                    }
                    if (its > 0 && its % 10 == 0) {
                        // exceptional shift
                        t += x;
                        for (int i = 1; i <= nn; ++i) a.at(i, i) -= x;
                        s = std::abs(a.at(nn, nn - 1)) + std::abs(a.at(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    ++total_iter;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = a.at(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a.at(m + 1, m) + a.at(m, m + 1);
                        q = a.at(m + 1, m + 1) - z - r - s;
                        r = a.at(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a.at(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v =
                            std::abs(p) * (std::abs(a.at(m - 1, m - 1)) + std::abs(z) + std::abs(a.at(m + 1, m + 1)));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a.at(i, i - 2) = 0.0;
                        if (i != m + 2) a.at(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a.at(k, k - 1);
                            q = a.at(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a.at(k + 2, k - 1);
                            if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        if ((s = copysign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
                            if (k == m) {
                                if (l != m) a.at(k, k - 1) = -a.at(k, k - 1);
                            } else {
                                a.at(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a.at(k, j) + q * a.at(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * a.at(k + 2, j);
                                    a.at(k + 2, j) -= p * z;
                                }
                                a.at(k + 1, j) -= p * y;
                                a.at(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a.at(i, k) + y * a.at(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * a.at(i, k + 2);
                                    a.at(i, k + 2) -= p * r;
                                }
                                a.at(i, k + 1) -= p * q;
                                a.at(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }

    ComplexEigenvalues out;
    out.real.assign(wr.begin() + 1, wr.end());
    out.imag.assign(wi.begin() + 1, wi.end());
    return out;
}

struct JacobiResult {
    std::vector<double> values;
    std::vector<double> vectors; // row-major n x n, empty when not requested
};

JacobiResult jacobi(const DenseMatrix& s_in, bool want_vectors)
{
    require_square(s_in, "symmetric_eigen");
    const std::size_t n = s_in.rows();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (s_in(i, j) + s_in(j, i));
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    std::vector<double> v;
    if (want_vectors) {
        v.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }

    const double frob = std::sqrt(squared_norm(a));
    const double threshold = 1e-12 * frob;
    constexpr int max_sweeps = 100;

    auto max_off_diagonal = [&] {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(at(i, j)));
        return m;
    };

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (max_off_diagonal() <= threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(at(p, p)) + g == std::abs(at(p, p))
                    && std::abs(at(q, q)) + g == std::abs(at(q, q))) {
                    at(p, q) = 0.0;
                    at(q, p) = 0.0;
                    continue;
                }
                const double h = at(q, q) - at(p, p);
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double grp = at(r, p);
                    const double grq = at(r, q);
                    const double np = grp - s * (grq + grp * tau);
                    const double nq = grq + s * (grp - grq * tau);
                    at(r, p) = np;
                    at(p, r) = np;
                    at(r, q) = nq;
                    at(q, r) = nq;
                }
                if (want_vectors) {
                    for (std::size_t r = 0; r < n; ++r) {
                        const double vp = v[r * n + p];
                        const double vq = v[r * n + q];
                        v[r * n + p] = vp - s * (vq + vp * tau);
                        v[r * n + q] = vq + s * (vp - vq * tau);
                    }
                }
            }
        }
    }
    if (sweep == max_sweeps && max_off_diagonal() > threshold)
        throw NonConvergenceError("symmetric_eigen: Jacobi did not converge in 100 sweeps", max_off_diagonal());

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return at(i, i) > at(j, j); });

    JacobiResult out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = at(order[k], order[k]);
    if (want_vectors) {
        out.vectors.resize(n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) out.vectors[r * n + k] = v[r * n + order[k]];
    }
    return out;
}

} // namespace

ComplexEigenvalues general_eigenvalues(const DenseMatrix& a, std::size_t max_iter)
{
    require_square(a, "general_eigenvalues");
    Work work(a);
    balance(work);
    to_hessenberg(work);
    return hessenberg_qr(work, max_iter);
}

double spectral_radius(const DenseMatrix& a, IterativeOptions opts)
{
    require_square(a, "spectral_radius");
    require_options(opts, "spectral_radius");
    const auto eig = general_eigenvalues(a, opts.max_iter);
    double rho = 0.0;
    for (std::size_t i = 0; i < eig.real.size(); ++i) rho = std::max(rho, std::hypot(eig.real[i], eig.imag[i]));
    return rho;
}

double operator_norm_2(const DenseMatrix& a, IterativeOptions opts)
{
    if (a.empty()) throw DimensionError("operator_norm_2: empty matrix");
    require_options(opts, "operator_norm_2");
    const DenseMatrix g = a.rows() >= a.cols() ? gram_cols(a) : gram_rows(a);
    const std::size_t n = g.rows();

    auto power = [&](std::vector<double> v) -> double {
        const double n0 = std::sqrt(squared_norm(v));
        for (double& e : v) e /= n0;
        std::vector<double> w(n);
        double lambda_prev = 0.0;
        double delta_prev = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k <= opts.max_iter; ++k) {
            for (std::size_t i = 0; i < n; ++i) w[i] = dot(g.row(i), v);
            const double lambda = dot(v, w);
            const double nw = std::sqrt(squared_norm(w));
            if (nw == 0.0 || lambda <= 0.0) return 0.0;
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
            if (k > 1) {
                const double delta = std::abs(lambda - lambda_prev);
                if (delta == 0.0) return lambda;
                if (std::isfinite(delta_prev)) {
                    const double ratio = delta / delta_prev;
                    // geometric-tail bound on the remaining error
                    if (ratio < 1.0 && delta * ratio / (1.0 - ratio) <= opts.tol * lambda) return lambda;
                }
                delta_prev = delta;
            }
            lambda_prev = lambda;
        }
        throw NonConvergenceError("operator_norm_2: power iteration did not converge in "
                                      + std::to_string(opts.max_iter) + " iterations",
                                  std::sqrt(std::max(lambda_prev, 0.0)));
    };

    std::vector<double> ones(n, 1.0);
    std::vector<double> alternating(n);
    for (std::size_t i = 0; i < n; ++i) alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const double first = power(ones);
    const double second = n > 1 ? power(alternating) : first;
    return std::sqrt(std::max(first, second));
}

SymmetricEigen symmetric_eigen(const DenseMatrix& s)
{
    auto r = jacobi(s, true);
    const std::size_t n = s.rows();
    return SymmetricEigen{std::move(r.values), DenseMatrix(n, n, std::move(r.vectors))};
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& s)
{
    return jacobi(s, false).values;
}

SingularSpectrum singular_values(const DenseMatrix& x)
{
    if (x.empty()) throw DimensionError("singular_values: empty matrix");
    if (x.rows() > x.cols())
        throw DimensionError("singular_values: expected rows <= cols, got " + std::to_string(x.rows()) + "x"
                             + std::to_string(x.cols()));
    auto lambdas = symmetric_eigenvalues(gram_rows(x));
    // Gram eigenvalues within n * eps * lambda_max of zero are rounding noise
    const double noise = double(lambdas.size()) * std::numeric_limits<double>::epsilon() * std::max(lambdas.front(), 0.0);
    for (double& l : lambdas) l = l <= noise ? 0.0 : std::sqrt(l);
    return SingularSpectrum(std::move(lambdas));
}

DenseMatrix least_squares_solve(const DenseMatrix& x, const DenseMatrix& y, double ridge)
{
    if (x.empty() || y.empty()) throw DimensionError("least_squares_solve: empty operand");
    if (x.cols() != y.cols())
        throw DimensionError("least_squares_solve: X has " + std::to_string(x.cols()) + " columns, Y has "
                             + std::to_string(y.cols()));
    if (!(ridge >= 0.0) || !std::isfinite(ridge))
        throw InvalidArgument("least_squares_solve: ridge must be finite and non-negative");

    const std::size_t n = x.rows();
    const std::size_t m = y.rows();
    const auto eig = symmetric_eigen(gram_rows(x));
    const double lambda_max = std::max(eig.values.front(), 0.0);

    std::vector<double> inv(n, 0.0);
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = std::max(eig.values[k], 0.0);
        if (ridge == 0.0) {
            if (lambda_max > 0.0 && lambda >= 1e-12 * lambda_max) {
                inv[k] = 1.0 / lambda;
                any = true;
            }
        } else {
            inv[k] = 1.0 / (lambda + ridge);
            any = true;
        }
    }
    if (!any) throw DegenerateSystemError("least_squares_solve: every Gram eigenvalue is below the cutoff");

    // W = (Y X^T) V diag(inv) V^T
    DenseMatrix yx(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) yx(i, j) = dot(y.row(i), x.row(j));
    DenseMatrix c = multiply(yx, eig.vectors);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) c(i, k) *= inv[k];
    return multiply(c, eig.vectors.transposed());
}

} // namespace deepesn
