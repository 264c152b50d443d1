#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "outline_energy/errors.hpp"

namespace outline_energy::numerics {

/// Dense row-major matrix of 64-bit floats.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<double>& data() const { return data_; }

    bool all_finite() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](double v) { return std::isfinite(v); });
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const double v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Eigendecomposition of a symmetric matrix. Eigenvalues are descending and
/// column i of `vectors` pairs with eigenvalue i. Each column is normalized
/// with its largest-magnitude entry positive so results are byte-stable.
struct EigenResult {
    std::vector<double> values;
    Matrix vectors;
};

namespace detail {

    inline void require_finite(const Matrix& a, const char* who)
    {
        if (!a.all_finite())
            throw NumericError(std::string(who) + ": non-finite matrix entry");
    }

    // One cyclic Jacobi sweep over all (p, q) pairs; returns the number of
    // rotations applied. `a` stays symmetric, `v` accumulates the rotations.
    inline std::size_t jacobi_sweep(Matrix& a, Matrix& v, double threshold)
    {
        const std::size_t n = a.rows();
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= threshold)
                    continue;
                ++rotations;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0)
                    ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                    : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q)
                        continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        return rotations;
    }

    inline double max_off_diagonal(const Matrix& a)
    {
        const std::size_t n = a.rows();
        double m = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                m = std::max(m, std::abs(a(p, q)));
        return m;
    }

} // namespace detail

/// Cyclic Jacobi eigendecomposition. Input must be square and symmetric to
/// within 1e-12 of its largest entry; convergence target is an off-diagonal
/// maximum of 1e-12 * max|a_ij|, reached quadratically. More than 100 sweeps
/// means something is badly wrong and raises NumericError.
inline EigenResult symmetric_eigen(const Matrix& a)
{
    if (a.rows() != a.cols() || a.rows() == 0)
        throw NumericError("symmetric_eigen: matrix must be square and non-empty");
    detail::require_finite(a, "symmetric_eigen");

    const std::size_t n = a.rows();
    const double amax = a.max_abs();
    const double sym_tol = 1e-12 * std::max(amax, 1e-300);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - a(j, i)) > sym_tol)
                throw NumericError("symmetric_eigen: matrix is not symmetric");

    Matrix work = a;
    // Exact symmetry keeps the sweep update formulas consistent.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            work(j, i) = work(i, j);
    Matrix v = Matrix::identity(n);

    const double target = 1e-12 * amax;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (detail::max_off_diagonal(work) > target) {
        if (++sweep > kMaxSweeps)
            throw NumericError("symmetric_eigen: no convergence in 100 sweeps");
        detail::jacobi_sweep(work, v, 0.0);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return work(i, i) > work(j, j);
    });

    EigenResult result;
    result.values.resize(n);
    result.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        result.values[j] = work(src, src);
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, src));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i)
            result.vectors(i, j) = sign * v(i, src);
    }
    return result;
}

namespace detail {

    // Gram matrix X^T X (p x p) or X X^T (n x n).
    inline Matrix gram(const Matrix& x, bool transpose_side)
    {
        const std::size_t n = x.rows();
        const std::size_t p = x.cols();
        if (transpose_side) {
            Matrix g(p, p);
            for (std::size_t r = 0; r < n; ++r) {
                const double* xr = x.row(r);
                for (std::size_t i = 0; i < p; ++i) {
                    const double xi = xr[i];
                    if (xi == 0.0)
                        continue;
                    double* gi = g.row(i);
                    for (std::size_t j = i; j < p; ++j)
                        gi[j] += xi * xr[j];
                }
            }
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    g(i, j) = g(j, i);
            return g;
        }
        Matrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double* xi = x.row(i);
            for (std::size_t j = i; j < n; ++j) {
                const double* xj = x.row(j);
                double acc = 0.0;
                for (std::size_t k = 0; k < p; ++k)
                    acc += xi[k] * xj[k];
                g(i, j) = acc;
                g(j, i) = acc;
            }
        }
        return g;
    }

} // namespace detail

/// Minimum-norm least squares: the beta minimizing |X beta - y|_2, and among
/// minimizers the one of least l2 norm (well-defined even when monomials
/// outnumber rows). Solved through the eigendecomposition of the smaller Gram
/// matrix. Singular values below 1e-10 * sigma_max count as zero; because the
/// Gram route squares the spectrum, eigenvalues under 1e-12 * lambda_max are
/// inside the floating-point noise floor and are zeroed on the same grounds.
inline std::vector<double> least_squares_min_norm(const Matrix& x, const std::vector<double>& y)
{
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (n == 0 || p == 0)
        throw NumericError("least_squares_min_norm: empty system");
    if (y.size() != n)
        throw NumericError("least_squares_min_norm: row count mismatch");
    detail::require_finite(x, "least_squares_min_norm");
    for (const double v : y)
        if (!std::isfinite(v))
            throw NumericError("least_squares_min_norm: non-finite rhs entry");

    const bool tall = p <= n;
    const Matrix g = detail::gram(x, tall);
    const EigenResult eig = symmetric_eigen(g);
    const std::size_t m = g.rows();

    // rhs = X^T y (tall) or y (wide).
    std::vector<double> rhs(m, 0.0);
    if (tall) {
        for (std::size_t r = 0; r < n; ++r) {
            const double* xr = x.row(r);
            const double yr = y[r];
            for (std::size_t j = 0; j < p; ++j)
                rhs[j] += xr[j] * yr;
        }
    } else {
        rhs = y;
    }

    const double lambda_max = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    const double cutoff = lambda_max * 1e-12;

    std::vector<double> z(m, 0.0); // pseudo-inverse applied to rhs
    for (std::size_t j = 0; j < m; ++j) {
        const double lambda = eig.values[j];
        if (lambda <= cutoff)
            continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            proj += eig.vectors(i, j) * rhs[i];
        proj /= lambda;
        for (std::size_t i = 0; i < m; ++i)
            z[i] += proj * eig.vectors(i, j);
    }

    if (tall)
        return z;

    // Wide case: beta = X^T (X X^T)^+ y.
    std::vector<double> beta(p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double* xr = x.row(r);
        const double zr = z[r];
        if (zr == 0.0)
            continue;
        for (std::size_t j = 0; j < p; ++j)
            beta[j] += xr[j] * zr;
    }
    return beta;
}

} // namespace outline_energy::numerics
