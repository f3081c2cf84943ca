#pragma once

// Self-contained numeric kernels: quadrature, RK4, Brent, dense LU, Jacobi
// eigensolver, disjoint sets. No external numeric dependencies.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "annulus_lab/errors.hpp"

namespace annulus_lab::numerics {

struct ToleranceConfig {
    double quad_abs_tol = 1e-12;
    double ode_rel_tol = 1e-8;
    double root_tol = 1e-12;
    double eig_tol = 1e-10;
    double cluster_rel_tol = 1e-7;

    /// Throws ConfigurationError unless every tolerance is positive and finite.
    void validate() const;
};

// ---------------------------------------------------------------- quadrature

/// Adaptive Simpson with Richardson correction. Throws NumericError when the
/// recursion depth exceeds `max_depth` or the integrand is not finite.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 60);

// ---------------------------------------------------------------------- ODEs

template <std::size_t N> using State = std::array<double, N>;

template <std::size_t N> struct Trajectory {
    std::vector<double> t;
    std::vector<State<N>> y;
};

/// Classical fourth-order Runge-Kutta with a fixed step. `rhs(t, y)` returns dy/dt.
template <std::size_t N, class Rhs>
Trajectory<N> rk4_integrate(Rhs&& rhs, const State<N>& y0, double t0, double t1, std::size_t n_steps) {
    if (n_steps == 0) {
        throw NumericError("rk4_integrate: n_steps must be positive");
    }
    const double h = (t1 - t0) / static_cast<double>(n_steps);
    Trajectory<N> out;
    out.t.reserve(n_steps + 1);
    out.y.reserve(n_steps + 1);
    out.t.push_back(t0);
    out.y.push_back(y0);

    auto axpy = [](const State<N>& y, double c, const State<N>& k) {
        State<N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + c * k[i];
        return r;
    };

    State<N> y = y0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = t0 + static_cast<double>(n) * h;
        const State<N> k1 = rhs(t, y);
        const State<N> k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
        const State<N> k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
        const State<N> k4 = rhs(t + h, axpy(y, h, k3));
        for (std::size_t i = 0; i < N; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i])) {
                throw NumericError("rk4_integrate: state blew up at t = " + std::to_string(t + h));
            }
        }
        out.t.push_back(t0 + static_cast<double>(n + 1) * h);
        out.y.push_back(y);
    }
    return out;
}

// --------------------------------------------------------------------- roots

/// Brent-Dekker root finder. Requires f(a) * f(b) <= 0; returns x with
/// |f(x)| <= tol or a final bracket narrower than tol.
double brent_root(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                  int max_iter = 200);

// -------------------------------------------------------------- dense matrix

/// Row-major dense matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const { return data_; }

    Matrix transposed() const;
    /// Max absolute row sum.
    double norm_inf() const;
    double norm_frobenius() const;
    /// max |A_ij - A_ji| (square matrices only).
    double symmetry_defect() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);
Matrix operator-(const Matrix& a, const Matrix& b);

/// LU factorization with partial pivoting. Pivots below 1e-14 * ||A||_inf
/// raise SingularMatrixError.
class LuDecomposition {
  public:
    explicit LuDecomposition(Matrix a);

    std::vector<double> solve(std::span<const double> b) const;
    /// Solves A X = B column-wise.
    Matrix solve(const Matrix& b) const;
    Matrix inverse() const;

    /// Smallest |pivot| / ||A||_inf seen during factorization.
    double pivot_health() const { return pivot_health_; }

  private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
    double pivot_health_ = 0.0;
};

std::vector<double> lu_solve(const Matrix& a, std::span<const double> b);

struct SymmetricEigen {
    std::vector<double> values; ///< ascending
    Matrix vectors;             ///< column k is the eigenvector of values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations. Requires symmetry defect <= 1e-8 * ||A||; stops
/// when the off-diagonal Frobenius norm falls below eig_tol * ||A||_F.
SymmetricEigen jacobi_eigen(const Matrix& a, double eig_tol = 1e-10, int max_sweeps = 100);

// ------------------------------------------------------------- disjoint sets

class DisjointSet {
  public:
    explicit DisjointSet(std::size_t n);

    std::size_t find(std::size_t i);
    /// Returns true when two distinct sets were merged.
    bool unite(std::size_t i, std::size_t j);
    std::size_t count() const { return components_; }
    std::size_t size() const { return parent_.size(); }

  private:
    void check(std::size_t i) const;

    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_size_;
    std::size_t components_;
};

} // namespace annulus_lab::numerics
