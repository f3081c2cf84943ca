#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "annulus_lab/numerics.hpp"

namespace annulus_lab::numerics {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (double v : row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

double Matrix::norm_frobenius() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Matrix::symmetry_defect() const {
    if (rows_ != cols_) {
        throw NumericError("symmetry_defect: matrix is not square");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j) d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
    return d;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw NumericError("matrix product: dimension mismatch");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw NumericError("matrix-vector product: dimension mismatch");
    }
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ai = a.row(i);
        y[i] = std::inner_product(ai.begin(), ai.end(), x.begin(), 0.0);
    }
    return y;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw NumericError("matrix difference: dimension mismatch");
    }
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) {
        throw NumericError("LuDecomposition: matrix is not square");
    }
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const double scale = lu_.norm_inf();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw SingularMatrixError("LuDecomposition: zero or non-finite matrix");
    }
    pivot_health_ = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        pivot_health_ = std::min(pivot_health_, best / scale);
        if (best < 1e-14 * scale) {
            throw SingularMatrixError("LuDecomposition: pivot " + std::to_string(best) + " below 1e-14 * ||A|| at column " +
                                      std::to_string(k));
        }
        if (piv != k) {
            auto rk = lu_.row(k);
            auto rp = lu_.row(piv);
            std::swap_ranges(rk.begin(), rk.end(), rp.begin());
            std::swap(perm_[k], perm_[piv]);
        }
        const double pivot = lu_(k, k);
        auto rk = lu_.row(k);
        for (std::size_t i = k + 1; i < n; ++i) {
            auto ri = lu_.row(i);
            const double l = ri[k] / pivot;
            ri[k] = l;
            if (l == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
        }
    }
}

std::vector<double> LuDecomposition::solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) {
        throw NumericError("LuDecomposition::solve: dimension mismatch");
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
        auto ri = lu_.row(i);
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= ri[k] * x[k];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        auto ri = lu_.row(i);
        double s = x[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= ri[k] * x[k];
        x[i] = s / ri[i];
    }
    return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
    const std::size_t n = lu_.rows();
    if (b.rows() != n) {
        throw NumericError("LuDecomposition::solve: dimension mismatch");
    }
    const std::size_t m = b.cols();
    Matrix x(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        auto src = b.row(perm_[i]);
        std::copy(src.begin(), src.end(), x.row(i).begin());
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = x.row(i);
        auto li = lu_.row(i);
        for (std::size_t k = 0; k < i; ++k) {
            const double l = li[k];
            if (l == 0.0) continue;
            auto xk = x.row(k);
            for (std::size_t j = 0; j < m; ++j) xi[j] -= l * xk[j];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        auto xi = x.row(i);
        auto ui = lu_.row(i);
        for (std::size_t k = i + 1; k < n; ++k) {
            const double u = ui[k];
            if (u == 0.0) continue;
            auto xk = x.row(k);
            for (std::size_t j = 0; j < m; ++j) xi[j] -= u * xk[j];
        }
        const double inv = 1.0 / ui[i];
        for (double& v : xi) v *= inv;
    }
    return x;
}

Matrix LuDecomposition::inverse() const { return solve(Matrix::identity(lu_.rows())); }

std::vector<double> lu_solve(const Matrix& a, std::span<const double> b) { return LuDecomposition(a).solve(b); }

SymmetricEigen jacobi_eigen(const Matrix& input, double eig_tol, int max_sweeps) {
    const std::size_t n = input.rows();
    if (input.cols() != n) {
        throw NumericError("jacobi_eigen: matrix is not square");
    }
    const double norm = input.norm_frobenius();
    if (input.symmetry_defect() > 1e-8 * std::max(norm, 1e-300)) {
        throw NumericError("jacobi_eigen: matrix is not symmetric");
    }

    Matrix a = input;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(j, i) = a(i, j) = 0.5 * (a(i, j) + a(j, i));
    Matrix v = Matrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    const double target = eig_tol * norm;
    while (off_norm() > target) {
        if (sweep >= max_sweeps) {
            throw NumericError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Skip rotations that would not change the diagonal in floating point.
                if (std::abs(apq) < 1e-300 ||
                    (sweep > 3 && std::abs(apq) * 1e18 < std::abs(app) && std::abs(apq) * 1e18 < std::abs(aqq))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                auto rp = a.row(p);
                auto rq = a.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = rp[k];
                    const double aqk = rq[k];
                    rp[k] = c * apk - s * aqk;
                    rq[k] = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    auto vk = v.row(k);
                    const double vkp = vk[p];
                    const double vkq = vk[q];
                    vk[p] = c * vkp - s * vkq;
                    vk[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigen out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

} // namespace annulus_lab::numerics
