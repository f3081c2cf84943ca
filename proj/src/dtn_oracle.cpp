#include "annulus_lab/dtn_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "annulus_lab/parallel.hpp"

namespace annulus_lab {

namespace {

constexpr double kPi = std::numbers::pi;
using numerics::Matrix;

// c += a * b restricted to columns [c0, c1) of b and c.
void gemm_add(const Matrix& a, const Matrix& b, Matrix& c, double scale, std::size_t c0, std::size_t c1) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = scale * a(i, k);
            if (aik == 0.0) continue;
            auto brow = b.row(k);
            for (std::size_t j = c0; j < c1; ++j) crow[j] += aik * brow[j];
        }
    }
}

} // namespace

// ---------------------------------------------------------------------- Grid

Grid::Grid(const CriticalAnnulus& annulus, std::size_t n_s, std::size_t n_theta)
    : n_s_(n_s), n_theta_(n_theta), s0_(annulus.s0()), alpha_(annulus.alpha()) {
    if (n_s < 64 || n_theta < 64 || n_theta % 2 != 0) {
        throw ConfigurationError("Grid: need n_s >= 64, n_theta >= 64 and n_theta even (got " + std::to_string(n_s) +
                                 "x" + std::to_string(n_theta) + ")");
    }
    h_s_ = 2.0 * s0_ / static_cast<double>(n_s - 1);
    h_theta_ = 2.0 * kPi / static_cast<double>(n_theta);
    const auto& family = annulus.family();
    e_.resize(n_s);
    g_.resize(n_s);
    q_half_.resize(n_s - 1);
    for (std::size_t i = 0; i < n_s; ++i) {
        const auto m = family.metric(s(i));
        e_[i] = m.E;
        g_[i] = m.G;
    }
    for (std::size_t i = 0; i + 1 < n_s; ++i) {
        const auto m = family.metric(0.5 * (s(i) + s(i + 1)));
        q_half_[i] = std::sqrt(m.G / m.E);
    }
}

double Grid::s(std::size_t i) const {
    const double n1 = static_cast<double>(n_s_ - 1);
    return s0_ * (2.0 * static_cast<double>(i) - n1) / n1;
}

double Grid::theta(std::size_t j) const { return h_theta_ * static_cast<double>(j); }

std::vector<double> apply_helmholtz(const Grid& grid, const std::vector<double>& u) {
    if (u.size() != grid.size()) {
        throw ConfigurationError("apply_helmholtz: field size does not match the grid");
    }
    const std::size_t ns = grid.n_s();
    const std::size_t nt = grid.n_theta();
    const double hs2 = grid.h_s() * grid.h_s();
    const double ht2 = grid.h_theta() * grid.h_theta();
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t i = 1; i + 1 < ns; ++i) {
        const double area = std::sqrt(grid.E(i) * grid.G(i));
        const double qm = grid.flux_half(i - 1);
        const double qp = grid.flux_half(i);
        for (std::size_t j = 0; j < nt; ++j) {
            const std::size_t jp = (j + 1) % nt;
            const std::size_t jm = (j + nt - 1) % nt;
            const double c = u[grid.index(i, j)];
            const double radial =
                (qp * (u[grid.index(i + 1, j)] - c) - qm * (c - u[grid.index(i - 1, j)])) / (area * hs2);
            const double angular = (u[grid.index(i, jp)] - 2.0 * c + u[grid.index(i, jm)]) / (grid.G(i) * ht2);
            out[grid.index(i, j)] = radial + angular + grid.alpha() * c;
        }
    }
    return out;
}

// ---------------------------------------------------------------- DtN matrix

DtNMatrix dtn_matrix(const Grid& grid) {
    const std::size_t ns = grid.n_s();
    const std::size_t nt = grid.n_theta();
    const std::size_t n_rows = ns - 2; // interior rows 1..ns-2
    const std::size_t n_rhs = 2 * nt;
    const double hs2 = grid.h_s() * grid.h_s();
    const double ht2 = grid.h_theta() * grid.h_theta();

    // Row i couples to its neighbours through lower_i * I and upper_i * I.
    std::vector<double> lower(ns), upper(ns);
    for (std::size_t i = 1; i + 1 < ns; ++i) {
        const double area = std::sqrt(grid.E(i) * grid.G(i));
        lower[i] = grid.flux_half(i - 1) / (area * hs2);
        upper[i] = grid.flux_half(i) / (area * hs2);
    }
    auto diagonal_block = [&](std::size_t i) {
        Matrix b(nt, nt);
        const double ang = 1.0 / (grid.G(i) * ht2);
        for (std::size_t j = 0; j < nt; ++j) {
            b(j, j) = -(lower[i] + upper[i]) - 2.0 * ang + grid.alpha();
            b(j, (j + 1) % nt) += ang;
            b(j, (j + nt - 1) % nt) += ang;
        }
        return b;
    };

    // Block Thomas: M_1 = B_1, M_i = B_i - lower_i upper_{i-1} M_{i-1}^{-1};
    // y_i = M_i^{-1} (r_i - lower_i y_{i-1}); x_i = y_i - upper_i M_i^{-1} x_{i+1}.
    std::vector<Matrix> m_inv(n_rows);
    double health = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t i = r + 1;
        Matrix block = diagonal_block(i);
        if (r > 0) {
            const double c = lower[i] * upper[i - 1];
            const Matrix& prev = m_inv[r - 1];
            for (std::size_t a = 0; a < nt; ++a) {
                for (std::size_t b = 0; b < nt; ++b) block(a, b) -= c * prev(a, b);
            }
        }
        try {
            numerics::LuDecomposition lu(std::move(block));
            health = std::min(health, lu.pivot_health());
            m_inv[r] = lu.inverse();
        } catch (const SingularMatrixError&) {
            throw DirichletResonanceError("dtn_matrix: frequency is a discrete Dirichlet eigenvalue of the grid");
        }
    }

    // Right-hand sides: bottom boundary basis enters row 1, top basis row ns-2.
    std::vector<Matrix> y(n_rows, Matrix(nt, n_rhs));

    const std::size_t chunk = 32;
    const std::size_t n_chunks = (n_rhs + chunk - 1) / chunk;
    parallel_for(n_chunks, [&](std::size_t cidx) {
        const std::size_t c0 = cidx * chunk;
        const std::size_t c1 = std::min(n_rhs, c0 + chunk);
        Matrix rhs(nt, n_rhs);
        for (std::size_t r = 0; r < n_rows; ++r) {
            const std::size_t i = r + 1;
            for (std::size_t a = 0; a < nt; ++a) {
                for (std::size_t col = c0; col < c1; ++col) rhs(a, col) = 0.0;
            }
            if (r == 0) {
                for (std::size_t col = c0; col < std::min(c1, nt); ++col) {
                    rhs(col, col) -= lower[i];
                }
            }
            if (r == n_rows - 1) {
                for (std::size_t col = std::max(c0, nt); col < c1; ++col) rhs(col - nt, col) -= upper[i];
            }
            if (r > 0) {
                const Matrix& yp = y[r - 1];
                for (std::size_t a = 0; a < nt; ++a) {
                    for (std::size_t col = c0; col < c1; ++col) rhs(a, col) -= lower[i] * yp(a, col);
                }
            }
            Matrix& yr = y[r];
            for (std::size_t a = 0; a < nt; ++a) {
                for (std::size_t col = c0; col < c1; ++col) yr(a, col) = 0.0;
            }
            gemm_add(m_inv[r], rhs, yr, 1.0, c0, c1);
        }
        // Back substitution, overwriting y with x.
        for (std::size_t r = n_rows - 1; r-- > 0;) {
            const std::size_t i = r + 1;
            gemm_add(m_inv[r], y[r + 1], y[r], -upper[i], c0, c1);
        }
    });

    const auto& x1 = y[0];
    const auto& x2 = y[1];
    const auto& xn = y[n_rows - 1];
    const auto& xn1 = y[n_rows - 2];

    DtNMatrix out;
    out.n_theta = nt;
    out.pivot_health = health;
    out.raw = Matrix(n_rhs, n_rhs);
    const double inv_b = 1.0 / (2.0 * grid.h_s() * std::sqrt(grid.E(0)));
    const double inv_t = 1.0 / (2.0 * grid.h_s() * std::sqrt(grid.E(ns - 1)));
    for (std::size_t col = 0; col < n_rhs; ++col) {
        const bool bottom_source = col < nt;
        for (std::size_t j = 0; j < nt; ++j) {
            // Boundary values of the basis solution.
            const double u_bottom = (bottom_source && col == j) ? 1.0 : 0.0;
            const double u_top = (!bottom_source && col - nt == j) ? 1.0 : 0.0;
            // Outward normal at s = -s0 is -d_s; at s = +s0 it is +d_s.
            out.raw(j, col) = (3.0 * u_bottom - 4.0 * x1(j, col) + x2(j, col)) * inv_b;
            out.raw(nt + j, col) = (3.0 * u_top - 4.0 * xn(j, col) + xn1(j, col)) * inv_t;
        }
    }
    out.raw_symmetry_defect = out.raw.symmetry_defect();
    out.matrix = Matrix(n_rhs, n_rhs);
    for (std::size_t a = 0; a < n_rhs; ++a) {
        for (std::size_t b = 0; b < n_rhs; ++b) out.matrix(a, b) = 0.5 * (out.raw(a, b) + out.raw(b, a));
    }
    out.boundary_weight = std::sqrt(grid.G(ns - 1)) * grid.h_theta();
    return out;
}

// ------------------------------------------------------------------ spectrum

std::vector<OracleEigen> dtn_spectrum(const DtNMatrix& dtn, std::size_t count, double eig_tol) {
    const std::size_t n = dtn.matrix.rows();
    if (count > n) {
        throw ConfigurationError("dtn_spectrum: count exceeds 2 n_theta");
    }
    const auto eig = numerics::jacobi_eigen(dtn.matrix, eig_tol);
    const std::size_t nt = dtn.n_theta;

    std::vector<OracleEigen> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        OracleEigen e;
        e.sigma = eig.values[k];
        e.trace.resize(n);
        for (std::size_t r = 0; r < n; ++r) e.trace[r] = eig.vectors(r, k);

        // Radially even traces agree on both circles (same theta).
        std::vector<double> even(nt), odd(nt);
        double n_even = 0.0, n_odd = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            even[j] = 0.5 * (e.trace[j] + e.trace[nt + j]);
            odd[j] = 0.5 * (e.trace[nt + j] - e.trace[j]);
            n_even += even[j] * even[j];
            n_odd += odd[j] * odd[j];
        }
        e.parity = n_even >= n_odd ? RadialParity::even : RadialParity::odd;
        const auto& part = e.parity == RadialParity::even ? even : odd;

        double best = -1.0;
        for (std::size_t m = 0; m <= nt / 2; ++m) {
            double re = 0.0, im = 0.0;
            for (std::size_t j = 0; j < nt; ++j) {
                const double ang = 2.0 * kPi * static_cast<double>(m * j % nt) / static_cast<double>(nt);
                re += part[j] * std::cos(ang);
                im += part[j] * std::sin(ang);
            }
            const double power = re * re + im * im;
            if (power > best * (1.0 + 1e-12)) {
                best = power;
                e.m = static_cast<int>(m);
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<double> semidiscrete_reference(const SeparatedOperator& op, std::size_t n_theta, std::size_t count) {
    const double h = 2.0 * kPi / static_cast<double>(n_theta);
    std::vector<double> values;
    for (std::size_t m = 0; values.size() < 4 * count + 8 && m <= n_theta / 2; ++m) {
        const double symbol = std::pow(2.0 * std::sin(0.5 * static_cast<double>(m) * h) / h, 2);
        for (RadialParity parity : {RadialParity::even, RadialParity::odd}) {
            ModeProblem problem{static_cast<int>(m), parity, op.alpha(), symbol};
            const double sigma = mode_eigenvalue(op, problem).sigma;
            values.push_back(sigma);
            if (m > 0 && 2 * m != n_theta) values.push_back(sigma);
        }
    }
    std::sort(values.begin(), values.end());
    values.resize(std::min(count, values.size()));
    return values;
}

} // namespace annulus_lab
