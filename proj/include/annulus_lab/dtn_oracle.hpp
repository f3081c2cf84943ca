#pragma once

// Finite-difference Dirichlet-to-Neumann map with frequency on the (s, theta)
// grid of a solved annulus. Independent of the separated shooting solver: the
// full 2D interior problem is solved for every boundary basis vector.

#include <cstddef>
#include <vector>

#include "annulus_lab/freeboundary.hpp"
#include "annulus_lab/numerics.hpp"
#include "annulus_lab/steklov.hpp"

namespace annulus_lab {

/// Uniform grid s_i = s0 (2i - (n_s - 1)) / (n_s - 1), theta_j = 2 pi j / n_theta,
/// with E, G sampled at nodes and sqrt(G / E) at half nodes.
class Grid {
  public:
    /// Requires n_s >= 64, n_theta >= 64, n_theta even; throws ConfigurationError.
    Grid(const CriticalAnnulus& annulus, std::size_t n_s, std::size_t n_theta);

    std::size_t n_s() const { return n_s_; }
    std::size_t n_theta() const { return n_theta_; }
    double s0() const { return s0_; }
    double alpha() const { return alpha_; }
    double h_s() const { return h_s_; }
    double h_theta() const { return h_theta_; }
    /// Exactly antisymmetric: s(n_s - 1 - i) == -s(i).
    double s(std::size_t i) const;
    double theta(std::size_t j) const;
    double E(std::size_t i) const { return e_[i]; }
    double G(std::size_t i) const { return g_[i]; }
    /// sqrt(G/E) at s_i + h_s / 2.
    double flux_half(std::size_t i) const { return q_half_[i]; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_theta_ + j; }
    std::size_t size() const { return n_s_ * n_theta_; }

  private:
    std::size_t n_s_;
    std::size_t n_theta_;
    double s0_;
    double alpha_;
    double h_s_;
    double h_theta_;
    std::vector<double> e_;
    std::vector<double> g_;
    std::vector<double> q_half_;
};

/// Five-point conservative discretization of
///   (1/sqrt(EG)) d_s(sqrt(G/E) d_s u) + (1/G) d_theta^2 u + alpha u
/// applied at interior rows 1..n_s-2 (boundary rows of the result are zero).
std::vector<double> apply_helmholtz(const Grid& grid, const std::vector<double>& u);

struct DtNMatrix {
    /// (D + D^T) / 2; rows and columns ordered circle s = -s0 first, then s = +s0.
    numerics::Matrix matrix;
    /// Unsymmetrized one-sided normal derivatives.
    numerics::Matrix raw;
    /// Boundary mass weight sqrt(G(s0)) h_theta, equal on both circles.
    double boundary_weight = 0.0;
    /// max |D - D^T| before symmetrization.
    double raw_symmetry_defect = 0.0;
    /// Smallest relative pivot met in the block elimination.
    double pivot_health = 0.0;
    std::size_t n_theta = 0;
};

/// Throws DirichletResonanceError when the interior solve is singular.
DtNMatrix dtn_matrix(const Grid& grid);

struct OracleEigen {
    double sigma = 0.0;
    /// Dominant Fourier mode of the boundary trace.
    int m = 0;
    RadialParity parity = RadialParity::even;
    /// Boundary trace, length 2 n_theta.
    std::vector<double> trace;
};

/// Lowest `count` eigenpairs of the symmetrized matrix, ascending.
std::vector<OracleEigen> dtn_spectrum(const DtNMatrix& dtn, std::size_t count, double eig_tol = 1e-10);

/// Shooting eigenvalues with m^2 replaced by the periodic second-difference
/// symbol (2 sin(m h_theta / 2) / h_theta)^2, repeated by multiplicity,
/// ascending, first `count` values. Used as the s-only reference for
/// convergence in n_s.
std::vector<double> semidiscrete_reference(const SeparatedOperator& op, std::size_t n_theta, std::size_t count);

} // namespace annulus_lab
