#pragma once

// Free boundary configurations: the smallest s0 > 0 at which the meridian of
// Phi_{a,eps} meets the geodesic sphere through Phi(s0, .) orthogonally.

#include <cstddef>

#include "annulus_lab/numerics.hpp"
#include "annulus_lab/rotational.hpp"

namespace annulus_lab {

struct BoundaryResiduals {
    /// 1 - <d_s / sqrt(E), V> at the boundary; zero iff conormal = sphere normal.
    double orthogonality = 0.0;
    /// Signed component of the unit conormal along the geodesic sphere.
    double tilt = 0.0;
    /// r minus the largest pole distance over |s| <= s0 - 1e-3.
    double containment_margin = 0.0;
    double bc_phi0 = 0.0;
    double bc_phi_i = 0.0;
};

struct FreeBoundaryConfig {
    AnnulusFamilyParams params;
    double s0 = 0.0;
    double r = 0.0;
    BoundaryResiduals residuals;
};

/// A solved annulus: the memoized family together with its boundary data.
class CriticalAnnulus {
  public:
    CriticalAnnulus(AnnulusFamily family, FreeBoundaryConfig config)
        : family_(std::move(family)), config_(config) {}

    const AnnulusFamily& family() const { return family_; }
    const FreeBoundaryConfig& config() const { return config_; }
    SpaceFormSign eps() const { return config_.params.eps; }
    double s0() const { return config_.s0; }
    double radius() const { return config_.r; }
    /// Frequency of the Steklov problem, 2 eps.
    double alpha() const { return 2.0 * sign_value(eps()); }

  private:
    AnnulusFamily family_;
    FreeBoundaryConfig config_;
};

/// Unit outward normal to the geodesic sphere through p (the distance gradient).
/// Throws DomainError at the pole.
AmbientVector sphere_normal(const AmbientPoint& p);

double orthogonality_residual(const AnnulusFamily& family, double s, double theta = 0.0);

/// Signed tilt of the conormal against the geodesic sphere; changes sign at s0.
double boundary_tilt(const AnnulusFamily& family, double s);

/// Right end of the s-search window: the hemisphere edge psi = pi/2 capped at
/// pi/2 for eps = +1, and 5 for eps = -1.
double search_window(const AnnulusFamily& family);

/// Throws ParameterRangeError, NoFreeBoundaryError or GeometryError.
FreeBoundaryConfig solve_s0(const AnnulusFamily& family, const numerics::ToleranceConfig& tol = {});

CriticalAnnulus solve_annulus(const AnnulusFamilyParams& params, const numerics::ToleranceConfig& tol = {});

/// Finds a with r(a) = r_target to 1e-8. Throws UnachievableRadiusError.
CriticalAnnulus solve_for_radius(SpaceFormSign eps, double r_target, const numerics::ToleranceConfig& tol = {});

struct BoundaryConditionResiduals {
    /// max |d phi_0/d nu + eps tan_eps(r) phi_0|
    double phi0 = 0.0;
    /// max over i = 1..3 of |d phi_i/d nu - cot_eps(r) phi_i|
    double phi_i = 0.0;
};

/// Coordinate-function boundary conditions on the circle s = side * s0
/// (side = +1 or -1), sampled at n_samples angles.
BoundaryConditionResiduals verify_boundary_conditions(const AnnulusFamily& family, double s0, double r,
                                                      double side = 1.0, std::size_t n_samples = 32);

/// The pole-direction angle along the meridian theta = 0 is strictly monotone on [-s0, s0].
bool star_shaped_check(const AnnulusFamily& family, double s0, std::size_t n_samples);

/// Smallest pole distance over an n_s x n_theta grid of [-s0, s0] x S^1.
double min_pole_distance(const AnnulusFamily& family, double s0, std::size_t n_s, std::size_t n_theta);

} // namespace annulus_lab
