#pragma once

// The rotational minimal annulus family Phi_{a,eps}(s, theta) =
//   (f cos_eps psi, f sin_eps psi, g cos theta, g sin theta)
// with normalized profiles
//   f^2 = (1 - eps a cos_eps 2s) / 2,   g^2 = (eps + a cos_eps 2s) / 2,
//   psi' = sqrt(eps (1 - a^2)) / (2 f^2 g).
// With this scaling the image lies on E^3_eps and s is arclength (E == 1).

#include <cstddef>
#include <vector>

#include "annulus_lab/spaceform.hpp"

namespace annulus_lab {

struct AnnulusFamilyParams {
    SpaceFormSign eps = SpaceFormSign::spherical;
    double a = -0.5;

    /// eps = +1 requires a in (-1, 0]; eps = -1 requires a in (1, inf).
    /// Throws ParameterRangeError.
    void validate() const;
    bool in_range() const;
};

struct ProfileSample {
    double s = 0.0;
    double f = 0.0;
    double g = 0.0;
    double psi = 0.0;
    double df = 0.0;
    double dg = 0.0;
    double dpsi = 0.0;
};

/// Induced metric E ds^2 + G dtheta^2 (F vanishes by rotational symmetry).
struct MetricCoefficients {
    double E = 0.0;
    double G = 0.0;
};

struct ImmersionJet {
    AmbientPoint point;
    AmbientVector d_s;
    AmbientVector d_theta;
    AmbientVector d_ss;
    AmbientVector d_stheta;
    AmbientVector d_thetatheta;
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
    /// Unit, tangent to the space form, orthogonal to d_s and d_theta.
    AmbientVector normal;
};

/// Chebyshev interpolant of psi on [0, upper], built once from adaptive
/// Simpson values and read-only afterwards.
class PsiTable {
  public:
    PsiTable() = default;
    PsiTable(const AnnulusFamilyParams& params, double upper, double quad_tol);

    double operator()(double s) const;
    double upper() const { return upper_; }
    std::size_t node_count() const { return nodes_.size(); }
    /// Max deviation from direct quadrature observed at the validation points.
    double validation_error() const { return validation_error_; }

  private:
    double upper_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> weights_;
    double validation_error_ = 0.0;
};

class AnnulusFamily {
  public:
    explicit AnnulusFamily(AnnulusFamilyParams params, double quad_abs_tol = 1e-12);

    const AnnulusFamilyParams& params() const { return params_; }
    SpaceFormSign eps() const { return params_.eps; }
    double a() const { return params_.a; }
    double quad_tol() const { return quad_tol_; }

    double f(double s) const;
    double g(double s) const;
    /// Analytic psi'(s).
    double dpsi(double s) const;
    /// psi(s), odd in s; memoized.
    double psi(double s) const;
    /// psi(s) by direct adaptive quadrature, bypassing the memo table.
    double psi_direct(double s) const;

    ProfileSample profile(double s) const;
    MetricCoefficients metric(double s) const;

    AmbientPoint immerse(double s, double theta) const;
    AmbientVector d_s(double s, double theta) const;
    AmbientVector d_theta(double s, double theta) const;

    /// First derivatives analytic, second derivatives by central differences
    /// (h = 1e-5 max(1, |s|)) of the first derivatives.
    ImmersionJet jet(double s, double theta) const;

    /// H = (II_ss / E + II_thth / G) / 2.
    double mean_curvature(double s, double theta) const;

    /// Delta phi_v + 2 eps phi_v with the rotational Laplace-Beltrami operator.
    double helmholtz_residual(const AmbientVector& v, double s, double theta) const;

  private:
    AmbientVector position(double s, double theta, double psi_value) const;
    AmbientVector tangent_s(double s, double theta, double psi_value) const;

    AnnulusFamilyParams params_;
    double quad_tol_;
    PsiTable table_;
};

} // namespace annulus_lab
