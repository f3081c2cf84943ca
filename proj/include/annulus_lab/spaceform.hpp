#pragma once

// Space forms E^3_eps inside R^4: the hemisphere (eps = +1) and the upper
// sheet of the hyperboloid (eps = -1), with metric eps dx^2 + |dy|^2.

#include <array>
#include <optional>

#include "annulus_lab/errors.hpp"

namespace annulus_lab {

enum class SpaceFormSign : int { spherical = 1, hyperbolic = -1 };

constexpr double sign_value(SpaceFormSign eps) { return eps == SpaceFormSign::spherical ? 1.0 : -1.0; }

/// Parses "+1", "1", "-1". Throws ParameterRangeError otherwise.
SpaceFormSign parse_sign(int value);

// ---------------------------------------------------------- eps-trigonometry

double sin_eps(SpaceFormSign eps, double t);
double cos_eps(SpaceFormSign eps, double t);
/// Throws DomainError where cos_eps(t) vanishes.
double tan_eps(SpaceFormSign eps, double t);
/// Throws DomainError where sin_eps(t) vanishes.
double cot_eps(SpaceFormSign eps, double t);

struct EpsTrig {
    double sin;
    double cos;
    std::optional<double> tan; ///< empty at a pole
    std::optional<double> cot; ///< empty at a pole
};

EpsTrig eps_trig(SpaceFormSign eps, double t);

// ---------------------------------------------------------- ambient vectors

struct AmbientVector {
    double x = 0.0;
    std::array<double, 3> y{0.0, 0.0, 0.0};

    bool is_finite() const;
    double y_norm() const;

    friend AmbientVector operator+(const AmbientVector& a, const AmbientVector& b) {
        return {a.x + b.x, {a.y[0] + b.y[0], a.y[1] + b.y[1], a.y[2] + b.y[2]}};
    }
    friend AmbientVector operator-(const AmbientVector& a, const AmbientVector& b) {
        return {a.x - b.x, {a.y[0] - b.y[0], a.y[1] - b.y[1], a.y[2] - b.y[2]}};
    }
    friend AmbientVector operator*(double c, const AmbientVector& a) {
        return {c * a.x, {c * a.y[0], c * a.y[1], c * a.y[2]}};
    }
    friend bool operator==(const AmbientVector&, const AmbientVector&) = default;
};

/// Canonical basis d_0 ... d_3 of R^4 (d_0 = (1, 0)).
AmbientVector basis_vector(int k);

/// eps * u.x * v.x + <u.y, v.y>.
double metric_inner(SpaceFormSign eps, const AmbientVector& u, const AmbientVector& v);

// ----------------------------------------------------------- space-form points

inline constexpr double kPointTolerance = 1e-10;

/// A point of E^3_eps: |x^2 + eps |y|^2 - 1| <= 1e-10 and x > 0.
class AmbientPoint {
  public:
    /// Throws InvalidPointError when the constraint fails.
    AmbientPoint(SpaceFormSign eps, const AmbientVector& v);

    static AmbientPoint pole(SpaceFormSign eps) { return {eps, basis_vector(0)}; }

    SpaceFormSign eps() const { return eps_; }
    const AmbientVector& coords() const { return v_; }
    double x() const { return v_.x; }
    const std::array<double, 3>& y() const { return v_.y; }

    double constraint_residual() const;

  private:
    SpaceFormSign eps_;
    AmbientVector v_;
};

double constraint_residual(SpaceFormSign eps, const AmbientVector& v);

/// Geodesic distance from the pole d_0.
double pole_distance(const AmbientPoint& p);

/// A(x, y) = (x, -y).
AmbientPoint antipodal(const AmbientPoint& p);

/// phi_v(p) = <v, p>.
double coordinate_function(SpaceFormSign eps, const AmbientVector& v, const AmbientPoint& p);

} // namespace annulus_lab
