#include "annulus_lab/spaceform.hpp"

#include <cmath>
#include <string>

namespace annulus_lab {

SpaceFormSign parse_sign(int value) {
    if (value == 1) return SpaceFormSign::spherical;
    if (value == -1) return SpaceFormSign::hyperbolic;
    throw ParameterRangeError("epsilon must be +1 or -1, got " + std::to_string(value));
}

double sin_eps(SpaceFormSign eps, double t) {
    return eps == SpaceFormSign::spherical ? std::sin(t) : std::sinh(t);
}

double cos_eps(SpaceFormSign eps, double t) {
    return eps == SpaceFormSign::spherical ? std::cos(t) : std::cosh(t);
}

double tan_eps(SpaceFormSign eps, double t) {
    const double c = cos_eps(eps, t);
    if (c == 0.0 || std::abs(c) < 1e-300) {
        throw DomainError("tan_eps: pole at t = " + std::to_string(t));
    }
    return sin_eps(eps, t) / c;
}

double cot_eps(SpaceFormSign eps, double t) {
    const double s = sin_eps(eps, t);
    if (s == 0.0 || std::abs(s) < 1e-300) {
        throw DomainError("cot_eps: pole at t = " + std::to_string(t));
    }
    return cos_eps(eps, t) / s;
}

EpsTrig eps_trig(SpaceFormSign eps, double t) {
    if (!std::isfinite(t)) {
        throw DomainError("eps_trig: argument must be finite");
    }
    EpsTrig out{sin_eps(eps, t), cos_eps(eps, t), std::nullopt, std::nullopt};
    if (out.cos != 0.0) out.tan = out.sin / out.cos;
    if (out.sin != 0.0) out.cot = out.cos / out.sin;
    return out;
}

bool AmbientVector::is_finite() const {
    return std::isfinite(x) && std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]);
}

double AmbientVector::y_norm() const { return std::hypot(y[0], y[1], y[2]); }

AmbientVector basis_vector(int k) {
    AmbientVector v;
    switch (k) {
    case 0: v.x = 1.0; break;
    case 1: v.y[0] = 1.0; break;
    case 2: v.y[1] = 1.0; break;
    case 3: v.y[2] = 1.0; break;
    default: throw DomainError("basis_vector: index must be in 0..3");
    }
    return v;
}

double metric_inner(SpaceFormSign eps, const AmbientVector& u, const AmbientVector& v) {
    return sign_value(eps) * u.x * v.x + u.y[0] * v.y[0] + u.y[1] * v.y[1] + u.y[2] * v.y[2];
}

double constraint_residual(SpaceFormSign eps, const AmbientVector& v) {
    const double yy = v.y[0] * v.y[0] + v.y[1] * v.y[1] + v.y[2] * v.y[2];
    return std::abs(v.x * v.x + sign_value(eps) * yy - 1.0);
}

AmbientPoint::AmbientPoint(SpaceFormSign eps, const AmbientVector& v) : eps_(eps), v_(v) {
    if (!v.is_finite()) {
        throw InvalidPointError("AmbientPoint: non-finite coordinates");
    }
    if (!(v.x > 0.0)) {
        throw InvalidPointError("AmbientPoint: x must be positive");
    }
    const double res = annulus_lab::constraint_residual(eps, v);
    if (res > kPointTolerance) {
        throw InvalidPointError("AmbientPoint: constraint residual " + std::to_string(res) + " exceeds 1e-10");
    }
}

double AmbientPoint::constraint_residual() const { return annulus_lab::constraint_residual(eps_, v_); }

double pole_distance(const AmbientPoint& p) {
    const double x = p.x();
    const double ny = p.coords().y_norm();
    double r;
    if (p.eps() == SpaceFormSign::spherical) {
        // acos loses half the digits next to the pole.
        r = x > 1.0 - 1e-6 ? std::asin(std::min(ny, 1.0)) : std::acos(std::min(x, 1.0));
    } else {
        r = x < 1.0 + 1e-6 ? std::asinh(ny) : std::acosh(std::max(x, 1.0));
    }
    if (std::abs(cos_eps(p.eps(), r) - x) > kPointTolerance * std::max(1.0, x)) {
        throw InvalidPointError("pole_distance: cos_eps(r) does not reproduce x");
    }
    return r;
}

AmbientPoint antipodal(const AmbientPoint& p) {
    const auto& v = p.coords();
    return {p.eps(), AmbientVector{v.x, {-v.y[0], -v.y[1], -v.y[2]}}};
}

double coordinate_function(SpaceFormSign eps, const AmbientVector& v, const AmbientPoint& p) {
    return metric_inner(eps, v, p.coords());
}

} // namespace annulus_lab
