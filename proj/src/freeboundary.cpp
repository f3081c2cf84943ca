#include "annulus_lab/freeboundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace annulus_lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kScanPoints = 400;

// Pole distance along the meridian; independent of theta.
double meridian_distance(const AnnulusFamily& family, double s) { return pole_distance(family.immerse(s, 0.0)); }

} // namespace

AmbientVector sphere_normal(const AmbientPoint& p) {
    const double ny = p.coords().y_norm();
    if (ny < 1e-14) {
        throw DomainError("sphere_normal: undefined at the pole");
    }
    const double e = sign_value(p.eps());
    const double x = p.x();
    const auto& y = p.y();
    AmbientVector v{-e * ny, {x * y[0] / ny, x * y[1] / ny, x * y[2] / ny}};
    return (1.0 / std::sqrt(metric_inner(p.eps(), v, v))) * v;
}

double orthogonality_residual(const AnnulusFamily& family, double s, double theta) {
    const auto p = family.immerse(s, theta);
    const auto ds = family.d_s(s, theta);
    const double norm = std::sqrt(metric_inner(family.eps(), ds, ds));
    return 1.0 - metric_inner(family.eps(), ds, sphere_normal(p)) / norm;
}

double boundary_tilt(const AnnulusFamily& family, double s) {
    const double psi = family.psi(s);
    const auto prof = family.profile(s);
    const SpaceFormSign eps = family.eps();
    const double y1 = prof.f * sin_eps(eps, psi);
    const double dy1 = prof.df * sin_eps(eps, psi) + prof.f * cos_eps(eps, psi) * prof.dpsi;
    const double ny = std::hypot(y1, prof.g);
    const double e_coef = family.metric(s).E;
    return (y1 * prof.dg - prof.g * dy1) / (ny * std::sqrt(e_coef));
}

double search_window(const AnnulusFamily& family) {
    if (family.eps() == SpaceFormSign::hyperbolic) {
        return 5.0;
    }
    const double cap = 0.5 * kPi;
    if (family.psi(cap) < 0.5 * kPi) {
        return cap;
    }
    return numerics::brent_root([&](double s) { return family.psi(s) - 0.5 * kPi; }, 0.0, cap, 1e-14);
}

FreeBoundaryConfig solve_s0(const AnnulusFamily& family, const numerics::ToleranceConfig& tol) {
    const auto& params = family.params();
    if (params.eps == SpaceFormSign::spherical && !(params.a < 0.0)) {
        throw NoFreeBoundaryError("a = 0 (Clifford band) meets only the equatorial sphere; need a in (-1, 0)");
    }

    const double s_max = search_window(family);
    double s_prev = 0.0;
    double t_prev = 0.0;
    double s0 = -1.0;
    for (std::size_t k = 1; k <= kScanPoints; ++k) {
        const double s = s_max * static_cast<double>(k) / static_cast<double>(kScanPoints);
        const double t = boundary_tilt(family, s);
        if (k > 1 && t_prev * t <= 0.0 && t_prev != 0.0) {
            const double root = t == 0.0 ? s
                                         : numerics::brent_root([&](double u) { return boundary_tilt(family, u); },
                                                                s_prev, s, tol.root_tol * 1e-2);
            // Only outward-pointing conormals give a free boundary.
            const auto p = family.immerse(root, 0.0);
            if (metric_inner(family.eps(), family.d_s(root, 0.0), sphere_normal(p)) > 0.0) {
                s0 = root;
                break;
            }
        }
        s_prev = s;
        t_prev = t;
    }
    if (s0 <= 0.0) {
        throw NoFreeBoundaryError("no orthogonal boundary crossing in (0, " + std::to_string(s_max) + "]");
    }

    FreeBoundaryConfig cfg;
    cfg.params = params;
    cfg.s0 = s0;
    cfg.r = meridian_distance(family, s0);

    double max_all = 0.0;
    double max_interior = 0.0;
    constexpr std::size_t n_contain = 2000;
    for (std::size_t k = 0; k <= n_contain; ++k) {
        const double s = s0 * static_cast<double>(k) / static_cast<double>(n_contain);
        const double d = meridian_distance(family, s);
        max_all = std::max(max_all, d);
        if (s <= s0 - 1e-3) max_interior = std::max(max_interior, d);
    }
    if (max_all > cfg.r + 1e-10) {
        throw GeometryError("annulus leaves the ball: max pole distance " + std::to_string(max_all) + " > r = " +
                            std::to_string(cfg.r));
    }

    cfg.residuals.orthogonality = orthogonality_residual(family, s0, 0.0);
    cfg.residuals.tilt = boundary_tilt(family, s0);
    cfg.residuals.containment_margin = cfg.r - max_interior;
    const auto bc = verify_boundary_conditions(family, s0, cfg.r);
    cfg.residuals.bc_phi0 = bc.phi0;
    cfg.residuals.bc_phi_i = bc.phi_i;
    return cfg;
}

CriticalAnnulus solve_annulus(const AnnulusFamilyParams& params, const numerics::ToleranceConfig& tol) {
    params.validate();
    AnnulusFamily family(params, tol.quad_abs_tol);
    FreeBoundaryConfig cfg = solve_s0(family, tol);
    return {std::move(family), cfg};
}

CriticalAnnulus solve_for_radius(SpaceFormSign eps, double r_target, const numerics::ToleranceConfig& tol) {
    if (!(r_target > 0.0) || !std::isfinite(r_target) ||
        (eps == SpaceFormSign::spherical && !(r_target < 0.5 * kPi))) {
        throw UnachievableRadiusError("radius " + std::to_string(r_target) + " outside the admissible range");
    }
    const double lo = eps == SpaceFormSign::spherical ? -0.98 : 1.02;
    const double hi = eps == SpaceFormSign::spherical ? -0.005 : 20.0;
    auto radius_of = [&](double a) { return solve_annulus({eps, a}, tol).radius(); };

    const double r_lo = radius_of(lo);
    const double r_hi = radius_of(hi);
    if ((r_target - r_lo) * (r_target - r_hi) > 0.0) {
        throw UnachievableRadiusError("radius " + std::to_string(r_target) + " not in the family's range [" +
                                      std::to_string(std::min(r_lo, r_hi)) + ", " +
                                      std::to_string(std::max(r_lo, r_hi)) + "]");
    }
    const double a = numerics::brent_root([&](double t) { return radius_of(t) - r_target; }, lo, hi, 1e-13);
    CriticalAnnulus out = solve_annulus({eps, a}, tol);
    if (std::abs(out.radius() - r_target) > 1e-8) {
        throw UnachievableRadiusError("radius inversion stalled at |r - r_target| = " +
                                      std::to_string(std::abs(out.radius() - r_target)));
    }
    return out;
}

BoundaryConditionResiduals verify_boundary_conditions(const AnnulusFamily& family, double s0, double r, double side,
                                                      std::size_t n_samples) {
    const SpaceFormSign eps = family.eps();
    const double e = sign_value(eps);
    const double s_b = side * s0;
    const double h = 1e-4;
    const double tan_r = tan_eps(eps, r);
    const double cot_r = cot_eps(eps, r);
    const double inv_sqrt_e = 1.0 / std::sqrt(family.metric(s_b).E);

    BoundaryConditionResiduals out;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_samples);
        for (int i = 0; i < 4; ++i) {
            const AmbientVector v = basis_vector(i);
            auto phi = [&](double s) { return coordinate_function(eps, v, family.immerse(s, theta)); };
            const double ds = (-phi(s_b + 2 * h) + 8 * phi(s_b + h) - 8 * phi(s_b - h) + phi(s_b - 2 * h)) / (12 * h);
            const double dnu = side * inv_sqrt_e * ds;
            const double u = phi(s_b);
            if (i == 0) {
                out.phi0 = std::max(out.phi0, std::abs(dnu + e * tan_r * u));
            } else {
                out.phi_i = std::max(out.phi_i, std::abs(dnu - cot_r * u));
            }
        }
    }
    return out;
}

bool star_shaped_check(const AnnulusFamily& family, double s0, std::size_t n_samples) {
    if (n_samples < 2) return true;
    double prev = 0.0;
    int direction = 0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double s = -s0 + 2.0 * s0 * static_cast<double>(k) / static_cast<double>(n_samples - 1);
        const auto p = family.immerse(s, 0.0);
        const double chi = std::atan2(p.y()[1], p.y()[0]);
        if (k > 0) {
            const double d = chi - prev;
            const int dir = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (dir == 0 || (direction != 0 && dir != direction)) return false;
            direction = dir;
        }
        prev = chi;
    }
    return true;
}

double min_pole_distance(const AnnulusFamily& family, double s0, std::size_t n_s, std::size_t n_theta) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_s; ++i) {
        const double s = n_s == 1 ? 0.0 : -s0 + 2.0 * s0 * static_cast<double>(i) / static_cast<double>(n_s - 1);
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
            best = std::min(best, pole_distance(family.immerse(s, theta)));
        }
    }
    return best;
}

} // namespace annulus_lab
