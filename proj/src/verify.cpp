#include "annulus_lab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "annulus_lab/steklov.hpp"

namespace annulus_lab {

namespace {

constexpr double kPi = std::numbers::pi;

VerifyCheck at_most(std::string name, double value, double tol) {
    return {std::move(name), value, tol, std::isfinite(value) && value <= tol};
}

VerifyCheck above(std::string name, double value, double tol) {
    return {std::move(name), value, tol, std::isfinite(value) && value > tol};
}

double grid_max(std::size_t n_s, std::size_t n_theta, double s0, const std::function<double(double, double)>& f) {
    double best = 0.0;
    for (std::size_t i = 0; i < n_s; ++i) {
        const double s = -s0 + 2.0 * s0 * static_cast<double>(i) / static_cast<double>(n_s - 1);
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
            best = std::max(best, f(s, theta));
        }
    }
    return best;
}

} // namespace

std::vector<VerifyCheck> run_verification(const CriticalAnnulus& solved, const numerics::ToleranceConfig& tol,
                                          double perturb_s0) {
    FreeBoundaryConfig cfg = solved.config();
    cfg.s0 += perturb_s0;
    const CriticalAnnulus annulus(solved.family(), cfg);
    const auto& family = annulus.family();
    const SpaceFormSign eps = family.eps();
    const double s0 = cfg.s0;
    const double r = cfg.r;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<VerifyCheck> checks;
    auto guarded = [&](auto&& f) {
        try {
            return f();
        } catch (const Error&) {
            return inf;
        }
    };

    checks.push_back(at_most("constraint_residual", guarded([&] {
                                 return grid_max(50, 50, s0, [&](double s, double t) {
                                     return constraint_residual(eps, family.immerse(s, t).coords());
                                 });
                             }),
                             kPointTolerance));
    checks.push_back(at_most("mean_curvature", guarded([&] {
                                 return grid_max(20, 20, s0, [&](double s, double t) {
                                     return std::abs(family.mean_curvature(s, t));
                                 });
                             }),
                             1e-5));
    checks.push_back(at_most("antipodal_equivariance", guarded([&] {
                                 return grid_max(20, 20, s0, [&](double s, double t) {
                                     const auto lhs = family.immerse(-s, t + kPi).coords();
                                     const auto rhs = antipodal(family.immerse(s, t)).coords();
                                     const auto d = lhs - rhs;
                                     return std::max(std::abs(d.x), d.y_norm());
                                 });
                             }),
                             1e-12));
    checks.push_back(at_most("helmholtz_residual", guarded([&] {
                                 double best = 0.0;
                                 for (int k = 0; k < 4; ++k) {
                                     best = std::max(best, grid_max(10, 8, s0, [&](double s, double t) {
                                                         return std::abs(
                                                             family.helmholtz_residual(basis_vector(k), s, t));
                                                     }));
                                 }
                                 return best;
                             }),
                             1e-6));
    checks.push_back(
        at_most("orthogonality", guarded([&] { return std::abs(orthogonality_residual(family, s0, 0.0)); }), 1e-10));
    checks.push_back(at_most("boundary_on_sphere", guarded([&] {
                                 double best = 0.0;
                                 for (double side : {-1.0, 1.0}) {
                                     for (int j = 0; j < 32; ++j) {
                                         const auto p = family.immerse(side * s0, 2.0 * kPi * j / 32.0);
                                         best = std::max(best, std::abs(pole_distance(p) - r));
                                     }
                                 }
                                 return best;
                             }),
                             1e-10));
    checks.push_back(above("containment_margin", guarded([&] {
                               double worst = 0.0;
                               const std::size_t n = 2000;
                               for (std::size_t k = 0; k <= n; ++k) {
                                   const double s = (s0 - 1e-3) * static_cast<double>(k) / static_cast<double>(n);
                                   worst = std::max(worst, pole_distance(family.immerse(s, 0.0)));
                               }
                               return r - worst;
                           }),
                           1e-8));
    double bc0 = inf;
    double bci = inf;
    try {
        bc0 = 0.0;
        bci = 0.0;
        for (double side : {-1.0, 1.0}) {
            const auto bc = verify_boundary_conditions(family, s0, r, side);
            bc0 = std::max(bc0, bc.phi0);
            bci = std::max(bci, bc.phi_i);
        }
    } catch (const Error&) {
        bc0 = bci = inf;
    }
    checks.push_back(at_most("bc_phi0", bc0, 1e-6));
    checks.push_back(at_most("bc_phi_i", bci, 1e-6));
    if (eps == SpaceFormSign::spherical) {
        checks.push_back({"radius_below_half_pi", r, 0.5 * kPi, r > 0.0 && r < 0.5 * kPi});
    }
    checks.push_back(above("pole_clearance", guarded([&] { return min_pole_distance(family, s0, 50, 50); }), 0.0));
    checks.push_back({"star_shaped", star_shaped_check(family, s0, 500) ? 1.0 : 0.0, 1.0,
                      star_shaped_check(family, s0, 500)});

    double margin = -inf;
    double stability = inf;
    try {
        const SeparatedOperator op(annulus);
        margin = dirichlet_min(op, 6).lambda - annulus.alpha();
        const auto table = spectrum(op, 6, tol);
        stability = 0.0;
        for (const auto& p : table.pairs) stability = std::max(stability, p.step_halving_rel_diff);
    } catch (const Error&) {
    }
    checks.push_back(above("supercriticality_margin", margin, 0.0));
    checks.push_back(at_most("eigenvalue_step_halving", stability, tol.ode_rel_tol));
    return checks;
}

} // namespace annulus_lab
