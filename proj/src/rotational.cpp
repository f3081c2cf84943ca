#include "annulus_lab/rotational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "annulus_lab/numerics.hpp"

namespace annulus_lab {

namespace {

constexpr double kPi = std::numbers::pi;

// Memo range for psi. The free-boundary search windows end at pi/2 (eps = +1)
// and 5 (eps = -1); the margin leaves room for finite-difference stencils.
double table_upper(SpaceFormSign eps) { return eps == SpaceFormSign::spherical ? 2.0 : 5.5; }

struct RadicandValues {
    double f2;
    double g2;
    double s2; ///< sin_eps(2s)
};

RadicandValues radicands(const AnnulusFamilyParams& p, double s) {
    const double e = sign_value(p.eps);
    const double c2 = cos_eps(p.eps, 2.0 * s);
    RadicandValues r{0.5 * (1.0 - e * p.a * c2), 0.5 * (e + p.a * c2), sin_eps(p.eps, 2.0 * s)};
    if (!(r.f2 > 0.0) || !(r.g2 > 0.0)) {
        throw DomainError("profile radicand not positive at s = " + std::to_string(s));
    }
    return r;
}

double psi_prefactor(const AnnulusFamilyParams& p) { return std::sqrt(sign_value(p.eps) * (1.0 - p.a * p.a)); }

double dpsi_raw(const AnnulusFamilyParams& p, double s) {
    const auto r = radicands(p, s);
    return psi_prefactor(p) / (2.0 * r.f2 * std::sqrt(r.g2));
}

} // namespace

bool AnnulusFamilyParams::in_range() const {
    if (!std::isfinite(a)) return false;
    if (eps == SpaceFormSign::spherical) return a > -1.0 && a <= 0.0;
    return a > 1.0;
}

void AnnulusFamilyParams::validate() const {
    if (!in_range()) {
        throw ParameterRangeError(eps == SpaceFormSign::spherical
                                      ? "a must lie in (-1, 0] for eps = +1, got " + std::to_string(a)
                                      : "a must lie in (1, inf) for eps = -1, got " + std::to_string(a));
    }
}

// ------------------------------------------------------------------ PsiTable

PsiTable::PsiTable(const AnnulusFamilyParams& params, double upper, double quad_tol) : upper_(upper) {
    auto integrand = [&params](double t) { return dpsi_raw(params, t); };

    for (std::size_t n = 32; n <= 2048; n *= 2) {
        nodes_.assign(n + 1, 0.0);
        values_.assign(n + 1, 0.0);
        weights_.assign(n + 1, 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            nodes_[k] = 0.5 * upper * (1.0 - std::cos(kPi * static_cast<double>(k) / static_cast<double>(n)));
            weights_[k] = (k % 2 == 0 ? 1.0 : -1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);
        }
        nodes_[0] = 0.0;
        nodes_[n] = upper;
        const double seg_tol = quad_tol / static_cast<double>(n);
        for (std::size_t k = 1; k <= n; ++k) {
            values_[k] = values_[k - 1] + numerics::adaptive_simpson(integrand, nodes_[k - 1], nodes_[k], seg_tol);
        }

        validation_error_ = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double mid = 0.5 * (nodes_[k] + nodes_[k + 1]);
            const double direct = values_[k] + numerics::adaptive_simpson(integrand, nodes_[k], mid, seg_tol);
            validation_error_ = std::max(validation_error_, std::abs((*this)(mid)-direct));
        }
        if (validation_error_ <= 2.0 * quad_tol) {
            return;
        }
    }
    throw NumericError("PsiTable: Chebyshev interpolant did not reach tolerance (error " +
                       std::to_string(validation_error_) + ")");
}

double PsiTable::operator()(double s) const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const double d = s - nodes_[k];
        if (d == 0.0) return values_[k];
        const double w = weights_[k] / d;
        num += w * values_[k];
        den += w;
    }
    return num / den;
}

// ------------------------------------------------------------- AnnulusFamily

AnnulusFamily::AnnulusFamily(AnnulusFamilyParams params, double quad_abs_tol) : params_(params), quad_tol_(quad_abs_tol) {
    params_.validate();
    if (!(quad_abs_tol > 0.0)) {
        throw ConfigurationError("quadrature tolerance must be positive");
    }
    table_ = PsiTable(params_, table_upper(params_.eps), quad_tol_);
}

double AnnulusFamily::f(double s) const { return std::sqrt(radicands(params_, s).f2); }
double AnnulusFamily::g(double s) const { return std::sqrt(radicands(params_, s).g2); }
double AnnulusFamily::dpsi(double s) const { return dpsi_raw(params_, s); }

double AnnulusFamily::psi_direct(double s) const {
    const double t = std::abs(s);
    const double v = numerics::adaptive_simpson([this](double u) { return dpsi_raw(params_, u); }, 0.0, t, quad_tol_);
    return s < 0.0 ? -v : v;
}

double AnnulusFamily::psi(double s) const {
    const double t = std::abs(s);
    double v;
    if (t <= table_.upper()) {
        v = table_(t);
    } else {
        v = table_(table_.upper()) +
            numerics::adaptive_simpson([this](double u) { return dpsi_raw(params_, u); }, table_.upper(), t, quad_tol_);
    }
    return s < 0.0 ? -v : v;
}

ProfileSample AnnulusFamily::profile(double s) const {
    const auto r = radicands(params_, s);
    const double e = sign_value(params_.eps);
    ProfileSample out;
    out.s = s;
    out.f = std::sqrt(r.f2);
    out.g = std::sqrt(r.g2);
    out.df = params_.a * r.s2 / (2.0 * out.f);
    out.dg = -e * params_.a * r.s2 / (2.0 * out.g);
    out.dpsi = psi_prefactor(params_) / (2.0 * r.f2 * out.g);
    out.psi = psi(s);
    return out;
}

MetricCoefficients AnnulusFamily::metric(double s) const {
    const auto r = radicands(params_, s);
    const double e = sign_value(params_.eps);
    const double f = std::sqrt(r.f2);
    const double g = std::sqrt(r.g2);
    const double df = params_.a * r.s2 / (2.0 * f);
    const double dg = -e * params_.a * r.s2 / (2.0 * g);
    const double dpsi = psi_prefactor(params_) / (2.0 * r.f2 * g);
    return {e * df * df + r.f2 * dpsi * dpsi + dg * dg, r.g2};
}

AmbientVector AnnulusFamily::position(double s, double theta, double psi_value) const {
    const double f = this->f(s);
    const double g = this->g(s);
    return {f * cos_eps(params_.eps, psi_value),
            {f * sin_eps(params_.eps, psi_value), g * std::cos(theta), g * std::sin(theta)}};
}

AmbientVector AnnulusFamily::tangent_s(double s, double theta, double psi_value) const {
    const auto r = radicands(params_, s);
    const double e = sign_value(params_.eps);
    const double f = std::sqrt(r.f2);
    const double g = std::sqrt(r.g2);
    const double df = params_.a * r.s2 / (2.0 * f);
    const double dg = -e * params_.a * r.s2 / (2.0 * g);
    const double dpsi = psi_prefactor(params_) / (2.0 * r.f2 * g);
    const double c = cos_eps(params_.eps, psi_value);
    const double sn = sin_eps(params_.eps, psi_value);
    return {df * c - e * f * sn * dpsi, {df * sn + f * c * dpsi, dg * std::cos(theta), dg * std::sin(theta)}};
}

AmbientPoint AnnulusFamily::immerse(double s, double theta) const {
    return {params_.eps, position(s, theta, psi(s))};
}

AmbientVector AnnulusFamily::d_s(double s, double theta) const { return tangent_s(s, theta, psi(s)); }

AmbientVector AnnulusFamily::d_theta(double s, double theta) const {
    const double g = this->g(s);
    return {0.0, {0.0, -g * std::sin(theta), g * std::cos(theta)}};
}

ImmersionJet AnnulusFamily::jet(double s, double theta) const {
    const SpaceFormSign eps = params_.eps;
    const double h = 1e-5 * std::max(1.0, std::abs(s));
    const double inv2h = 1.0 / (2.0 * h);

    ImmersionJet j{immerse(s, theta), {}, {}, {}, {}, {}, 0.0, 0.0, 0.0, {}};
    j.d_s = d_s(s, theta);
    j.d_theta = d_theta(s, theta);
    j.d_ss = inv2h * (d_s(s + h, theta) - d_s(s - h, theta));
    j.d_stheta = inv2h * (d_theta(s + h, theta) - d_theta(s - h, theta));
    j.d_thetatheta = inv2h * (d_theta(s, theta + h) - d_theta(s, theta - h));
    j.E = metric_inner(eps, j.d_s, j.d_s);
    j.F = metric_inner(eps, j.d_s, j.d_theta);
    j.G = metric_inner(eps, j.d_theta, j.d_theta);
    if (j.G < 1e-12 || j.E < 1e-12) {
        throw GeometryError("jet: degenerate frame at s = " + std::to_string(s));
    }

    // Orthogonal frame {p, d_s, d_theta}; <p, p> = eps.
    const AmbientVector p = j.point.coords();
    std::vector<AmbientVector> frame;
    frame.push_back(p);
    auto orthogonalize = [&](AmbientVector w) {
        for (const auto& e : frame) {
            w = w - (metric_inner(eps, w, e) / metric_inner(eps, e, e)) * e;
        }
        return w;
    };
    frame.push_back(orthogonalize(j.d_s));
    frame.push_back(orthogonalize(j.d_theta));

    AmbientVector best;
    double best_norm = -1.0;
    for (int k = 0; k < 4; ++k) {
        const AmbientVector w = orthogonalize(basis_vector(k));
        const double nn = metric_inner(eps, w, w);
        if (nn > best_norm) {
            best_norm = nn;
            best = w;
        }
    }
    if (!(best_norm > 1e-12)) {
        throw GeometryError("jet: could not complete the normal frame");
    }
    AmbientVector n = orthogonalize((1.0 / std::sqrt(best_norm)) * best);
    j.normal = (1.0 / std::sqrt(metric_inner(eps, n, n))) * n;
    return j;
}

double AnnulusFamily::mean_curvature(double s, double theta) const {
    const auto j = jet(s, theta);
    const double ii_ss = metric_inner(params_.eps, j.d_ss, j.normal);
    const double ii_tt = metric_inner(params_.eps, j.d_thetatheta, j.normal);
    return 0.5 * (ii_ss / j.E + ii_tt / j.G);
}

double AnnulusFamily::helmholtz_residual(const AmbientVector& v, double s, double theta) const {
    const SpaceFormSign eps = params_.eps;
    auto flux = [&](double t) {
        const auto m = metric(t);
        return std::sqrt(m.G / m.E) * metric_inner(eps, v, d_s(t, theta));
    };
    const double h = 1e-3 * std::max(1.0, std::abs(s));
    const double dflux = (-flux(s + 2.0 * h) + 8.0 * flux(s + h) - 8.0 * flux(s - h) + flux(s - 2.0 * h)) / (12.0 * h);

    const auto m = metric(s);
    const AmbientVector p = immerse(s, theta).coords();
    const AmbientVector p_thth{0.0, {0.0, -p.y[1], -p.y[2]}};
    const double u = metric_inner(eps, v, p);
    const double u_thth = metric_inner(eps, v, p_thth);
    const double laplacian = dflux / std::sqrt(m.E * m.G) + u_thth / m.G;
    return laplacian + 2.0 * sign_value(eps) * u;
}

} // namespace annulus_lab
