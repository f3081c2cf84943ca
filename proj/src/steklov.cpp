#include "annulus_lab/steklov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "annulus_lab/parallel.hpp"

namespace annulus_lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kSteps = 4096;
constexpr std::size_t kDirichletSteps = 1024;

double parity_sign(RadialParity p, double s) { return (p == RadialParity::odd && s < 0.0) ? -1.0 : 1.0; }

// Index of the sample interval containing t in [0, s0] for n uniform intervals.
std::size_t interval_of(double t, double h, std::size_t n) {
    const double x = t / h;
    if (!(x > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(x), n - 1);
}

struct HermiteBasis {
    double h00, h10, h01, h11;
    double d00, d10, d01, d11;
};

HermiteBasis hermite(double t, double h) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return {2 * t3 - 3 * t2 + 1,
            (t3 - 2 * t2 + t) * h,
            -2 * t3 + 3 * t2,
            (t3 - t2) * h,
            (6 * t2 - 6 * t) / h,
            3 * t2 - 4 * t + 1,
            (-6 * t2 + 6 * t) / h,
            3 * t2 - 2 * t};
}

bool has_zero_after_origin(const std::vector<double>& w) {
    double prev = 0.0;
    for (std::size_t k = 1; k < w.size(); ++k) {
        if (w[k] == 0.0) return true;
        if (prev != 0.0 && (w[k] > 0.0) != (prev > 0.0)) return true;
        prev = w[k];
    }
    return false;
}

} // namespace

std::string to_string(RadialParity p) { return p == RadialParity::even ? "even" : "odd"; }
std::string to_string(AParity p) { return p == AParity::a_odd ? "A_odd" : "A_even"; }

AParity classify_a_parity(int m, RadialParity parity) {
    const bool m_odd = (m % 2) != 0;
    const bool radial_odd = parity == RadialParity::odd;
    return m_odd != radial_odd ? AParity::a_odd : AParity::a_even;
}

// --------------------------------------------------------- SeparatedOperator

SeparatedOperator::SeparatedOperator(const CriticalAnnulus& annulus)
    : s0_(annulus.s0()), alpha_(annulus.alpha()), eps_(annulus.eps()),
      h_(annulus.s0() / static_cast<double>(kTableIntervals)) {
    const auto& family = annulus.family();
    const std::size_t n = kTableIntervals + 1;
    e_.resize(n);
    g_.resize(n);
    drift_.resize(n);
    const double d = 1e-4;
    auto e_of = [&](double s) { return family.metric(s).E; };
    for (std::size_t k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) * h_;
        const auto m = family.metric(s);
        const auto prof = family.profile(s);
        const double dG = 2.0 * prof.g * prof.dg;
        const double dE = (-e_of(s + 2 * d) + 8 * e_of(s + d) - 8 * e_of(s - d) + e_of(s - 2 * d)) / (12 * d);
        e_[k] = m.E;
        g_[k] = m.G;
        drift_[k] = 0.5 * (dG / m.G - dE / m.E);
    }
}

double SeparatedOperator::lookup(const std::vector<double>& table, double s) const {
    const std::size_t k = interval_of(s, h_, kTableIntervals);
    const double t = s / h_ - static_cast<double>(k);
    return table[k] + t * (table[k + 1] - table[k]);
}

// --------------------------------------------------------------- integration

ModeSolution mode_ode_integrate(const SeparatedOperator& op, const ModeProblem& problem, std::size_t n_steps) {
    if (problem.m < 0) {
        throw ConfigurationError("mode index m must be non-negative");
    }
    const double symbol = problem.symbol();
    const double alpha = problem.alpha;
    auto rhs = [&](double s, const numerics::State<2>& y) {
        return numerics::State<2>{y[1], -op.drift(s) * y[1] + op.E(s) * (symbol / op.G(s) - alpha) * y[0]};
    };
    const numerics::State<2> y0 =
        problem.parity == RadialParity::even ? numerics::State<2>{1.0, 0.0} : numerics::State<2>{0.0, 1.0};
    auto traj = numerics::rk4_integrate<2>(rhs, y0, 0.0, op.s0(), n_steps);

    ModeSolution out;
    out.s = std::move(traj.t);
    out.w.reserve(traj.y.size());
    out.dw.reserve(traj.y.size());
    for (const auto& y : traj.y) {
        out.w.push_back(y[0]);
        out.dw.push_back(y[1]);
    }
    return out;
}

double Eigenpair::eval(double s_value) const {
    const double t = std::abs(s_value);
    const std::size_t n = s.size() - 1;
    const double h = s0() / static_cast<double>(n);
    const std::size_t k = interval_of(t, h, n);
    const auto b = hermite(t / h - static_cast<double>(k), h);
    const double v = b.h00 * w[k] + b.h10 * dw[k] + b.h01 * w[k + 1] + b.h11 * dw[k + 1];
    return parity_sign(parity, s_value) * v;
}

double Eigenpair::eval_derivative(double s_value) const {
    const double t = std::abs(s_value);
    const std::size_t n = s.size() - 1;
    const double h = s0() / static_cast<double>(n);
    const std::size_t k = interval_of(t, h, n);
    const auto b = hermite(t / h - static_cast<double>(k), h);
    const double v = b.d00 * w[k] + b.d10 * dw[k] + b.d01 * w[k + 1] + b.d11 * dw[k + 1];
    // d/ds of w(|s|) flips sign for s < 0; odd extension flips it back.
    const double sign = s_value < 0.0 && parity == RadialParity::even ? -1.0 : 1.0;
    return sign * v;
}

Eigenpair mode_eigenvalue(const SeparatedOperator& op, const ModeProblem& problem) {
    auto coarse = mode_ode_integrate(op, problem, kSteps);
    const auto fine = mode_ode_integrate(op, problem, 2 * kSteps);

    double w_max = 0.0;
    for (double v : coarse.w) w_max = std::max(w_max, std::abs(v));
    const double w_b = coarse.w.back();
    if (std::abs(w_b) < 1e-10 * w_max) {
        throw DirichletResonanceError("frequency is a Dirichlet eigenvalue of mode m = " + std::to_string(problem.m) +
                                      " (" + to_string(problem.parity) + ")");
    }

    const double sqrt_e = std::sqrt(op.E(op.s0()));
    const double sigma = coarse.dw.back() / (sqrt_e * w_b);
    const double sigma_fine = fine.dw.back() / (sqrt_e * fine.w.back());
    const double rel = std::abs(sigma - sigma_fine) / std::max(std::abs(sigma_fine), 1e-300);
    if (rel > 1e-5) {
        throw NumericError("mode_eigenvalue: step halving changed sigma by " + std::to_string(rel));
    }

    Eigenpair out;
    out.sigma = sigma;
    out.m = problem.m;
    out.parity = problem.parity;
    out.a_parity = classify_a_parity(problem.m, problem.parity);
    out.s = std::move(coarse.s);
    out.w = std::move(coarse.w);
    out.dw = std::move(coarse.dw);
    out.sqrt_E_boundary = sqrt_e;
    out.step_halving_rel_diff = rel;
    return out;
}

// ------------------------------------------------------------------ spectrum

const Eigenpair& SpectrumTable::pair(int m, RadialParity parity) const {
    for (const auto& p : pairs) {
        if (p.m == m && p.parity == parity) return p;
    }
    throw std::out_of_range("SpectrumTable: mode (" + std::to_string(m) + ", " + to_string(parity) + ") not computed");
}

std::vector<double> SpectrumTable::sigmas_with_multiplicity() const {
    std::vector<double> out;
    for (const auto& p : pairs) {
        out.push_back(p.sigma);
        if (p.m > 0) out.push_back(p.sigma);
    }
    return out;
}

SpectrumTable spectrum(const CriticalAnnulus& annulus, int m_max, const numerics::ToleranceConfig& tol) {
    return spectrum(SeparatedOperator(annulus), m_max, tol);
}

SpectrumTable spectrum(const SeparatedOperator& op, int m_max, const numerics::ToleranceConfig& tol) {
    if (m_max < 2) {
        throw ConfigurationError("spectrum: m_max must be at least 2");
    }
    const std::size_t n_modes = static_cast<std::size_t>(m_max + 1);
    std::vector<Eigenpair> pairs(2 * n_modes);
    parallel_for(pairs.size(), [&](std::size_t k) {
        ModeProblem problem;
        problem.m = static_cast<int>(k / 2);
        problem.parity = k % 2 == 0 ? RadialParity::even : RadialParity::odd;
        problem.alpha = op.alpha();
        pairs[k] = mode_eigenvalue(op, problem);
    });

    SpectrumTable table;
    table.m_max = m_max;
    table.cluster_rel_tol = tol.cluster_rel_tol;
    table.monotone_in_m = true;
    for (std::size_t k = 2; k < pairs.size(); ++k) {
        if (!(pairs[k].sigma > pairs[k - 2].sigma)) table.monotone_in_m = false;
    }

    std::stable_sort(pairs.begin(), pairs.end(), [](const Eigenpair& x, const Eigenpair& y) {
        if (x.sigma != y.sigma) return x.sigma < y.sigma;
        if (x.m != y.m) return x.m < y.m;
        return x.parity < y.parity;
    });

    int index = 0;
    for (const auto& p : pairs) {
        const int mult = p.m == 0 ? 1 : 2;
        if (!table.entries.empty()) {
            auto& last = table.entries.back();
            const double scale = std::max({std::abs(last.sigma), std::abs(p.sigma), 1e-300});
            if (std::abs(p.sigma - last.sigma) <= tol.cluster_rel_tol * scale) {
                last.multiplicity += mult;
                last.labels.push_back({p.m, p.parity});
                index += mult;
                continue;
            }
        }
        table.entries.push_back({p.sigma, mult, index, {{p.m, p.parity}}});
        index += mult;
    }
    table.pairs = std::move(pairs);

    const auto& ground = table.pairs.front();
    if (table.entries.front().multiplicity != 1 || ground.m != 0 || ground.parity != RadialParity::even) {
        throw NumericError("spectrum: lowest eigenvalue is not a simple radially even m = 0 mode");
    }
    for (double v : ground.w) {
        if (!(v > 0.0)) throw NumericError("spectrum: ground state profile changes sign");
    }
    return table;
}

// ----------------------------------------------------------------- Dirichlet

DirichletMin dirichlet_min(const SeparatedOperator& op, int m_max) {
    if (m_max < 0) {
        throw ConfigurationError("dirichlet_min: m_max must be non-negative");
    }
    auto has_zero = [&](int m, RadialParity parity, double lambda) {
        ModeProblem problem{m, parity, lambda, std::nullopt};
        return has_zero_after_origin(mode_ode_integrate(op, problem, kDirichletSteps).w);
    };

    DirichletMin best{std::numeric_limits<double>::infinity(), 0, RadialParity::even};
    for (int m = 0; m <= m_max; ++m) {
        for (RadialParity parity : {RadialParity::even, RadialParity::odd}) {
            double lo = 0.0;
            if (has_zero(m, parity, lo)) {
                throw NumericError("dirichlet_min: lambda = 0 already has a Dirichlet node");
            }
            double hi = 1.0;
            while (!has_zero(m, parity, hi)) {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e8) throw NumericError("dirichlet_min: could not bracket the first Dirichlet eigenvalue");
            }
            for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (has_zero(m, parity, mid) ? hi : lo) = mid;
            }
            if (hi < best.lambda) best = {hi, m, parity};
        }
    }
    return best;
}

// ----------------------------------------------------------------- expansion

void ModeExpansion::add(const Eigenpair& pair, bool sine, double coeff) {
    if (pair.m == 0 && sine) {
        throw ConfigurationError("ModeExpansion: sin(0 theta) vanishes identically");
    }
    terms.push_back({pair, sine, coeff});
}

double ModeExpansion::evaluate(double s, double theta) const {
    double u = 0.0;
    for (const auto& t : terms) {
        const double ang = static_cast<double>(t.pair.m) * theta;
        u += t.coeff * t.pair.eval(s) * (t.sine ? std::sin(ang) : std::cos(ang));
    }
    return u;
}

namespace {

struct SampledTerm {
    const ExpansionTerm* term;
    std::vector<double> trig;  // cos or sin(m theta_j)
    std::vector<double> dtrig; // derivative in theta
};

std::vector<SampledTerm> sample_terms(const ModeExpansion& u, std::size_t n_theta) {
    std::vector<SampledTerm> out;
    for (const auto& t : u.terms) {
        SampledTerm st{&t, std::vector<double>(n_theta), std::vector<double>(n_theta)};
        const double m = static_cast<double>(t.pair.m);
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double ang = m * 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
            st.trig[j] = t.sine ? std::sin(ang) : std::cos(ang);
            st.dtrig[j] = t.sine ? m * std::cos(ang) : -m * std::sin(ang);
        }
        out.push_back(std::move(st));
    }
    return out;
}

} // namespace

double rayleigh_quotient(const SeparatedOperator& op, const ModeExpansion& u, std::size_t n_theta) {
    if (u.terms.empty()) {
        throw UndefinedQuotientError("rayleigh_quotient: empty expansion");
    }
    if (n_theta < 4) {
        throw ConfigurationError("rayleigh_quotient: n_theta must be at least 4");
    }
    const std::size_t n = u.terms.front().pair.s.size() - 1;
    for (const auto& t : u.terms) {
        if (t.pair.s.size() != n + 1 || std::abs(t.pair.s0() - op.s0()) > 1e-12) {
            throw ConfigurationError("rayleigh_quotient: eigenpairs must share one radial grid");
        }
    }
    const auto sampled = sample_terms(u, n_theta);
    const double h = op.s0() / static_cast<double>(n);
    const double h_theta = 2.0 * kPi / static_cast<double>(n_theta);

    double bilinear = 0.0;
    double interior_norm = 0.0;
    double boundary_norm = 0.0;
    std::vector<double> uu(n_theta), us(n_theta), ut(n_theta);
    for (int side : {-1, 1}) {
        for (std::size_t k = 0; k <= n; ++k) {
            if (side < 0 && k == 0) continue; // s = 0 counted once
            const double s = side * static_cast<double>(k) * h;
            std::fill(uu.begin(), uu.end(), 0.0);
            std::fill(us.begin(), us.end(), 0.0);
            std::fill(ut.begin(), ut.end(), 0.0);
            for (const auto& st : sampled) {
                const auto& p = st.term->pair;
                const double ps = parity_sign(p.parity, s);
                const double w = ps * p.w[k];
                // derivative of the parity extension: even flips, odd keeps
                const double dw = (s < 0.0 && p.parity == RadialParity::even) ? -p.dw[k] : p.dw[k];
                const double c = st.term->coeff;
                for (std::size_t j = 0; j < n_theta; ++j) {
                    uu[j] += c * w * st.trig[j];
                    us[j] += c * dw * st.trig[j];
                    ut[j] += c * w * st.dtrig[j];
                }
            }
            const double e = op.E(std::abs(s));
            const double g = op.G(std::abs(s));
            const double area = std::sqrt(e * g);
            const double ws = (k == n ? 0.5 : 1.0) * h * h_theta;
            for (std::size_t j = 0; j < n_theta; ++j) {
                bilinear += ws * area * (us[j] * us[j] / e + ut[j] * ut[j] / g - op.alpha() * uu[j] * uu[j]);
                interior_norm += ws * area * uu[j] * uu[j];
                if (k == n) boundary_norm += h_theta * std::sqrt(g) * uu[j] * uu[j];
            }
        }
    }
    if (!(boundary_norm > 1e-20 * interior_norm) || boundary_norm == 0.0) {
        throw UndefinedQuotientError("rayleigh_quotient: boundary trace vanishes");
    }
    return bilinear / boundary_norm;
}

double boundary_inner(const SeparatedOperator& op, const ModeExpansion& u, const ModeExpansion& v,
                      std::size_t n_theta) {
    const double h_theta = 2.0 * kPi / static_cast<double>(n_theta);
    const double weight = std::sqrt(op.G(op.s0())) * h_theta;
    double acc = 0.0;
    for (double s : {-op.s0(), op.s0()}) {
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double theta = h_theta * static_cast<double>(j);
            acc += weight * u.evaluate(s, theta) * v.evaluate(s, theta);
        }
    }
    return acc;
}

// ------------------------------------------------------------ profile match

double ProfileMatch::max() const { return std::max({phi0, phi1, phi2}); }

ProfileMatch coordinate_profile_match(const CriticalAnnulus& annulus, const SpectrumTable& table) {
    const auto& family = annulus.family();
    const SpaceFormSign eps = family.eps();
    auto deviation = [&](const Eigenpair& p, auto&& analytic) {
        const double scale = analytic(p.s.back()) / p.w.back();
        double dev = 0.0;
        double norm = 0.0;
        for (std::size_t k = 0; k < p.s.size(); ++k) {
            const double a = analytic(p.s[k]);
            dev = std::max(dev, std::abs(scale * p.w[k] - a));
            norm = std::max(norm, std::abs(a));
        }
        return dev / norm;
    };
    ProfileMatch out;
    out.phi0 = deviation(table.pair(0, RadialParity::even),
                         [&](double s) { return family.f(s) * cos_eps(eps, family.psi(s)); });
    out.phi1 = deviation(table.pair(0, RadialParity::odd),
                         [&](double s) { return family.f(s) * sin_eps(eps, family.psi(s)); });
    out.phi2 = deviation(table.pair(1, RadialParity::even), [&](double s) { return family.g(s); });
    return out;
}

} // namespace annulus_lab
