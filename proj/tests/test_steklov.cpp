#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "annulus_lab/steklov.hpp"

using namespace annulus_lab;

namespace {

const CriticalAnnulus& sphere_annulus() {
    static const CriticalAnnulus c = solve_annulus({SpaceFormSign::spherical, -0.5});
    return c;
}
const CriticalAnnulus& hyperbolic_annulus() {
    static const CriticalAnnulus c = solve_annulus({SpaceFormSign::hyperbolic, 2.0});
    return c;
}
const SpectrumTable& sphere_table() {
    static const SpectrumTable t = spectrum(sphere_annulus(), 6);
    return t;
}
const SpectrumTable& hyperbolic_table() {
    static const SpectrumTable t = spectrum(hyperbolic_annulus(), 6);
    return t;
}

// Flat band E = 1, G = 1/2 cut at an arbitrary s0; not free boundary, but the
// radial equation has closed-form solutions.
CriticalAnnulus clifford_band(double s0) {
    FreeBoundaryConfig cfg;
    cfg.params = {SpaceFormSign::spherical, 0.0};
    cfg.s0 = s0;
    cfg.r = 1.0;
    return {AnnulusFamily(cfg.params), cfg};
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

} // namespace

TEST(AParity, Classification) {
    EXPECT_EQ(classify_a_parity(0, RadialParity::even), AParity::a_even);
    EXPECT_EQ(classify_a_parity(0, RadialParity::odd), AParity::a_odd);
    EXPECT_EQ(classify_a_parity(1, RadialParity::even), AParity::a_odd);
    EXPECT_EQ(classify_a_parity(1, RadialParity::odd), AParity::a_even);
    EXPECT_EQ(to_string(AParity::a_odd), "A_odd");
    EXPECT_EQ(to_string(RadialParity::even), "even");
}

TEST(SeparatedOperator, CliffordBandCoefficients) {
    const SeparatedOperator op(clifford_band(0.8));
    for (double s : {0.0, 0.3, 0.8}) {
        EXPECT_NEAR(op.E(s), 1.0, 1e-12);
        EXPECT_NEAR(op.G(s), 0.5, 1e-12);
        EXPECT_NEAR(op.drift(s), 0.0, 1e-8);
    }
}

TEST(ModeOde, CliffordBandClosedForms) {
    const double s0 = 0.8;
    const SeparatedOperator op(clifford_band(s0));
    const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);

    const auto sol = mode_ode_integrate(op, {0, RadialParity::even, 2.0});
    double worst = 0.0;
    for (std::size_t k = 0; k < sol.s.size(); ++k) worst = std::max(worst, std::abs(sol.w[k] - std::cos(r2 * sol.s[k])));
    EXPECT_LT(worst, 1e-10);

    EXPECT_LT(rel(mode_eigenvalue(op, {0, RadialParity::even, 2.0}).sigma, -r2 * std::tan(r2 * s0)), 1e-9);
    EXPECT_LT(rel(mode_eigenvalue(op, {0, RadialParity::odd, 2.0}).sigma, r2 / std::tan(r2 * s0)), 1e-9);
    EXPECT_NEAR(mode_eigenvalue(op, {1, RadialParity::even, 2.0}).sigma, 0.0, 1e-10);
    EXPECT_LT(rel(mode_eigenvalue(op, {1, RadialParity::odd, 2.0}).sigma, 1.0 / s0), 1e-9);
    EXPECT_LT(rel(mode_eigenvalue(op, {2, RadialParity::even, 2.0}).sigma, r6 * std::tanh(r6 * s0)), 1e-9);
}

TEST(ModeOde, WronskianConserved) {
    // q (w1 w2' - w1' w2) is constant for two solutions of the same mode.
    const SeparatedOperator op(sphere_annulus());
    for (int m : {0, 2}) {
        const auto e = mode_ode_integrate(op, {m, RadialParity::even, op.alpha()});
        const auto o = mode_ode_integrate(op, {m, RadialParity::odd, op.alpha()});
        const double w0 = std::sqrt(op.G(0.0) / op.E(0.0));
        for (std::size_t k = 0; k < e.s.size(); k += 256) {
            const double q = std::sqrt(op.G(e.s[k]) / op.E(e.s[k]));
            EXPECT_NEAR(q * (e.w[k] * o.dw[k] - e.dw[k] * o.w[k]), w0, 1e-7);
        }
    }
}

TEST(ModeOde, ResidualOfRadialEquation) {
    const SeparatedOperator op(hyperbolic_annulus());
    const auto sol = mode_ode_integrate(op, {1, RadialParity::even, op.alpha()});
    const double h = sol.s[1] - sol.s[0];
    for (std::size_t k = 100; k + 100 < sol.s.size(); k += 300) {
        const double s = sol.s[k];
        const double d2w = (sol.dw[k + 1] - sol.dw[k - 1]) / (2 * h);
        const double rhs = -op.drift(s) * sol.dw[k] + op.E(s) * (1.0 / op.G(s) - op.alpha()) * sol.w[k];
        EXPECT_NEAR(d2w, rhs, 1e-5);
    }
}

TEST(Spectrum, LowestEigenvalueMatchesBoundaryCondition) {
    const double r_s = sphere_annulus().radius();
    const double r_h = hyperbolic_annulus().radius();
    const auto& s0 = sphere_table().entries.front();
    const auto& h0 = hyperbolic_table().entries.front();
    EXPECT_LT(rel(s0.sigma, -std::tan(r_s)), 1e-6);
    EXPECT_LT(rel(h0.sigma, std::tanh(r_h)), 1e-6);
    for (const auto* t : {&sphere_table(), &hyperbolic_table()}) {
        const auto& first = t->entries.front();
        EXPECT_EQ(first.multiplicity, 1);
        EXPECT_EQ(first.labels.front().m, 0);
        EXPECT_EQ(first.labels.front().parity, RadialParity::even);
        const auto& p = t->pair(0, RadialParity::even);
        for (double w : p.w) EXPECT_GT(w, 0.0);
    }
}

TEST(Spectrum, FirstNonzeroClassIsCoordinateTriple) {
    const double targets[] = {1.0 / std::tan(sphere_annulus().radius()),
                              1.0 / std::tanh(hyperbolic_annulus().radius())};
    int k = 0;
    for (const auto* t : {&sphere_table(), &hyperbolic_table()}) {
        const auto& e = t->entries.at(1);
        EXPECT_LT(rel(e.sigma, targets[k++]), 1e-6);
        EXPECT_EQ(e.multiplicity, 3);
        EXPECT_EQ(e.first_index, 1);
        bool has_radial = false, has_m1 = false;
        for (const auto& l : e.labels) {
            has_radial |= l.m == 0 && l.parity == RadialParity::odd;
            has_m1 |= l.m == 1 && l.parity == RadialParity::even;
        }
        EXPECT_TRUE(has_radial);
        EXPECT_TRUE(has_m1);
        EXPECT_LT(t->entries[0].sigma, e.sigma);
        EXPECT_GT(t->entries[2].sigma, e.sigma * (1.0 + 1e-6));
    }
}

TEST(Spectrum, MonotoneInModeAndStepHalving) {
    for (const auto* t : {&sphere_table(), &hyperbolic_table()}) {
        EXPECT_TRUE(t->monotone_in_m);
        for (const auto& p : t->pairs) EXPECT_LT(p.step_halving_rel_diff, 1e-8);
        const auto all = t->sigmas_with_multiplicity();
        EXPECT_EQ(all.size(), 2u * (1 + 2 * 6));
        for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LE(all[i - 1], all[i]);
    }
}

TEST(Spectrum, RejectsTinyModeRange) { EXPECT_THROW(spectrum(sphere_annulus(), 1), ConfigurationError); }

TEST(Spectrum, ProfilesMatchCoordinateFunctions) {
    EXPECT_LE(coordinate_profile_match(sphere_annulus(), sphere_table()).max(), 1e-6);
    EXPECT_LE(coordinate_profile_match(hyperbolic_annulus(), hyperbolic_table()).max(), 1e-6);
}

TEST(Dirichlet, SupercriticalOnSphereCase) {
    const SeparatedOperator op(sphere_annulus());
    const auto d = dirichlet_min(op, 6);
    EXPECT_GT(d.lambda, 2.0);
    EXPECT_EQ(d.m, 0);
    EXPECT_EQ(d.parity, RadialParity::even);
}

TEST(Dirichlet, CliffordBandClosedForm) {
    // lambda = (pi / (2 s0))^2 for the flat band, m = 0 even
    const double s0 = 0.8;
    const SeparatedOperator op(clifford_band(s0));
    const double expected = std::pow(std::numbers::pi / (2 * s0), 2);
    EXPECT_LT(rel(dirichlet_min(op, 4).lambda, expected), 1e-6);
}

TEST(Rayleigh, EigenfunctionsReproduceEigenvalues) {
    const SeparatedOperator op(sphere_annulus());
    for (const auto& p : {sphere_table().pair(0, RadialParity::even), sphere_table().pair(1, RadialParity::even),
                          sphere_table().pair(2, RadialParity::odd)}) {
        ModeExpansion u;
        u.add(p, false, 1.0);
        EXPECT_LT(std::abs(rayleigh_quotient(op, u) - p.sigma), 1e-6 * std::max(1.0, std::abs(p.sigma)));
    }
}

TEST(Rayleigh, RandomMixturesBoundedBelow) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal;
    for (const auto* pair : {&sphere_annulus(), &hyperbolic_annulus()}) {
        const SeparatedOperator op(*pair);
        const auto table = spectrum(op, 4);
        const double floor = table.entries.front().sigma;
        for (int trial = 0; trial < 20; ++trial) {
            ModeExpansion u;
            for (const auto& p : table.pairs) {
                u.add(p, false, normal(rng));
                if (p.m > 0) u.add(p, true, normal(rng));
            }
            EXPECT_GE(rayleigh_quotient(op, u), floor - 1e-6);
        }
    }
}

TEST(Rayleigh, ZeroTraceRejected) {
    const SeparatedOperator op(sphere_annulus());
    ModeExpansion u;
    u.add(sphere_table().pair(1, RadialParity::even), false, 0.0);
    EXPECT_THROW(rayleigh_quotient(op, u), UndefinedQuotientError);
}

TEST(BoundaryInner, DistinctModesOrthogonal) {
    const SeparatedOperator op(hyperbolic_annulus());
    const auto& t = hyperbolic_table();
    std::vector<ModeExpansion> fields;
    for (const auto& p : t.pairs) {
        if (p.m > 3) continue;
        ModeExpansion c;
        c.add(p, false, 1.0);
        fields.push_back(c);
        if (p.m > 0) {
            ModeExpansion s;
            s.add(p, true, 1.0);
            fields.push_back(s);
        }
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const double ni = std::sqrt(boundary_inner(op, fields[i], fields[i]));
        for (std::size_t j = 0; j < i; ++j) {
            const double nj = std::sqrt(boundary_inner(op, fields[j], fields[j]));
            EXPECT_LT(std::abs(boundary_inner(op, fields[i], fields[j])) / (ni * nj), 1e-8);
        }
    }
}

TEST(Eigenpair, EvaluationUsesParity) {
    const auto& even = sphere_table().pair(1, RadialParity::even);
    const auto& odd = sphere_table().pair(0, RadialParity::odd);
    for (double s : {0.1, 0.4, 0.7}) {
        EXPECT_EQ(even.eval(-s), even.eval(s));
        EXPECT_EQ(odd.eval(-s), -odd.eval(s));
    }
    EXPECT_NEAR(even.eval(even.s0()), even.w.back(), 1e-14);
}
