#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "annulus_lab/nodal.hpp"

using namespace annulus_lab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
    CriticalAnnulus annulus;
    SpectrumTable table;
};

const Case& sphere_case() {
    static const Case c = [] {
        auto a = solve_annulus({SpaceFormSign::spherical, -0.5});
        auto t = spectrum(a, 6);
        return Case{std::move(a), std::move(t)};
    }();
    return c;
}
const Case& hyperbolic_case() {
    static const Case c = [] {
        auto a = solve_annulus({SpaceFormSign::hyperbolic, 2.0});
        auto t = spectrum(a, 6);
        return Case{std::move(a), std::move(t)};
    }();
    return c;
}

ScalarField synthetic(std::size_t n_s, std::size_t n_theta, const std::function<double(double, double)>& u) {
    ScalarField f;
    f.n_s = n_s;
    f.n_theta = n_theta;
    f.h_theta = 2 * kPi / static_cast<double>(n_theta);
    f.values.resize(n_s * n_theta);
    for (std::size_t i = 0; i < n_s; ++i) {
        const double s = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_s - 1);
        for (std::size_t j = 0; j < n_theta; ++j) f.values[i * n_theta + j] = u(s, f.h_theta * static_cast<double>(j));
    }
    return f;
}

} // namespace

TEST(NodalDomains, SyntheticExamples) {
    const auto constant = nodal_domains(synthetic(65, 64, [](double, double) { return 1.0; }));
    EXPECT_EQ(constant.domain_count, 1);
    EXPECT_TRUE(constant.domains_touch_boundary);

    const auto band = nodal_domains(synthetic(65, 64, [](double s, double) { return s; }));
    EXPECT_EQ(band.domain_count, 2);
    EXPECT_TRUE(band.has_interior_loop);
    EXPECT_TRUE(band.signs_opposite);
    EXPECT_EQ(band.pattern, NodalPattern::InteriorCircle);

    const auto cross = nodal_domains(synthetic(65, 64, [](double, double t) { return std::cos(t); }));
    EXPECT_EQ(cross.domain_count, 2);
    EXPECT_EQ(cross.boundary_zero_counts[0], 2);
    EXPECT_EQ(cross.boundary_zero_counts[1], 2);
    EXPECT_EQ(cross.pattern, NodalPattern::CrossCuts);

    const auto four = nodal_domains(synthetic(65, 64, [](double, double t) { return std::cos(2 * t) + 0.1; }));
    EXPECT_EQ(four.domain_count, 4);
    EXPECT_EQ(four.pattern, NodalPattern::Other);

    EXPECT_THROW(nodal_domains(synthetic(65, 64, [](double, double) { return 0.0; })), DegenerateFieldError);
}

TEST(NodalDomains, PatternCodes) {
    NodalReport r;
    r.domain_count = 2;
    r.has_interior_loop = true;
    EXPECT_EQ(classify_pattern(r), NodalPattern::InteriorCircle);
    r.has_interior_loop = false;
    r.boundary_touch_counts = {1, 1};
    EXPECT_EQ(classify_pattern(r), NodalPattern::BoundaryWedges);
    r.boundary_touch_counts = {0, 0};
    r.boundary_zero_counts = {2, 2};
    EXPECT_EQ(classify_pattern(r), NodalPattern::CrossCuts);
    r.boundary_zero_counts = {4, 4};
    EXPECT_EQ(classify_pattern(r), NodalPattern::Other);
    r.domain_count = 3;
    r.boundary_zero_counts = {2, 2};
    EXPECT_EQ(classify_pattern(r), NodalPattern::Other);
    EXPECT_EQ(to_string(NodalPattern::CrossCuts), "CrossCuts");
}

TEST(NodalDomains, TotalityAcrossRandomFields) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        const double c[4] = {normal(rng), normal(rng), normal(rng), normal(rng)};
        const auto f = synthetic(65, 64, [&](double s, double t) {
            return c[0] + c[1] * s + c[2] * std::cos(t) + c[3] * std::sin(2 * t) * s;
        });
        const auto r = nodal_domains(f);
        EXPECT_GE(r.domain_count, 1);
        EXPECT_EQ(r.domain_signs.size(), static_cast<std::size_t>(r.domain_count));
        EXPECT_EQ(r.boundary_zero_counts[0] % 2, 0);
        EXPECT_EQ(r.boundary_zero_counts[1] % 2, 0);
    }
}

TEST(Eigenfields, LowestHasOneDomainAndSigmaOneHasTwo) {
    for (const auto* c : {&sphere_case(), &hyperbolic_case()}) {
        const Grid grid(c->annulus, 129, 128);
        const auto basis = eigenfunction_basis(c->table, 4);
        EXPECT_EQ(nodal_domains(sample_expansion(grid, basis[0])).domain_count, 1);
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto r = nodal_domains(sample_expansion(grid, basis[k]));
            EXPECT_EQ(r.domain_count, 2);
            EXPECT_TRUE(r.signs_opposite);
            EXPECT_TRUE(r.domains_touch_boundary);
            EXPECT_NE(r.pattern, NodalPattern::Other);
        }
        EXPECT_EQ(nodal_domains(sample_expansion(grid, basis[1])).pattern, NodalPattern::InteriorCircle);
        EXPECT_EQ(nodal_domains(sample_expansion(grid, basis[2])).pattern, NodalPattern::CrossCuts);
    }
}

TEST(Eigenfields, RandomSigmaOneCombinations) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    for (const auto* c : {&sphere_case(), &hyperbolic_case()}) {
        const Grid grid(c->annulus, 129, 128);
        const auto& radial = c->table.pair(0, RadialParity::odd);
        const auto& m1 = c->table.pair(1, RadialParity::even);
        for (int trial = 0; trial < 10; ++trial) {
            ModeExpansion u;
            u.add(radial, false, normal(rng));
            u.add(m1, false, normal(rng));
            u.add(m1, true, normal(rng));
            const auto r = nodal_domains(sample_expansion(grid, u));
            EXPECT_EQ(r.domain_count, 2);
            EXPECT_TRUE(r.signs_opposite);
            EXPECT_TRUE(r.domains_touch_boundary);
            EXPECT_EQ(r.boundary_zero_counts[0] % 2, 0);
            EXPECT_EQ(r.boundary_zero_counts[1] % 2, 0);
        }
    }
}

TEST(Eigenfields, CountsStableUnderRefinement) {
    const auto& c = sphere_case();
    const auto basis = eigenfunction_basis(c.table, 10);
    std::vector<std::vector<int>> counts;
    for (std::size_t n : {64u, 128u, 256u}) {
        const Grid grid(c.annulus, n + 1, n);
        std::vector<int> row;
        for (const auto& u : basis) row.push_back(nodal_domains(sample_expansion(grid, u)).domain_count);
        counts.push_back(row);
    }
    EXPECT_EQ(counts[0], counts[1]);
    EXPECT_EQ(counts[1], counts[2]);
}

TEST(Eigenfields, BasisOrderAndShortfall) {
    const auto basis = eigenfunction_basis(sphere_case().table, 5);
    ASSERT_EQ(basis.size(), 5u);
    EXPECT_EQ(basis[0].terms.front().pair.m, 0);
    EXPECT_FALSE(basis[2].terms.front().sine);
    EXPECT_TRUE(basis[3].terms.front().sine);
    EXPECT_THROW(eigenfunction_basis(sphere_case().table, 1000), ConfigurationError);
}

TEST(Courant, PassesUpToIndexNine) {
    const auto& c = sphere_case();
    const SeparatedOperator op(c.annulus);
    const Grid grid(c.annulus, 129, 128);
    const auto results = courant_check(c.table, grid, 9, dirichlet_min(op, 6), c.annulus.alpha());
    ASSERT_EQ(results.size(), 10u);
    for (const auto& r : results) EXPECT_TRUE(r.passed) << "index " << r.index;
    EXPECT_EQ(results[0].class_index, 0);
    EXPECT_EQ(results[3].class_index, 1);

    const DirichletMin low{1.0, 0, RadialParity::even};
    EXPECT_THROW(courant_check(c.table, grid, 9, low, c.annulus.alpha()), ConfigurationError);
}

TEST(Symmetry, AParityOfEigenfields) {
    for (const auto* c : {&sphere_case(), &hyperbolic_case()}) {
        const Grid grid(c->annulus, 129, 128);
        const auto basis = eigenfunction_basis(c->table, 4);
        const auto f0 = sample_expansion(grid, basis[0]);
        EXPECT_LT(a_parity_defect(f0).even, 1e-8 * f0.sup_norm());
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto f = sample_expansion(grid, basis[k]);
            EXPECT_LT(a_parity_defect(f).odd, 1e-8 * f.sup_norm());
        }
    }
    EXPECT_THROW(a_parity_defect(synthetic(64, 64, [](double s, double) { return s; })), ConfigurationError);
}

TEST(Symmetry, CoordinatePatternsAndTwoPieces) {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> normal;
    for (const auto* c : {&sphere_case(), &hyperbolic_case()}) {
        const Grid grid(c->annulus, 129, 128);
        EXPECT_EQ(nodal_domains(sample_coordinate_field(grid, c->annulus, basis_vector(1))).pattern,
                  NodalPattern::InteriorCircle);
        EXPECT_EQ(nodal_domains(sample_coordinate_field(grid, c->annulus, basis_vector(2))).pattern,
                  NodalPattern::CrossCuts);
        EXPECT_EQ(nodal_domains(sample_coordinate_field(grid, c->annulus, basis_vector(3))).pattern,
                  NodalPattern::CrossCuts);
        for (int trial = 0; trial < 20; ++trial) {
            const AmbientVector v{0.0, {normal(rng), normal(rng), normal(rng)}};
            EXPECT_TRUE(two_piece_check(c->annulus, v, grid));
        }
        EXPECT_THROW(two_piece_check(c->annulus, basis_vector(0), grid), ConfigurationError);
        EXPECT_THROW(two_piece_check(c->annulus, AmbientVector{}, grid), ConfigurationError);
    }
}

TEST(Symmetry, TiltedPlaneGivesBoundaryWedges) {
    // The plane through the axis that passes through the boundary circle's
    // extreme point touches each circle once.
    const auto& c = sphere_case();
    const Grid grid(c.annulus, 129, 128);
    const auto& fam = c.annulus.family();
    const double s0 = c.annulus.s0();
    const double beta = std::atan2(fam.f(s0) * std::sin(fam.psi(s0)), fam.g(s0));
    const AmbientVector v{0.0, {std::cos(beta), std::sin(beta), 0.0}};
    const auto r = nodal_domains(sample_coordinate_field(grid, c.annulus, v));
    EXPECT_EQ(r.pattern, NodalPattern::BoundaryWedges);
    EXPECT_EQ(r.boundary_touch_counts[0], 1);
    EXPECT_EQ(r.boundary_touch_counts[1], 1);
}
