#pragma once

// Nodal domains of grid-sampled fields, boundary zero analysis, nodal pattern
// codes, Courant-type bound, two-piece property and antipodal parity checks.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "annulus_lab/dtn_oracle.hpp"
#include "annulus_lab/steklov.hpp"

namespace annulus_lab {

/// Values at (s_i, theta_j), stored row-major as grid.index(i, j).
struct ScalarField {
    std::size_t n_s = 0;
    std::size_t n_theta = 0;
    double h_theta = 0.0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * n_theta + j % n_theta]; }
    double sup_norm() const;
};

ScalarField sample_field(const Grid& grid, const std::function<double(double, double)>& u);
ScalarField sample_expansion(const Grid& grid, const ModeExpansion& u);
/// phi_v = <v, Phi(s, theta)> on the grid.
ScalarField sample_coordinate_field(const Grid& grid, const CriticalAnnulus& annulus, const AmbientVector& v);

enum class NodalPattern { InteriorCircle, BoundaryWedges, CrossCuts, Other };
std::string to_string(NodalPattern p);

struct NodalReport {
    int domain_count = 0;
    /// Sign changes along the circles s = -s0 and s = +s0.
    std::array<int, 2> boundary_zero_counts{0, 0};
    /// Zeros on each circle where the field touches zero without changing sign.
    std::array<int, 2> boundary_touch_counts{0, 0};
    bool has_interior_loop = false;
    /// Two domains of opposite sign (false unless domain_count == 2).
    bool signs_opposite = false;
    /// Every domain contains at least one boundary node.
    bool domains_touch_boundary = false;
    /// Sign (+1 / -1) of each domain, in order of first appearance.
    std::vector<int> domain_signs;
    NodalPattern pattern = NodalPattern::Other;
    double zero_tol = 0.0;
};

/// Union-find over 4-neighbour (theta-periodic) adjacency among same-sign
/// nodes; nodes with |u| <= zero_tol belong to no domain. Default zero_tol is
/// 1e-9 ||u||_inf. Throws DegenerateFieldError when every node is within it.
NodalReport nodal_domains(const ScalarField& field, std::optional<double> zero_tol = std::nullopt);

/// Sign changes (0,0) with no touches and an interior loop: InteriorCircle;
/// sign changes (0,0) with one touch per circle: BoundaryWedges; sign changes
/// (2,2): CrossCuts; anything else (including domain_count != 2): Other.
NodalPattern classify_pattern(const NodalReport& report);

struct CourantResult {
    /// Eigenvalue index counted with multiplicity.
    int index = 0;
    /// Lowest index of the eigenvalue's multiplicity class; the bound is class_index + 1.
    int class_index = 0;
    int domain_count = 0;
    bool passed = false;
};

/// Eigenfunction basis ordered by eigenvalue index: one cos field for m = 0,
/// cos then sin for m >= 1.
std::vector<ModeExpansion> eigenfunction_basis(const SpectrumTable& table, std::size_t count);

/// N_i <= i + 1 for i <= max_index. Requires alpha < lambda_1^D (so the
/// correction term vanishes); throws ConfigurationError otherwise.
std::vector<CourantResult> courant_check(const SpectrumTable& table, const Grid& grid, int max_index,
                                         const DirichletMin& dirichlet, double alpha);

/// The two half-spaces of v cut the annulus into exactly two connected pieces.
/// v must be nonzero with v.x = 0.
bool two_piece_check(const CriticalAnnulus& annulus, const AmbientVector& v, const Grid& grid);

struct ParityDefect {
    /// max |u o A + u|
    double odd = 0.0;
    /// max |u o A - u|
    double even = 0.0;
};

/// Exact on nodes: u o A at (i, j) is u at (n_s - 1 - i, j + n_theta / 2).
/// Requires n_s odd and n_theta even; throws ConfigurationError.
ParityDefect a_parity_defect(const ScalarField& field);

} // namespace annulus_lab
