#pragma once

// Bundled certificate for a solved annulus: geometry, boundary conditions,
// supercriticality and star-shapedness, each against its pinned tolerance.

#include <vector>

#include "annulus_lab/freeboundary.hpp"
#include "annulus_lab/numerics.hpp"
#include "annulus_lab/serialization.hpp"

namespace annulus_lab {

/// Evaluates every check with the boundary moved to s0 + perturb_s0 (r is kept),
/// so a nonzero perturbation must break the boundary certificates.
std::vector<VerifyCheck> run_verification(const CriticalAnnulus& annulus, const numerics::ToleranceConfig& tol = {},
                                          double perturb_s0 = 0.0);

} // namespace annulus_lab
