#pragma once

// Steklov problem with frequency alpha = 2 eps on a solved annulus, by
// separation of variables u = w(s) cos(m theta) or w(s) sin(m theta).
// The radial equation is
//   w'' = -(q'/q) w' + E (m^2 / G - alpha) w,   q = sqrt(G / E),
// integrated on [0, s0] from an even or odd initial condition; the metric is
// even in s, so the profile extends to [-s0, s0] by parity.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "annulus_lab/freeboundary.hpp"
#include "annulus_lab/numerics.hpp"

namespace annulus_lab {

enum class RadialParity { even, odd };
enum class AParity { a_odd, a_even };

std::string to_string(RadialParity p);
std::string to_string(AParity p);

/// A-odd iff (m odd and radially even) or (m even and radially odd).
AParity classify_a_parity(int m, RadialParity parity);

struct ModeProblem {
    int m = 0;
    RadialParity parity = RadialParity::even;
    /// Zeroth-order coefficient; 2 eps for the Steklov problem, lambda for Dirichlet scans.
    double alpha = 2.0;
    /// Replaces m^2 in the radial equation (used for semi-discrete references).
    std::optional<double> angular_symbol;

    double symbol() const { return angular_symbol ? *angular_symbol : static_cast<double>(m) * m; }
};

/// Radial coefficients E, G and q'/q tabulated on [0, s0], read-only after construction.
class SeparatedOperator {
  public:
    static constexpr std::size_t kTableIntervals = 16384;

    explicit SeparatedOperator(const CriticalAnnulus& annulus);

    double s0() const { return s0_; }
    double alpha() const { return alpha_; }
    SpaceFormSign eps() const { return eps_; }

    double E(double s) const { return lookup(e_, s); }
    double G(double s) const { return lookup(g_, s); }
    /// q'/q = (G'/G - E'/E) / 2.
    double drift(double s) const { return lookup(drift_, s); }

  private:
    double lookup(const std::vector<double>& table, double s) const;

    double s0_;
    double alpha_;
    SpaceFormSign eps_;
    double h_;
    std::vector<double> e_;
    std::vector<double> g_;
    std::vector<double> drift_;
};

struct ModeSolution {
    std::vector<double> s;
    std::vector<double> w;
    std::vector<double> dw;
};

/// RK4 with n_steps uniform steps on [0, s0]; even: w(0)=1, w'(0)=0, odd: w(0)=0, w'(0)=1.
ModeSolution mode_ode_integrate(const SeparatedOperator& op, const ModeProblem& problem,
                                std::size_t n_steps = 4096);

struct Eigenpair {
    double sigma = 0.0;
    int m = 0;
    RadialParity parity = RadialParity::even;
    AParity a_parity = AParity::a_even;
    /// Radial profile on [0, s0] (4097 uniform samples).
    std::vector<double> s;
    std::vector<double> w;
    std::vector<double> dw;
    double sqrt_E_boundary = 1.0;
    /// |sigma(h) - sigma(h/2)| / |sigma(h/2)|
    double step_halving_rel_diff = 0.0;

    double s0() const { return s.back(); }
    /// w at any s in [-s0, s0]: cubic Hermite on the samples, extended by parity.
    double eval(double s_value) const;
    double eval_derivative(double s_value) const;
};

/// sigma = w'(s0) / (sqrt(E(s0)) w(s0)). Throws DirichletResonanceError when
/// |w(s0)| < 1e-10 ||w||_inf and NumericError when step halving moves sigma
/// by more than 1e-5 relative.
Eigenpair mode_eigenvalue(const SeparatedOperator& op, const ModeProblem& problem);

struct ModeLabel {
    int m = 0;
    RadialParity parity = RadialParity::even;
};

struct SpectrumEntry {
    double sigma = 0.0;
    int multiplicity = 0;
    /// Index of the first eigenvalue of this class, counted with multiplicity from 0.
    int first_index = 0;
    std::vector<ModeLabel> labels;
};

struct SpectrumTable {
    std::vector<SpectrumEntry> entries;
    /// All eigenpairs, sorted by sigma.
    std::vector<Eigenpair> pairs;
    int m_max = 0;
    double cluster_rel_tol = 1e-7;
    /// sigma(m, parity) strictly increasing in m for both parities.
    bool monotone_in_m = false;

    const Eigenpair& pair(int m, RadialParity parity) const;
    /// Eigenvalues repeated by multiplicity, ascending.
    std::vector<double> sigmas_with_multiplicity() const;
};

/// Merges mode_eigenvalue over m = 0..m_max, both parities. Throws NumericError
/// unless sigma_0 is simple with a positive profile.
SpectrumTable spectrum(const CriticalAnnulus& annulus, int m_max, const numerics::ToleranceConfig& tol = {});
SpectrumTable spectrum(const SeparatedOperator& op, int m_max, const numerics::ToleranceConfig& tol = {});

struct DirichletMin {
    double lambda = 0.0;
    int m = 0;
    RadialParity parity = RadialParity::even;
};

/// Smallest Dirichlet eigenvalue of -Delta over modes m <= m_max, both parities.
DirichletMin dirichlet_min(const SeparatedOperator& op, int m_max);

/// One term c * w(s) * (cos or sin)(m theta) of a finite eigenfunction expansion.
struct ExpansionTerm {
    Eigenpair pair;
    bool sine = false;
    double coeff = 1.0;
};

struct ModeExpansion {
    std::vector<ExpansionTerm> terms;

    void add(const Eigenpair& pair, bool sine, double coeff);
    double evaluate(double s, double theta) const;
};

/// B(u, u) / ||u||^2 on the boundary, with
///   B(u, u) = int (u_s^2 / E + u_theta^2 / G - alpha u^2) sqrt(E G) ds dtheta.
/// Trapezoid rule on the eigenpairs' own s-samples (mirrored to [-s0, s0]) and
/// n_theta equispaced angles. Throws UndefinedQuotientError for a zero trace.
double rayleigh_quotient(const SeparatedOperator& op, const ModeExpansion& u, std::size_t n_theta = 256);

/// int over both boundary circles of u v sqrt(G) dtheta.
double boundary_inner(const SeparatedOperator& op, const ModeExpansion& u, const ModeExpansion& v,
                      std::size_t n_theta = 256);

struct ProfileMatch {
    /// (m=0, even) against f cos_eps psi
    double phi0 = 0.0;
    /// (m=0, odd) against f sin_eps psi
    double phi1 = 0.0;
    /// (m=1, even) against g
    double phi2 = 0.0;

    double max() const;
};

/// Max pointwise deviation, relative to the analytic sup norm, after scaling
/// each computed profile to agree with its coordinate profile at s0.
ProfileMatch coordinate_profile_match(const CriticalAnnulus& annulus, const SpectrumTable& table);

} // namespace annulus_lab
