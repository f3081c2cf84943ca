// annulus_lab: batch front-end for solves, spectra, verification, oracle
// comparison, nodal analysis and mesh export.
//
// Exit codes: 0 ok, 2 no free boundary, 3 numeric failure, 4 parameter or
// configuration out of range, 5 verification failed, 6 IO error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "annulus_lab/dtn_oracle.hpp"
#include "annulus_lab/freeboundary.hpp"
#include "annulus_lab/nodal.hpp"
#include "annulus_lab/serialization.hpp"
#include "annulus_lab/steklov.hpp"
#include "annulus_lab/verify.hpp"

using namespace annulus_lab;

namespace {

enum ExitCode { kOk = 0, kNoFreeBoundary = 2, kNumeric = 3, kParameter = 4, kVerifyFailed = 5, kIo = 6 };

struct RunConfig {
    std::string epsilon;
    std::optional<double> a;
    std::optional<double> radius;
    int m_max = 6;
    std::size_t ns = 128;
    std::size_t ntheta = 128;
    std::size_t count = 8;
    std::size_t mesh_ns = 65;
    std::size_t mesh_ntheta = 64;
    int index = 1;
    std::string grid = "129x128";
    double perturb_s0 = 0.0;
    std::string out;
    numerics::ToleranceConfig tol;
};

void add_family_options(CLI::App* cmd, RunConfig& rc) {
    cmd->add_option("--epsilon", rc.epsilon, "space form sign: +1 (sphere) or -1 (hyperbolic)")->required();
    auto* a = cmd->add_option("--a", rc.a, "family parameter");
    auto* r = cmd->add_option("--radius", rc.radius, "target geodesic radius");
    a->excludes(r);
    cmd->add_option("--quad-tol", rc.tol.quad_abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--ode-tol", rc.tol.ode_rel_tol, "relative step-halving bound for eigenvalues");
    cmd->add_option("--root-tol", rc.tol.root_tol, "root-finding tolerance");
    cmd->add_option("--eig-tol", rc.tol.eig_tol, "Jacobi off-diagonal tolerance");
    cmd->add_option("--cluster-tol", rc.tol.cluster_rel_tol, "relative multiplicity grouping tolerance");
}

void add_out_option(CLI::App* cmd, RunConfig& rc, const std::string& what) {
    cmd->add_option("--out", rc.out, what + " output path (stdout when omitted)");
}

SpaceFormSign parse_epsilon(const std::string& text) {
    if (text == "+1" || text == "1") return SpaceFormSign::spherical;
    if (text == "-1") return SpaceFormSign::hyperbolic;
    throw ParameterRangeError("epsilon must be +1 or -1, got '" + text + "'");
}

CriticalAnnulus solve_run(const RunConfig& rc) {
    rc.tol.validate();
    const SpaceFormSign eps = parse_epsilon(rc.epsilon);
    if (rc.a.has_value() == rc.radius.has_value()) {
        throw ConfigurationError("give exactly one of --a and --radius");
    }
    if (rc.a) return solve_annulus({eps, *rc.a}, rc.tol);
    return solve_for_radius(eps, *rc.radius, rc.tol);
}

void emit(const RunConfig& rc, const std::string& content) {
    if (rc.out.empty()) {
        std::cout << content;
        std::cout.flush();
    } else {
        write_text_file(rc.out, content);
    }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        const auto n = std::stoul(text.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(text);
        const auto rest = text.substr(x + 1);
        const auto m = std::stoul(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        return {n, m};
    } catch (const std::logic_error&) {
        throw ConfigurationError("--grid must look like NxM, got '" + text + "'");
    }
}

int cmd_solve(const RunConfig& rc) {
    emit(rc, config_json(solve_run(rc).config()));
    return kOk;
}

int cmd_verify(const RunConfig& rc) {
    const auto annulus = solve_run(rc);
    const auto checks = run_verification(annulus, rc.tol, rc.perturb_s0);
    FreeBoundaryConfig reported = annulus.config();
    reported.s0 += rc.perturb_s0;
    emit(rc, verify_json(reported, checks));
    for (const auto& c : checks) {
        if (!c.passed) return kVerifyFailed;
    }
    return kOk;
}

int cmd_spectrum(const RunConfig& rc) {
    const auto annulus = solve_run(rc);
    emit(rc, spectrum_csv(spectrum(annulus, rc.m_max, rc.tol)));
    return kOk;
}

int cmd_oracle(const RunConfig& rc) {
    const auto annulus = solve_run(rc);
    const Grid grid(annulus, rc.ns, rc.ntheta);
    const auto dtn = dtn_matrix(grid);
    const auto oracle = dtn_spectrum(dtn, rc.count, rc.tol.eig_tol);
    const int m_max = std::max<int>(6, static_cast<int>(rc.count));
    const auto shooting = spectrum(annulus, m_max, rc.tol).sigmas_with_multiplicity();
    emit(rc, oracle_csv(oracle, shooting));
    return kOk;
}

int cmd_nodal(const RunConfig& rc) {
    if (rc.index < 0) throw ConfigurationError("--index must be non-negative");
    const auto annulus = solve_run(rc);
    const auto [n_s, n_theta] = parse_grid(rc.grid);
    const Grid grid(annulus, n_s, n_theta);
    const int m_max = std::max(6, rc.index + 2);
    const auto table = spectrum(annulus, m_max, rc.tol);
    const auto basis = eigenfunction_basis(table, static_cast<std::size_t>(rc.index) + 1);
    const auto& field = basis[static_cast<std::size_t>(rc.index)];
    const auto report = nodal_domains(sample_expansion(grid, field));
    emit(rc, nodal_json(report, rc.index, field.terms.front().pair.sigma));
    return kOk;
}

int cmd_export_mesh(const RunConfig& rc) {
    const auto annulus = solve_run(rc);
    emit(rc, mesh_json(annulus, rc.mesh_ns, rc.mesh_ntheta));
    return kOk;
}

int guarded(int (*fn)(const RunConfig&), const RunConfig& rc) {
    try {
        return fn(rc);
    } catch (const NoFreeBoundaryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoFreeBoundary;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const ParameterRangeError& e) {
        std::cerr << "parameter out of range: " << e.what() << '\n';
        return kParameter;
    } catch (const UnachievableRadiusError& e) {
        std::cerr << "parameter out of range: " << e.what() << '\n';
        return kParameter;
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kParameter;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical rotational free boundary annuli and their Steklov spectra"};
    app.require_subcommand(1);
    RunConfig rc;

    auto* solve = app.add_subcommand("solve", "solve the free boundary configuration, JSON output");
    add_family_options(solve, rc);
    add_out_option(solve, rc, "JSON");

    auto* verify = app.add_subcommand("verify", "run the certificate checks, JSON report");
    add_family_options(verify, rc);
    add_out_option(verify, rc, "JSON");
    verify->add_option("--perturb-s0", rc.perturb_s0, "shift the boundary before checking");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Steklov spectrum by separation of variables, CSV");
    add_family_options(spectrum_cmd, rc);
    add_out_option(spectrum_cmd, rc, "CSV");
    spectrum_cmd->add_option("--m-max", rc.m_max, "largest Fourier mode")->check(CLI::Range(2, 1000));

    auto* oracle = app.add_subcommand("oracle", "finite-difference DtN eigenvalues vs shooting, CSV");
    add_family_options(oracle, rc);
    add_out_option(oracle, rc, "CSV");
    oracle->add_option("--ns", rc.ns, "grid points in s");
    oracle->add_option("--ntheta", rc.ntheta, "grid points in theta (even)");
    oracle->add_option("--count", rc.count, "number of eigenvalues");

    auto* nodal = app.add_subcommand("nodal", "nodal report of the index-th eigenfunction, JSON");
    add_family_options(nodal, rc);
    add_out_option(nodal, rc, "JSON");
    nodal->add_option("--index", rc.index, "eigenfunction index counted with multiplicity");
    nodal->add_option("--grid", rc.grid, "NxM sampling grid (n_s x n_theta)");

    auto* mesh = app.add_subcommand("export-mesh", "triangulated annulus, JSON");
    add_family_options(mesh, rc);
    add_out_option(mesh, rc, "JSON");
    mesh->add_option("--ns", rc.mesh_ns, "vertices along s");
    mesh->add_option("--ntheta", rc.mesh_ntheta, "vertices along theta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParameter;
    }

    if (*solve) return guarded(cmd_solve, rc);
    if (*verify) return guarded(cmd_verify, rc);
    if (*spectrum_cmd) return guarded(cmd_spectrum, rc);
    if (*oracle) return guarded(cmd_oracle, rc);
    if (*nodal) return guarded(cmd_nodal, rc);
    if (*mesh) return guarded(cmd_export_mesh, rc);
    return kParameter;
}
