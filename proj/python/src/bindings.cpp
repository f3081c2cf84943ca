#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "annulus_lab/dtn_oracle.hpp"
#include "annulus_lab/freeboundary.hpp"
#include "annulus_lab/nodal.hpp"
#include "annulus_lab/parallel.hpp"
#include "annulus_lab/serialization.hpp"
#include "annulus_lab/steklov.hpp"
#include "annulus_lab/verify.hpp"

namespace py = pybind11;
using namespace annulus_lab;

namespace {

SpaceFormSign sign_from_int(int eps) { return parse_sign(eps); }

CriticalAnnulus solve_either(int eps, std::optional<double> a, std::optional<double> radius) {
    if (a.has_value() == radius.has_value()) {
        throw ConfigurationError("give exactly one of a and radius");
    }
    if (a) return solve_annulus({sign_from_int(eps), *a});
    return solve_for_radius(sign_from_int(eps), *radius);
}

py::dict config_dict(const FreeBoundaryConfig& c) {
    py::dict residuals;
    residuals["orthogonality"] = c.residuals.orthogonality;
    residuals["tilt"] = c.residuals.tilt;
    residuals["containment_margin"] = c.residuals.containment_margin;
    residuals["bc_phi0"] = c.residuals.bc_phi0;
    residuals["bc_phi_i"] = c.residuals.bc_phi_i;
    py::dict d;
    d["epsilon"] = sign_value(c.params.eps);
    d["a"] = c.params.a;
    d["s0"] = c.s0;
    d["r"] = c.r;
    d["residuals"] = residuals;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Critical rotational free boundary annuli and their Steklov spectra.";

    auto base = py::register_exception<Error>(m, "AnnulusLabError", PyExc_RuntimeError);
    py::register_exception<NoFreeBoundaryError>(m, "NoFreeBoundaryError", base.ptr());
    py::register_exception<ParameterRangeError>(m, "ParameterRangeError", base.ptr());
    py::register_exception<UnachievableRadiusError>(m, "UnachievableRadiusError", base.ptr());
    py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());

    py::class_<CriticalAnnulus>(m, "CriticalAnnulus")
        .def_property_readonly("epsilon", [](const CriticalAnnulus& c) { return sign_value(c.eps()); })
        .def_property_readonly("a", [](const CriticalAnnulus& c) { return c.family().a(); })
        .def_property_readonly("s0", &CriticalAnnulus::s0)
        .def_property_readonly("radius", &CriticalAnnulus::radius)
        .def_property_readonly("alpha", &CriticalAnnulus::alpha)
        .def("config", [](const CriticalAnnulus& c) { return config_dict(c.config()); })
        .def("immerse",
             [](const CriticalAnnulus& c, double s, double theta) {
                 const auto p = c.family().immerse(s, theta).coords();
                 return std::vector<double>{p.x, p.y[0], p.y[1], p.y[2]};
             },
             py::arg("s"), py::arg("theta"))
        .def("__repr__", [](const CriticalAnnulus& c) {
            return "CriticalAnnulus(epsilon=" + std::to_string(sign_value(c.eps())) +
                   ", a=" + format_double(c.family().a()) + ", s0=" + format_double(c.s0()) +
                   ", r=" + format_double(c.radius()) + ")";
        });

    m.def("solve", &solve_either, py::arg("epsilon"), py::arg("a") = py::none(), py::arg("radius") = py::none(),
          "Solve the free boundary configuration from the family parameter or a target radius.");

    m.def(
        "spectrum",
        [](const CriticalAnnulus& c, int m_max) {
            const auto table = spectrum(c, m_max);
            py::list rows;
            for (const auto& e : table.entries) {
                py::list labels;
                for (const auto& l : e.labels) labels.append(py::make_tuple(l.m, to_string(l.parity)));
                py::dict d;
                d["sigma"] = e.sigma;
                d["multiplicity"] = e.multiplicity;
                d["first_index"] = e.first_index;
                d["modes"] = labels;
                rows.append(d);
            }
            return rows;
        },
        py::arg("annulus"), py::arg("m_max") = 6, "Eigenvalue classes by separation of variables.");

    m.def(
        "spectrum_csv", [](const CriticalAnnulus& c, int m_max) { return spectrum_csv(spectrum(c, m_max)); },
        py::arg("annulus"), py::arg("m_max") = 6);

    m.def(
        "oracle_sigmas",
        [](const CriticalAnnulus& c, std::size_t n_s, std::size_t n_theta, std::size_t count) {
            std::vector<double> out;
            for (const auto& e : dtn_spectrum(dtn_matrix(Grid(c, n_s, n_theta)), count)) out.push_back(e.sigma);
            return out;
        },
        py::arg("annulus"), py::arg("n_s") = 128, py::arg("n_theta") = 128, py::arg("count") = 8,
        "Lowest eigenvalues of the finite-difference Dirichlet-to-Neumann matrix.");

    m.def(
        "verify",
        [](const CriticalAnnulus& c, double perturb_s0) {
            py::list rows;
            for (const auto& check : run_verification(c, {}, perturb_s0)) {
                py::dict d;
                d["name"] = check.name;
                d["value"] = check.value;
                d["tolerance"] = check.tolerance;
                d["passed"] = check.passed;
                rows.append(d);
            }
            return rows;
        },
        py::arg("annulus"), py::arg("perturb_s0") = 0.0);

    m.def(
        "nodal",
        [](const CriticalAnnulus& c, int index, std::size_t n_s, std::size_t n_theta) {
            if (index < 0) throw ConfigurationError("index must be non-negative");
            const auto table = spectrum(c, std::max(6, index + 2));
            const auto basis = eigenfunction_basis(table, static_cast<std::size_t>(index) + 1);
            const auto r = nodal_domains(sample_expansion(Grid(c, n_s, n_theta), basis.back()));
            py::dict d;
            d["domain_count"] = r.domain_count;
            d["boundary_zero_counts"] = py::make_tuple(r.boundary_zero_counts[0], r.boundary_zero_counts[1]);
            d["boundary_touch_counts"] = py::make_tuple(r.boundary_touch_counts[0], r.boundary_touch_counts[1]);
            d["signs_opposite"] = r.signs_opposite;
            d["domains_touch_boundary"] = r.domains_touch_boundary;
            d["pattern"] = to_string(r.pattern);
            return d;
        },
        py::arg("annulus"), py::arg("index"), py::arg("n_s") = 129, py::arg("n_theta") = 128);

    m.def("mesh_json", &mesh_json, py::arg("annulus"), py::arg("n_s") = 65, py::arg("n_theta") = 64);
    m.def("thread_limit", &thread_limit);
}
