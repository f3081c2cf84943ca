#include "annulus_lab/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "annulus_lab/numerics.hpp"

namespace annulus_lab {

namespace {

int sign_of(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

struct CircleZeros {
    int sign_changes = 0;
    int touches = 0;
};

CircleZeros analyze_circle(const ScalarField& f, std::size_t row, double zero_tol, double touch_tol) {
    const std::size_t n = f.n_theta;
    CircleZeros out;

    std::vector<int> signs;
    for (std::size_t j = 0; j < n; ++j) {
        const int sg = sign_of(f.at(row, j), zero_tol);
        if (sg != 0) signs.push_back(sg);
    }
    for (std::size_t k = 0; k < signs.size(); ++k) {
        if (signs[k] != signs[(k + 1) % signs.size()]) ++out.sign_changes;
    }

    // Maximal cyclic runs of small values flanked by the same sign are touches.
    std::size_t start = n;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(f.at(row, j)) > touch_tol) {
            start = j;
            break;
        }
    }
    if (start == n) return out; // whole circle small: no isolated zeros
    std::size_t k = 0;
    while (k < n) {
        const std::size_t j = (start + k) % n;
        if (std::abs(f.at(row, j)) > touch_tol) {
            ++k;
            continue;
        }
        const std::size_t before = (j + n - 1) % n;
        std::size_t len = 0;
        while (len < n && std::abs(f.at(row, (j + len) % n)) <= touch_tol) ++len;
        const std::size_t after = (j + len) % n;
        const bool has_zero_level = [&] {
            for (std::size_t t = 0; t < len; ++t) {
                const std::size_t jj = (j + t) % n;
                const double v = std::abs(f.at(row, jj));
                if (v <= zero_tol) return true;
                // discrete local minimum of |u| inside the run
                if (v <= std::abs(f.at(row, (jj + n - 1) % n)) && v <= std::abs(f.at(row, (jj + 1) % n))) return true;
            }
            return false;
        }();
        if (has_zero_level && sign_of(f.at(row, before), 0.0) == sign_of(f.at(row, after), 0.0)) ++out.touches;
        k += len;
    }
    return out;
}

} // namespace

double ScalarField::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

ScalarField sample_field(const Grid& grid, const std::function<double(double, double)>& u) {
    ScalarField f{grid.n_s(), grid.n_theta(), grid.h_theta(), std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.n_s(); ++i) {
        const double s = grid.s(i);
        for (std::size_t j = 0; j < grid.n_theta(); ++j) {
            const double v = u(s, grid.theta(j));
            if (!std::isfinite(v)) {
                throw NumericError("sample_field: non-finite value");
            }
            f.values[grid.index(i, j)] = v;
        }
    }
    return f;
}

ScalarField sample_expansion(const Grid& grid, const ModeExpansion& u) {
    return sample_field(grid, [&](double s, double theta) { return u.evaluate(s, theta); });
}

ScalarField sample_coordinate_field(const Grid& grid, const CriticalAnnulus& annulus, const AmbientVector& v) {
    const auto& family = annulus.family();
    return sample_field(grid, [&](double s, double theta) {
        return coordinate_function(family.eps(), v, family.immerse(s, theta));
    });
}

std::string to_string(NodalPattern p) {
    switch (p) {
    case NodalPattern::InteriorCircle: return "InteriorCircle";
    case NodalPattern::BoundaryWedges: return "BoundaryWedges";
    case NodalPattern::CrossCuts: return "CrossCuts";
    case NodalPattern::Other: return "Other";
    }
    return "Other";
}

NodalReport nodal_domains(const ScalarField& field, std::optional<double> zero_tol) {
    const std::size_t ns = field.n_s;
    const std::size_t nt = field.n_theta;
    if (ns < 2 || nt < 3 || field.values.size() != ns * nt) {
        throw ConfigurationError("nodal_domains: malformed field");
    }
    const double sup = field.sup_norm();
    const double tol = zero_tol ? *zero_tol : 1e-9 * sup;
    if (tol < 0.0) {
        throw ConfigurationError("nodal_domains: zero_tol must be non-negative");
    }
    if (!(sup > tol)) {
        throw DegenerateFieldError("nodal_domains: every node lies within the zero tolerance");
    }

    std::vector<int> sign(ns * nt);
    for (std::size_t k = 0; k < sign.size(); ++k) sign[k] = sign_of(field.values[k], tol);

    numerics::DisjointSet dsu(ns * nt);
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            const std::size_t k = i * nt + j;
            if (sign[k] == 0) continue;
            const std::size_t right = i * nt + (j + 1) % nt;
            if (sign[right] == sign[k]) dsu.unite(k, right);
            if (i + 1 < ns) {
                const std::size_t up = (i + 1) * nt + j;
                if (sign[up] == sign[k]) dsu.unite(k, up);
            }
        }
    }

    NodalReport report;
    report.zero_tol = tol;
    std::map<std::size_t, std::size_t> root_slot;
    std::vector<bool> touches_boundary;
    for (std::size_t k = 0; k < sign.size(); ++k) {
        if (sign[k] == 0) continue;
        const std::size_t root = dsu.find(k);
        auto [it, inserted] = root_slot.emplace(root, report.domain_signs.size());
        if (inserted) {
            report.domain_signs.push_back(sign[k]);
            touches_boundary.push_back(false);
        }
        const std::size_t i = k / nt;
        if (i == 0 || i == ns - 1) touches_boundary[it->second] = true;
    }
    report.domain_count = static_cast<int>(report.domain_signs.size());
    report.domains_touch_boundary =
        std::all_of(touches_boundary.begin(), touches_boundary.end(), [](bool b) { return b; });
    report.signs_opposite = report.domain_count == 2 && report.domain_signs[0] != report.domain_signs[1];

    const double touch_tol = std::max(tol, field.h_theta * field.h_theta * sup);
    for (std::size_t side = 0; side < 2; ++side) {
        const auto z = analyze_circle(field, side == 0 ? 0 : ns - 1, tol, touch_tol);
        report.boundary_zero_counts[side] = z.sign_changes;
        report.boundary_touch_counts[side] = z.touches;
    }
    report.has_interior_loop = report.domain_count == 2 && report.boundary_zero_counts == std::array<int, 2>{0, 0} &&
                               report.boundary_touch_counts == std::array<int, 2>{0, 0};
    report.pattern = classify_pattern(report);
    return report;
}

NodalPattern classify_pattern(const NodalReport& report) {
    if (report.domain_count != 2) return NodalPattern::Other;
    const auto& b = report.boundary_zero_counts;
    const auto& t = report.boundary_touch_counts;
    if (b[0] == 0 && b[1] == 0) {
        if (t[0] == 0 && t[1] == 0 && report.has_interior_loop) return NodalPattern::InteriorCircle;
        if (t[0] == 1 && t[1] == 1) return NodalPattern::BoundaryWedges;
        return NodalPattern::Other;
    }
    if (b[0] == 2 && b[1] == 2) return NodalPattern::CrossCuts;
    return NodalPattern::Other;
}

std::vector<ModeExpansion> eigenfunction_basis(const SpectrumTable& table, std::size_t count) {
    std::vector<ModeExpansion> out;
    for (const auto& p : table.pairs) {
        if (out.size() >= count) break;
        ModeExpansion cos_field;
        cos_field.add(p, false, 1.0);
        out.push_back(std::move(cos_field));
        if (p.m > 0 && out.size() < count) {
            ModeExpansion sin_field;
            sin_field.add(p, true, 1.0);
            out.push_back(std::move(sin_field));
        }
    }
    if (out.size() < count) {
        throw ConfigurationError("eigenfunction_basis: spectrum has fewer than " + std::to_string(count) +
                                 " eigenfunctions; raise m_max");
    }
    return out;
}

std::vector<CourantResult> courant_check(const SpectrumTable& table, const Grid& grid, int max_index,
                                         const DirichletMin& dirichlet, double alpha) {
    if (!(alpha < dirichlet.lambda)) {
        throw ConfigurationError("courant_check: frequency is not below the first Dirichlet eigenvalue");
    }
    if (max_index < 0) return {};
    const auto basis = eigenfunction_basis(table, static_cast<std::size_t>(max_index) + 1);
    std::vector<CourantResult> out;
    for (int i = 0; i <= max_index; ++i) {
        CourantResult r;
        r.index = i;
        for (const auto& e : table.entries) {
            if (i >= e.first_index && i < e.first_index + e.multiplicity) r.class_index = e.first_index;
        }
        r.domain_count = nodal_domains(sample_expansion(grid, basis[static_cast<std::size_t>(i)])).domain_count;
        r.passed = r.domain_count <= r.class_index + 1;
        out.push_back(r);
    }
    return out;
}

bool two_piece_check(const CriticalAnnulus& annulus, const AmbientVector& v, const Grid& grid) {
    if (v.x != 0.0 || v.y_norm() == 0.0) {
        throw ConfigurationError("two_piece_check: v must be a nonzero vector in span{d1, d2, d3}");
    }
    return nodal_domains(sample_coordinate_field(grid, annulus, v)).domain_count == 2;
}

ParityDefect a_parity_defect(const ScalarField& field) {
    if (field.n_s % 2 == 0 || field.n_theta % 2 != 0) {
        throw ConfigurationError("a_parity_defect: need n_s odd and n_theta even");
    }
    ParityDefect d;
    const std::size_t half = field.n_theta / 2;
    for (std::size_t i = 0; i < field.n_s; ++i) {
        for (std::size_t j = 0; j < field.n_theta; ++j) {
            const double u = field.at(i, j);
            const double ua = field.at(field.n_s - 1 - i, j + half);
            d.odd = std::max(d.odd, std::abs(ua + u));
            d.even = std::max(d.even, std::abs(ua - u));
        }
    }
    return d;
}

} // namespace annulus_lab
