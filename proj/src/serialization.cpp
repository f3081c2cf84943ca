#include "annulus_lab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace annulus_lab {

namespace {

using nlohmann::json;

constexpr int kJsonIndent = 2;

std::string dump(const json& j) { return j.dump(kJsonIndent) + "\n"; }

json config_object(const FreeBoundaryConfig& c) {
    json residuals = {
        {"bc_phi0", c.residuals.bc_phi0},
        {"bc_phi_i", c.residuals.bc_phi_i},
        {"containment_margin", c.residuals.containment_margin},
        {"orthogonality", c.residuals.orthogonality},
        {"tilt", c.residuals.tilt},
    };
    return {{"epsilon", sign_value(c.params.eps)}, {"a", c.params.a}, {"s0", c.s0}, {"r", c.r},
            {"residuals", residuals}};
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw ConfigurationError("CsvTable: row has " + std::to_string(cells.size()) + " cells, header has " +
                                 std::to_string(header_.size()));
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out.str();
}

std::string spectrum_csv(const SpectrumTable& table) {
    CsvTable csv({"index", "sigma", "m", "parity", "multiplicity", "a_parity"});
    int index = 0;
    for (const auto& p : table.pairs) {
        const int mult = p.m == 0 ? 1 : 2;
        csv.add_row({std::to_string(index), format_double(p.sigma), std::to_string(p.m), to_string(p.parity),
                     std::to_string(mult), to_string(p.a_parity)});
        index += mult;
    }
    return csv.str();
}

std::string oracle_csv(const std::vector<OracleEigen>& oracle, const std::vector<double>& shooting) {
    CsvTable csv({"index", "sigma", "m", "parity", "multiplicity", "a_parity", "shooting_sigma", "rel_diff"});
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        const auto& e = oracle[k];
        std::string ref = "nan";
        std::string rel = "nan";
        if (k < shooting.size()) {
            ref = format_double(shooting[k]);
            rel = format_double(std::abs(e.sigma - shooting[k]) / std::abs(shooting[k]));
        }
        csv.add_row({std::to_string(k), format_double(e.sigma), std::to_string(e.m), to_string(e.parity), "1",
                     to_string(classify_a_parity(e.m, e.parity)), ref, rel});
    }
    return csv.str();
}

std::string config_json(const FreeBoundaryConfig& config) { return dump(config_object(config)); }

std::string nodal_json(const NodalReport& r, int index, double sigma) {
    json j = {
        {"index", index},
        {"sigma", sigma},
        {"domain_count", r.domain_count},
        {"boundary_zero_counts", {r.boundary_zero_counts[0], r.boundary_zero_counts[1]}},
        {"boundary_touch_counts", {r.boundary_touch_counts[0], r.boundary_touch_counts[1]}},
        {"has_interior_loop", r.has_interior_loop},
        {"signs_opposite", r.signs_opposite},
        {"domains_touch_boundary", r.domains_touch_boundary},
        {"domain_signs", r.domain_signs},
        {"pattern", to_string(r.pattern)},
        {"zero_tol", r.zero_tol},
    };
    return dump(j);
}

std::string mesh_json(const CriticalAnnulus& annulus, std::size_t n_s, std::size_t n_theta) {
    if (n_s < 2 || n_theta < 3) {
        throw ConfigurationError("mesh_json: need n_s >= 2 and n_theta >= 3");
    }
    const auto& family = annulus.family();
    const double s0 = annulus.s0();
    json vertices = json::array();
    for (std::size_t i = 0; i < n_s; ++i) {
        const double s = s0 * (2.0 * static_cast<double>(i) - static_cast<double>(n_s - 1)) /
                         static_cast<double>(n_s - 1);
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_theta);
            const auto p = family.immerse(s, theta).coords();
            vertices.push_back({p.x, p.y[0], p.y[1], p.y[2]});
        }
    }
    json faces = json::array();
    for (std::size_t i = 0; i + 1 < n_s; ++i) {
        for (std::size_t j = 0; j < n_theta; ++j) {
            const std::size_t a = i * n_theta + j;
            const std::size_t b = i * n_theta + (j + 1) % n_theta;
            const std::size_t c = (i + 1) * n_theta + j;
            const std::size_t d = (i + 1) * n_theta + (j + 1) % n_theta;
            faces.push_back({a, b, d});
            faces.push_back({a, d, c});
        }
    }
    json j = {{"epsilon", sign_value(annulus.eps())}, {"a", family.a()}, {"s0", s0},
              {"vertices", std::move(vertices)}, {"faces", std::move(faces)}};
    return dump(j);
}

std::string canonical_json(const std::string& text) {
    try {
        return dump(json::parse(text));
    } catch (const json::parse_error& e) {
        throw IoError(std::string("canonical_json: ") + e.what());
    }
}

std::string verify_json(const FreeBoundaryConfig& config, const std::vector<VerifyCheck>& checks) {
    json list = json::array();
    bool all = true;
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
        all = all && c.passed;
    }
    json j = {{"config", config_object(config)}, {"checks", list}, {"all_passed", all}};
    return dump(j);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write to " + path + " failed");
    }
}

} // namespace annulus_lab
