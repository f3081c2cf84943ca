#pragma once

// Deterministic artifacts: CSV with a header row and 17 significant digits,
// JSON with sorted keys.

#include <cstddef>
#include <string>
#include <vector>

#include "annulus_lab/dtn_oracle.hpp"
#include "annulus_lab/freeboundary.hpp"
#include "annulus_lab/nodal.hpp"
#include "annulus_lab/steklov.hpp"

namespace annulus_lab {

/// "%.17g"
std::string format_double(double v);

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    /// Throws ConfigurationError when the cell count differs from the header.
    void add_row(std::vector<std::string> cells);
    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Columns: index, sigma, m, parity, multiplicity, a_parity. One row per
/// (m, parity); multiplicity is that row's contribution (1 for m = 0, else 2)
/// and index is its first eigenvalue index counted with multiplicity.
std::string spectrum_csv(const SpectrumTable& table);

/// Spectrum columns plus shooting_sigma and rel_diff against `shooting`
/// (eigenvalues repeated by multiplicity).
std::string oracle_csv(const std::vector<OracleEigen>& oracle, const std::vector<double>& shooting);

std::string config_json(const FreeBoundaryConfig& config);
std::string nodal_json(const NodalReport& report, int index, double sigma);

/// {epsilon, a, s0, vertices: [[x, y1, y2, y3], ...], faces: [[i, j, k], ...]}
/// on an n_s x n_theta grid of [-s0, s0] x S^1, theta-periodic triangles.
std::string mesh_json(const CriticalAnnulus& annulus, std::size_t n_s, std::size_t n_theta);

/// Parses and re-emits a JSON document with sorted keys.
std::string canonical_json(const std::string& text);

struct VerifyCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

std::string verify_json(const FreeBoundaryConfig& config, const std::vector<VerifyCheck>& checks);

/// Throws IoError.
void write_text_file(const std::string& path, const std::string& content);

} // namespace annulus_lab
