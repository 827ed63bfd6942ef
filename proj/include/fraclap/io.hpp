#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fraclap/solution.hpp"
#include "fraclap/sublinear.hpp"

namespace fraclap {

// Text artifacts. Every file starts with "# schema_version: N" and
// "# config: <json>" comment lines; numbers are written with 17 digits.

void write_artifact_header(std::ostream& os, const nlohmann::json& config);

/// Snapshot: one JSON header line, then the CSV "index,k0,k1,rho,coeff".
void write_snapshot(std::ostream& os, const Solution& s, const Problem& p, const nlohmann::json& config);

struct Snapshot {
  nlohmann::json header;
  std::vector<std::array<int, 2>> wavenumbers;
  Eigen::VectorXd coeffs;
};

/// Parses a snapshot; throws std::runtime_error on malformed input.
Snapshot read_snapshot(std::istream& is);

/// Coefficients of a snapshot placed into `basis` by wavenumber.
SpectralFunction snapshot_function(const Snapshot& snap, const BasisPtr& basis);

/// Branch table: one row per point, then a "bracket" row when bracketed.
void write_branch_csv(std::ostream& os, const Branch& br, const nlohmann::json& config);

/// Generic table writer for the CLI reports.
void write_table(std::ostream& os, const nlohmann::json& config, const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows);

/// Shortest round-trip-safe representation with 17 significant digits.
std::string fmt(double v);

}  // namespace fraclap
