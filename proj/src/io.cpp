#include "fraclap/io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fraclap/config.hpp"

namespace fraclap {

using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_artifact_header(std::ostream& os, const json& config) {
  os << "# schema_version: " << kSchemaVersion << "\n";
  os << "# config: " << config.dump() << "\n";
}

void write_snapshot(std::ostream& os, const Solution& s, const Problem& p, const json& config) {
  const auto& b = *p.basis();
  json h{{"schema_version", kSchemaVersion},
         {"kind", to_string(s.kind)},
         {"lambda", s.lambda},
         {"alpha", p.alpha()},
         {"q", p.q()},
         {"dim", p.dim()},
         {"length", b.domain().length},
         {"modes", b.modes_per_axis()},
         {"residual", s.residual},
         {"energy", s.energy},
         {"linf", s.linf},
         {"min_nodal", s.min_nodal},
         {"eigen_identity_gap", s.eigen_identity_gap},
         {"config", config}};
  os << h.dump() << "\n";
  os << "index,k0,k1,rho,coeff\n";
  for (int j = 0; j < b.size(); ++j) {
    const Mode& m = b.mode(j);
    os << j << "," << m.k[0] << "," << m.k[1] << "," << fmt(m.rho) << "," << fmt(s.u.coeffs[j]) << "\n";
  }
}

Snapshot read_snapshot(std::istream& is) {
  Snapshot snap;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("snapshot: missing header line");
  try {
    snap.header = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("snapshot: bad header: ") + e.what());
  }
  if (snap.header.value("schema_version", 0) != kSchemaVersion) throw std::runtime_error("snapshot: unsupported schema");
  if (!std::getline(is, line) || line != "index,k0,k1,rho,coeff") throw std::runtime_error("snapshot: bad column header");
  std::vector<double> c;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell[5];
    for (auto& x : cell)
      if (!std::getline(row, x, ',')) throw std::runtime_error("snapshot: short row '" + line + "'");
    snap.wavenumbers.push_back({std::stoi(cell[1]), std::stoi(cell[2])});
    c.push_back(std::stod(cell[4]));
  }
  snap.coeffs = Eigen::Map<Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
  return snap;
}

SpectralFunction snapshot_function(const Snapshot& snap, const BasisPtr& basis) {
  std::map<std::array<int, 2>, int> where;
  for (int j = 0; j < basis->size(); ++j) where[basis->mode(j).k] = j;
  SpectralFunction u = SpectralFunction::zero(basis);
  for (std::size_t i = 0; i < snap.wavenumbers.size(); ++i) {
    const auto it = where.find(snap.wavenumbers[i]);
    if (it != where.end()) u.coeffs[it->second] = snap.coeffs[static_cast<Eigen::Index>(i)];
  }
  return u;
}

void write_table(std::ostream& os, const json& config, const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows) {
  write_artifact_header(os, config);
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
}

void write_branch_csv(std::ostream& os, const Branch& br, const json& config) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& pt : br.points) {
    if (pt.ok) {
      const Solution& s = *pt.solution;
      rows.push_back({"point", fmt(pt.lambda), "", "1", fmt(s.linf), fmt(s.energy), fmt(s.residual), ""});
    } else {
      std::string why = pt.failure;
      for (char& ch : why)
        if (ch == ',' || ch == '\n') ch = ';';
      rows.push_back({"point", fmt(pt.lambda), "", "0", "", "", "", why});
    }
  }
  if (br.lambda_star_bracket)
    rows.push_back({"bracket", fmt(br.lambda_star_bracket->first), fmt(br.lambda_star_bracket->second), "", "", "",
                    "", ""});
  write_table(os, config, {"row", "lambda", "lambda_hi", "ok", "linf", "energy", "residual", "failure"}, rows);
}

}  // namespace fraclap
