#pragma once

// Two-column text format for radial densities:
//
//   # comment lines start with '#'
//   r  rho
//
// Radii strictly ascending and positive, densities nonnegative.

#include <tfwd/errors.hpp>
#include <tfwd/model.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tfwd::io {

struct DensityTable {
  std::vector<double> r;
  std::vector<double> rho;
};

inline DensityTable read_density(std::istream& in, const std::string& source = "<stream>") {
  DensityTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double r = 0.0, rho = 0.0;
    std::string extra;
    if (!(ls >> r >> rho)) throw ParseError(source + ":" + std::to_string(lineno) + ": expected two numeric columns 'r rho'");
    if (ls >> extra) throw ParseError(source + ":" + std::to_string(lineno) + ": unexpected third column '" + extra + "'");
    if (!(std::isfinite(r) && r > 0.0))
      throw ParseError(source + ":" + std::to_string(lineno) + ": radius must be positive and finite");
    if (!(std::isfinite(rho) && rho >= 0.0))
      throw ParseError(source + ":" + std::to_string(lineno) + ": density must be nonnegative and finite");
    if (!t.r.empty() && !(r > t.r.back()))
      throw ParseError(source + ":" + std::to_string(lineno) + ": radii must be strictly ascending");
    t.r.push_back(r);
    t.rho.push_back(rho);
  }
  if (t.r.size() < 3) throw ParseError(source + ": need at least 3 data rows");
  return t;
}

inline DensityTable read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open density file '" + path + "'");
  return read_density(in, path);
}

/// Density on the table's own radii.
inline RadialDensity to_density(const DensityTable& t) {
  return RadialDensity(RadialGrid::from_nodes(t.r), t.rho);
}

inline void write_density(std::ostream& out, const RadialDensity& rho, const std::string& header = {}) {
  if (!header.empty()) out << "# " << header << "\n";
  out << "# r rho\n";
  char buf[64];
  for (std::size_t i = 0; i < rho.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", rho.grid().r(i), rho[i]);
    out << buf;
  }
}

inline void write_density_file(const std::string& path, const RadialDensity& rho, const std::string& header = {}) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write density file '" + path + "'");
  write_density(out, rho, header);
}

} // namespace tfwd::io
