#ifndef PLANESET_CURVE_IO_HPP
#define PLANESET_CURVE_IO_HPP

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "planeset/curves.hpp"
#include "planeset/format.hpp"

namespace planeset {

/// One header line, then one "x y" row per vertex (counterclockwise).
inline void write_curve(std::ostream& os, const SampledCurve& c) {
  os << "# planeset-curve n=" << c.size() << " orientation=ccw closed=true\n";
  for (const auto& p : c.points()) os << format_double(p.x) << ' ' << format_double(p.y) << '\n';
}

/// Reads the vertex rows; lines starting with '#' and blank lines are skipped.
/// Tangents are recomputed from the points.
inline SampledCurve read_curve(std::istream& is) {
  std::vector<Point2> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double x, y;
    std::string extra;
    if (!(row >> x >> y) || (row >> extra)) {
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected two numbers");
    }
    pts.emplace_back(x, y);
  }
  if (pts.empty()) throw Error(Errc::ParseError, "curve file has no vertices");
  return SampledCurve::from_points(std::move(pts));
}

}  // namespace planeset

#endif  // PLANESET_CURVE_IO_HPP
