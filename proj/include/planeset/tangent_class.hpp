#ifndef PLANESET_TANGENT_CLASS_HPP
#define PLANESET_TANGENT_CLASS_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <ostream>
#include <string_view>
#include <thread>
#include <vector>

#include "planeset/curves.hpp"
#include "planeset/format.hpp"
#include "planeset/geom.hpp"

namespace planeset {

/// Position of a curve neighbourhood relative to the tangent disk.
enum class PointClass { A, B, AB, BA, C, Unresolved };

inline constexpr std::array<PointClass, 6> kAllPointClasses = {PointClass::A,  PointClass::B, PointClass::AB,
                                                              PointClass::BA, PointClass::C, PointClass::Unresolved};

inline std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::A: return "A";
    case PointClass::B: return "B";
    case PointClass::AB: return "AB";
    case PointClass::BA: return "BA";
    case PointClass::C: return "C";
    case PointClass::Unresolved: return "UNRESOLVED";
  }
  return "UNRESOLVED";
}

struct ClassificationParams {
  double d = 1.0;              // disk diameter
  double eps_nbhd = 0.0;       // arclength half-width of the neighbourhood
  double arc_match_tol = 0.0;  // dead band around the disk boundary

  /// eps_nbhd = 8 sample spacings, arc_match_tol = 1e-9 * scale.
  static ClassificationParams for_curve(const SampledCurve& c, double d) {
    return {d, 8.0 * c.max_spacing(), c.tolerance().eps_geom()};
  }

  void validate(const SampledCurve& c) const {
    if (!(d > 0) || !std::isfinite(d)) throw Error(Errc::BadParameter, "disk diameter must be positive");
    if (!(arc_match_tol > 0)) throw Error(Errc::InvalidTolerance, "arc_match_tol must be positive");
    if (!(eps_nbhd > 2.0 * c.max_spacing())) throw Error(Errc::WindowTooSmall, "eps_nbhd must exceed two sample spacings");
    if (!(2.0 * eps_nbhd < c.length())) throw Error(Errc::BadParameter, "neighbourhood covers the whole curve");
  }
};

/// Circle of diameter d tangent to the curve at vertex i, on the inner side.
inline Circle tangent_disk_at(const SampledCurve& c, std::size_t i, double d) {
  if (!(d > 0)) throw Error(Errc::BadParameter, "disk diameter must be positive");
  const TangentFrame f = tangent_normal_at(c, i);
  return Circle(f.point + (0.5 * d) * f.inner_normal, 0.5 * d);
}

/// Signed distances (negative inside the disk) over each half-window.
struct NeighbourhoodExtent {
  double left_min = 0, left_max = 0;
  double right_min = 0, right_max = 0;
};

struct PointClassification {
  PointClass label = PointClass::Unresolved;
  NeighbourhoodExtent extent;
};

/// Labels vertex i. Right is the direction of increasing parameter on the
/// counterclockwise curve; each half-window holds the samples within
/// eps_nbhd of arclength, excluding i.
inline PointClassification classify_point_detailed(const SampledCurve& c, std::size_t i,
                                                   const ClassificationParams& p) {
  p.validate(c);
  const std::size_t n = c.size();
  if (i >= n) throw Error(Errc::BadParameter, "vertex index out of range");
  const Circle disk = tangent_disk_at(c, i, p.d);
  auto signed_dist = [&](std::size_t j) { return distance(c[j], disk.center) - disk.radius; };

  PointClassification out;
  auto scan_side = [&](bool right, double& lo, double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    std::size_t count = 0;
    for (std::size_t step = 1; step < n / 2; ++step) {
      const std::size_t j = right ? (i + step) % n : (i + n - step) % n;
      const double s = right ? c.forward_arclength(i, j) : c.forward_arclength(j, i);
      if (s > p.eps_nbhd) break;
      const double v = signed_dist(j);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      ++count;
    }
    if (count < 3) throw Error(Errc::WindowTooSmall, "fewer than three samples on one side of the window");
  };
  scan_side(false, out.extent.left_min, out.extent.left_max);
  scan_side(true, out.extent.right_min, out.extent.right_max);

  const double t = p.arc_match_tol;
  const auto& e = out.extent;
  const bool left_in = e.left_max < -t, left_out = e.left_min > t;
  const bool right_in = e.right_max < -t, right_out = e.right_min > t;
  const bool on_arc = std::max({std::abs(e.left_min), std::abs(e.left_max), std::abs(e.right_min),
                                std::abs(e.right_max)}) <= t;
  if (on_arc) {
    out.label = PointClass::C;
  } else if (left_in && right_in) {
    out.label = PointClass::A;
  } else if (left_out && right_out) {
    out.label = PointClass::B;
  } else if (left_in && right_out) {
    out.label = PointClass::AB;
  } else if (left_out && right_in) {
    out.label = PointClass::BA;
  } else {
    out.label = PointClass::Unresolved;
  }
  return out;
}

inline PointClass classify_point(const SampledCurve& c, std::size_t i, const ClassificationParams& p) {
  return classify_point_detailed(c, i, p).label;
}

struct ClassificationReport {
  std::vector<PointClass> labels;
  std::vector<NeighbourhoodExtent> extents;
  std::array<std::size_t, 6> counts{};  // indexed by PointClass
  bool partition_ok = false;

  std::size_t count(PointClass k) const { return counts[static_cast<std::size_t>(k)]; }
};

inline ClassificationReport classify_curve(const SampledCurve& c, const ClassificationParams& p,
                                           unsigned threads = 1) {
  p.validate(c);
  const std::size_t n = c.size();
  ClassificationReport r;
  r.labels.assign(n, PointClass::Unresolved);
  r.extents.assign(n, {});
  auto work = [&](std::size_t offset, std::size_t stride) {
    for (std::size_t i = offset; i < n; i += stride) {
      const auto pc = classify_point_detailed(c, i, p);
      r.labels[i] = pc.label;
      r.extents[i] = pc.extent;
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  std::size_t total = 0;
  for (auto l : r.labels) ++r.counts[static_cast<std::size_t>(l)];
  for (auto k : r.counts) total += k;
  r.partition_ok = r.labels.size() == n && total == n;
  return r;
}

inline void write_labels_csv(std::ostream& os, const SampledCurve& c, const ClassificationReport& r) {
  os << "index,x,y,label,left_min,left_max,right_min,right_max\n";
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const auto& e = r.extents[i];
    os << i << ',' << format_double(c[i].x) << ',' << format_double(c[i].y) << ',' << to_string(r.labels[i]) << ','
       << format_double(e.left_min) << ',' << format_double(e.left_max) << ',' << format_double(e.right_min) << ','
       << format_double(e.right_max) << '\n';
  }
}

}  // namespace planeset

#endif  // PLANESET_TANGENT_CLASS_HPP
