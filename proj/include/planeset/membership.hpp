#ifndef PLANESET_MEMBERSHIP_HPP
#define PLANESET_MEMBERSHIP_HPP

#include <algorithm>
#include <concepts>
#include <optional>
#include <span>
#include <vector>

#include "planeset/curves.hpp"
#include "planeset/geom.hpp"
#include "planeset/spatial_index.hpp"

namespace planeset {

/// What the rectangle scan needs from a set:
///  - distance(p) / distance_within(p, limit): distance from p to the set;
///  - circle_hits(circle, band, windows, out): points of the set on the
///    circle (within band), restricted to the window disks when given;
///  - right_angle_candidates(a, c, windows, out): candidate corners b for the
///    diagonal a-c; the scan filters them by the exact angle test.
template <class M>
concept MembershipSet = requires(const M& m, Point2 p, const Circle& circle, double band,
                                 std::span<const Circle> windows, std::vector<Point2>& out) {
  { m.distance(p) } -> std::convertible_to<double>;
  { m.distance_within(p, band) } -> std::same_as<std::optional<double>>;
  m.circle_hits(circle, band, windows, out);
  m.right_angle_candidates(p, p, windows, out);
};

namespace detail {
inline bool in_any_window(Point2 p, std::span<const Circle> windows) {
  if (windows.empty()) return true;
  for (const auto& w : windows)
    if (distance2(p, w.center) <= w.radius * w.radius) return true;
  return false;
}
}  // namespace detail

/// Continuous polyline (open or closed): membership is distance to the
/// segments, and circle hits are exact crossings plus vertices within band.
class PolylineSet {
 public:
  PolylineSet(std::vector<Point2> points, bool closed, double eps_geom, double cell = 0.0)
      : index_(std::move(points), closed, cell), eps_geom_(eps_geom) {}

  static PolylineSet from_curve(const SampledCurve& c, double cell = 0.0) {
    return PolylineSet(c.points(), true, c.tolerance().eps_geom(), cell);
  }

  const PolylineIndex& index() const { return index_; }
  const std::vector<Point2>& points() const { return index_.points(); }
  double eps_geom() const { return eps_geom_; }

  double distance(Point2 p) const { return index_.nearest_distance(p); }
  std::optional<double> distance_within(Point2 p, double limit) const { return index_.distance_within(p, limit); }

  void circle_hits(const Circle& circle, double band, std::span<const Circle> windows, std::vector<Point2>& out) const {
    const auto segs = index_.segments_near_circle(circle, band, windows);
    const auto& pts = index_.points();
    const std::size_t n = pts.size();
    std::vector<std::size_t> verts;
    std::vector<Point2> crossings;
    for (auto s : segs) {
      verts.push_back(s);
      verts.push_back((s + 1) % n);
      segment_circle_crossings(index_.seg_start(s), index_.seg_end(s), circle, band, crossings);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (auto v : verts) {
      if (std::abs(planeset::distance(pts[v], circle.center) - circle.radius) <= band &&
          detail::in_any_window(pts[v], windows)) {
        out.push_back(pts[v]);
      }
    }
    for (auto p : crossings)
      if (detail::in_any_window(p, windows)) out.push_back(p);
  }

  /// Points of the polyline on the circle with diameter a-c (Thales).
  void right_angle_candidates(Point2 a, Point2 c, std::span<const Circle> windows, std::vector<Point2>& out) const {
    circle_hits(Circle(midpoint(a, c), 0.5 * planeset::distance(a, c)), eps_geom_, windows, out);
  }

 private:
  PolylineIndex index_;
  double eps_geom_;
};

/// Finite point set: membership is distance to the nearest point.
class PointSet {
 public:
  PointSet(std::vector<Point2> points, double cell) : index_(points, cell) {
    if (index_.points().empty()) throw Error(Errc::EmptySet, "point set is empty");
  }

  const std::vector<Point2>& points() const { return index_.points(); }

  double distance(Point2 p) const { return index_.nearest_distance(p); }
  std::optional<double> distance_within(Point2 p, double limit) const {
    const double d = index_.nearest_distance(p);
    if (d <= limit) return d;
    return std::nullopt;
  }

  void circle_hits(const Circle& circle, double band, std::span<const Circle> windows, std::vector<Point2>& out) const {
    for (const auto& p : index_.points()) {
      if (std::abs(planeset::distance(p, circle.center) - circle.radius) <= band && detail::in_any_window(p, windows)) {
        out.push_back(p);
      }
    }
  }

  /// Every point in the windows; the scan's angle test decides.
  void right_angle_candidates(Point2, Point2, std::span<const Circle> windows, std::vector<Point2>& out) const {
    for (const auto& p : index_.points())
      if (detail::in_any_window(p, windows)) out.push_back(p);
  }

 private:
  SpatialIndex index_;
};

static_assert(MembershipSet<PolylineSet>);
static_assert(MembershipSet<PointSet>);

}  // namespace planeset

#endif  // PLANESET_MEMBERSHIP_HPP
