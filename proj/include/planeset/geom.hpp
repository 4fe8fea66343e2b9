#ifndef PLANESET_GEOM_HPP
#define PLANESET_GEOM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "planeset/error.hpp"

namespace planeset {

/// Planar point (also used for displacement vectors). Coordinates are
/// always finite; the constructor rejects NaN and infinities.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  Point2(double px, double py) : x(px), y(py) {
    if (!std::isfinite(px) || !std::isfinite(py)) {
      throw Error(Errc::NonFinite, "point coordinates must be finite");
    }
  }

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::sqrt(norm2(a)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline double distance2(Point2 a, Point2 b) { return norm2(a - b); }
/// Counterclockwise quarter turn.
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline Point2 normalized(Point2 a) { return a / norm(a); }
inline Point2 unit_at(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Lexicographic order on (x, y).
inline bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// Absolute tolerances anchored to the diameter of the working set.
class ToleranceContext {
 public:
  ToleranceContext(double eps_geom, double eps_angle, double scale)
      : eps_geom_(eps_geom), eps_angle_(eps_angle), scale_(scale) {
    if (!(eps_geom > 0) || !(eps_angle > 0) || !(scale > 0) || !std::isfinite(scale) ||
        !std::isfinite(eps_geom) || !std::isfinite(eps_angle)) {
      throw Error(Errc::InvalidTolerance, "tolerances and scale must be positive and finite");
    }
    if (!(eps_geom < scale)) {
      throw Error(Errc::InvalidTolerance, "eps_geom must be below the working scale");
    }
  }

  /// eps_geom = 1e-9 * scale, eps_angle = 1e-9 rad.
  static ToleranceContext for_scale(double scale) { return {1e-9 * scale, 1e-9, scale}; }

  double eps_geom() const { return eps_geom_; }
  double eps_angle() const { return eps_angle_; }
  double scale() const { return scale_; }

  ToleranceContext with_eps_angle(double eps_angle) const { return {eps_geom_, eps_angle, scale_}; }
  ToleranceContext scaled(double factor) const {
    return {eps_geom_ * factor, eps_angle_, scale_ * factor};
  }

 private:
  double eps_geom_;
  double eps_angle_;
  double scale_;
};

struct Circle {
  Point2 center;
  double radius = 1.0;

  Circle() = default;
  Circle(Point2 c, double r) : center(c), radius(r) {
    if (!(r > 0) || !std::isfinite(r)) {
      throw Error(Errc::InvalidCircle, "circle radius must be positive and finite");
    }
  }
};

/// Unsigned deviation of the angle abc from a right angle, in radians.
inline double right_angle_deviation(Point2 a, Point2 b, Point2 c) {
  const Point2 u = a - b;
  const Point2 v = c - b;
  return std::abs(std::atan2(dot(u, v), std::abs(cross(u, v))));
}

struct RectangleMetrics {
  double diagonal = 0.0;
  double short_side = 0.0;
  double long_side = 0.0;
  double aspect = 0.0;  // short / long, in (0, 1]
};

/// Metrics of the rectangle with corner b and adjacent vertices a, c.
inline RectangleMetrics metrics_from_corner(Point2 a, Point2 b, Point2 c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  RectangleMetrics m;
  m.diagonal = distance(a, c);
  m.short_side = std::min(ab, bc);
  m.long_side = std::max(ab, bc);
  m.aspect = m.short_side / m.long_side;
  return m;
}

inline bool is_rectangle(Point2 a, Point2 b, Point2 c, Point2 d, const ToleranceContext& tol) {
  const std::array<Point2, 4> v{a, b, c, d};
  const double eps = tol.eps_geom();
  for (int i = 0; i < 4; ++i) {
    if (distance(v[i], v[(i + 1) % 4]) <= eps) return false;
  }
  if (std::abs(distance(a, b) - distance(c, d)) > eps) return false;
  if (std::abs(distance(b, c) - distance(d, a)) > eps) return false;
  for (int i = 0; i < 4; ++i) {
    if (right_angle_deviation(v[(i + 3) % 4], v[i], v[(i + 1) % 4]) > tol.eps_angle()) return false;
  }
  if (std::abs(distance(a, c) - distance(b, d)) > eps) return false;
  if (distance(midpoint(a, c), midpoint(b, d)) > eps) return false;
  return true;
}

/// A validated rectangle with vertices in cyclic order.
class Rectangle {
 public:
  static Rectangle from_vertices(Point2 a, Point2 b, Point2 c, Point2 d, const ToleranceContext& tol) {
    if (!is_rectangle(a, b, c, d, tol)) {
      throw Error(Errc::InvalidRectangle, "vertices do not form a rectangle within tolerance");
    }
    return Rectangle({a, b, c, d});
  }

  const std::array<Point2, 4>& vertices() const { return v_; }
  Point2 operator[](std::size_t i) const { return v_[i]; }

 private:
  explicit Rectangle(std::array<Point2, 4> v) : v_(v) {}
  std::array<Point2, 4> v_;
};

inline RectangleMetrics rectangle_metrics(const Rectangle& r) {
  return metrics_from_corner(r[0], r[1], r[2]);
}

/// Fourth vertex of the rectangle with the right angle at b.
inline Point2 complete_rectangle(Point2 a, Point2 b, Point2 c, const ToleranceContext& tol) {
  const double eps = tol.eps_geom();
  if (distance(a, b) <= eps || distance(b, c) <= eps || distance(a, c) <= eps) {
    throw Error(Errc::DegenerateTriple, "rectangle corners coincide within eps_geom");
  }
  if (right_angle_deviation(a, b, c) > tol.eps_angle()) {
    throw Error(Errc::NotRightAngle, "angle at b is not right within eps_angle");
  }
  return a + c - b;
}

// circle / circle

struct Disjoint {};
struct Tangent {
  Point2 point;
};
struct TwoPoints {
  Point2 first;
  Point2 second;
};
struct Coincident {};
using IntersectionResult = std::variant<Disjoint, Tangent, TwoPoints, Coincident>;

/// Number of common points; nullopt stands for infinitely many.
inline std::optional<int> intersection_count(const IntersectionResult& r) {
  switch (r.index()) {
    case 0: return 0;
    case 1: return 1;
    case 2: return 2;
    default: return std::nullopt;
  }
}

/// Tangency is a band: |dist - (r1 +- r2)| <= eps_geom reports Tangent.
inline IntersectionResult circle_circle_intersect(const Circle& c1, const Circle& c2,
                                                  const ToleranceContext& tol) {
  const double eps = tol.eps_geom();
  const double dist = distance(c1.center, c2.center);
  const double r1 = c1.radius;
  const double r2 = c2.radius;
  if (dist <= eps && std::abs(r1 - r2) <= eps) return Coincident{};
  if (std::abs(dist - (r1 + r2)) <= eps) {
    // weighted form is symmetric under swapping the circles
    return Tangent{(r2 * c1.center + r1 * c2.center) / (r1 + r2)};
  }
  if (dist > eps && std::abs(dist - std::abs(r1 - r2)) <= eps) {
    const Circle& big = r1 >= r2 ? c1 : c2;
    const Circle& small = r1 >= r2 ? c2 : c1;
    return Tangent{big.center + big.radius * ((small.center - big.center) / dist)};
  }
  if (dist > r1 + r2 || dist < std::abs(r1 - r2)) return Disjoint{};
  const Point2 u = (c2.center - c1.center) / dist;
  const double along = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
  Point2 p = c1.center + along * u + h * perp(u);
  Point2 q = c1.center + along * u - h * perp(u);
  if (lex_less(q, p)) std::swap(p, q);
  return TwoPoints{p, q};
}

// segment primitives shared by polyline membership and the scan oracles

inline double point_segment_distance2(Point2 p, Point2 s0, Point2 s1) {
  const Point2 d = s1 - s0;
  const double len2 = norm2(d);
  double t = len2 > 0 ? dot(p - s0, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance2(p, s0 + t * d);
}

inline double point_segment_distance(Point2 p, Point2 s0, Point2 s1) {
  return std::sqrt(point_segment_distance2(p, s0, s1));
}

/// Points where the segment s0-s1 meets the circle away from its endpoints
/// (more than eps from both). A grazing contact within eps of the circle is
/// reported once, at the foot of the perpendicular from the center.
inline void segment_circle_crossings(Point2 s0, Point2 s1, const Circle& circle, double eps,
                                     std::vector<Point2>& out) {
  const Point2 d = s1 - s0;
  const Point2 f = s0 - circle.center;
  const double a = norm2(d);
  if (!(a > 0)) return;
  const double seg_len = std::sqrt(a);
  auto interior = [&](Point2 p) { return distance(p, s0) > eps && distance(p, s1) > eps; };

  const double t_foot = -dot(f, d) / a;
  const double b = 2.0 * dot(f, d);
  const double c = norm2(f) - circle.radius * circle.radius;
  const double disc = b * b - 4.0 * a * c;

  auto foot_touch = [&]() {
    if (t_foot <= 0.0 || t_foot >= 1.0) return;
    const Point2 foot = s0 + t_foot * d;
    if (std::abs(distance(foot, circle.center) - circle.radius) <= eps && interior(foot)) {
      out.push_back(foot);
    }
  };

  if (disc < 0) {
    foot_touch();
    return;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  double t1 = q / a;
  double t2 = q != 0.0 ? c / q : t1;
  if (t2 < t1) std::swap(t1, t2);
  if ((t2 - t1) * seg_len <= eps) {
    foot_touch();
    return;
  }
  for (double t : {t1, t2}) {
    if (t > 0.0 && t < 1.0) {
      const Point2 p = s0 + t * d;
      if (interior(p)) out.push_back(p);
    }
  }
}

}  // namespace planeset

#endif  // PLANESET_GEOM_HPP
