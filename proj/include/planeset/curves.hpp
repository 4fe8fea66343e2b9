#ifndef PLANESET_CURVES_HPP
#define PLANESET_CURVES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "planeset/geom.hpp"

namespace planeset {


namespace detail {

inline double signed_area(std::span<const Point2> pts) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) acc += cross(pts[i], pts[(i + 1) % pts.size()]);
  return 0.5 * acc;
}

// Andrew's monotone chain; counterclockwise, collinear points dropped.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

/// Diameter of a planar point set (rotating calipers over the hull).
inline double set_diameter(std::span<const Point2> pts) {
  const auto hull = detail::convex_hull({pts.begin(), pts.end()});
  const std::size_t m = hull.size();
  if (m < 2) return 0.0;
  if (m == 2) return distance(hull[0], hull[1]);
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = hull[i], b = hull[(i + 1) % m];
    while (std::abs(cross(b - a, hull[(j + 1) % m] - a)) > std::abs(cross(b - a, hull[j] - a))) j = (j + 1) % m;
    best = std::max({best, distance(a, hull[j]), distance(b, hull[j])});
  }
  return best;
}

struct TangentFrame {
  Point2 point;
  Point2 tangent;
  Point2 inner_normal;
};

/// Closed counterclockwise polyline standing in for a Jordan curve, with a
/// unit tangent and inner normal per vertex.
class SampledCurve {
 public:
  /// Builds a curve from vertices. Clockwise input is reversed. Without
  /// tangents, central differences are used.
  static SampledCurve from_points(std::vector<Point2> points, std::optional<std::vector<Point2>> tangents = {}) {
    const std::size_t n = points.size();
    if (n < 8) throw Error(Errc::BadParameter, "sampled curve needs at least 8 points");
    if (tangents && tangents->size() != n) throw Error(Errc::BadParameter, "tangent count mismatch");
    const double area = detail::signed_area(points);
    if (!(std::abs(area) > 0)) throw Error(Errc::BadParameter, "curve encloses no area");
    if (area < 0) {
      std::reverse(points.begin(), points.end());
      if (tangents) {
        std::reverse(tangents->begin(), tangents->end());
        for (auto& t : *tangents) t = -t;
      }
    }
    SampledCurve c;
    c.points_ = std::move(points);
    c.scale_ = set_diameter(c.points_);
    const double eps = 1e-9 * c.scale_;
    c.params_.resize(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c.params_[i] = s;
      const double len = distance(c.points_[i], c.points_[(i + 1) % n]);
      if (len <= eps) throw Error(Errc::BadParameter, "consecutive curve points coincide");
      c.max_spacing_ = std::max(c.max_spacing_, len);
      s += len;
    }
    c.length_ = s;
    if (tangents) {
      c.tangents_.reserve(n);
      for (auto t : *tangents) c.tangents_.push_back(normalized(t));
    } else {
      c.tangents_.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        c.tangents_[i] = normalized(c.points_[(i + 1) % n] - c.points_[(i + n - 1) % n]);
      }
    }
    c.normals_.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.normals_[i] = perp(c.tangents_[i]);
    return c;
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<Point2>& points() const { return points_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<Point2>& tangents() const { return tangents_; }
  const std::vector<Point2>& inner_normals() const { return normals_; }
  Point2 operator[](std::size_t i) const { return points_[i]; }
  bool counterclockwise() const { return true; }
  /// Closed length, including the segment back to the first vertex.
  double length() const { return length_; }
  double max_spacing() const { return max_spacing_; }
  double scale() const { return scale_; }
  ToleranceContext tolerance() const { return ToleranceContext::for_scale(scale_); }

  /// Arclength from vertex i forward to vertex j along the curve.
  double forward_arclength(std::size_t i, std::size_t j) const {
    const double d = params_[j] - params_[i];
    return d >= 0 ? d : d + length_;
  }

 private:
  SampledCurve() = default;
  std::vector<Point2> points_;
  std::vector<double> params_;
  std::vector<Point2> tangents_;
  std::vector<Point2> normals_;
  double length_ = 0.0;
  double max_spacing_ = 0.0;
  double scale_ = 0.0;
};

inline double signed_area(const SampledCurve& c) { return detail::signed_area(c.points()); }

inline TangentFrame tangent_normal_at(const SampledCurve& c, std::size_t i) {
  if (i >= c.size()) throw Error(Errc::BadParameter, "vertex index out of range");
  return {c[i], c.tangents()[i], c.inner_normals()[i]};
}

/// Sum of chord lengths of the closed polyline.
inline double perimeter(const SampledCurve& c) { return c.length(); }

/// Exact distance from p to the closed polyline (exhaustive over segments).
inline double nearest_distance(const SampledCurve& c, Point2 p) {
  double best2 = std::numeric_limits<double>::infinity();
  const auto& pts = c.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    best2 = std::min(best2, point_segment_distance2(p, pts[i], pts[(i + 1) % pts.size()]));
  }
  return std::sqrt(best2);
}

// ---------------------------------------------------------------------------
// support functions

struct Harmonic {
  int order = 0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

/// Convex body given by its support function, tabulated on m uniform angles
/// and backed by a trigonometric polynomial (given, or interpolated from the
/// table).
class SupportBody {
 public:
  /// Tabulated support function; the trigonometric interpolant of the
  /// table is used between grid angles.
  static SupportBody from_table(std::vector<double> h, std::optional<double> width = {}) {
    const std::size_t m = h.size();
    if (m < 8) throw Error(Errc::BadParameter, "support table needs at least 8 angles");
    SupportBody body;
    double mean = 0.0;
    for (double v : h) mean += v;
    mean /= static_cast<double>(m);
    body.mean_ = mean;
    const std::size_t kmax = m / 2;
    const double cutoff = 1e-14 * std::abs(mean);
    for (std::size_t k = 1; k <= kmax; ++k) {
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
        a += h[i] * std::cos(static_cast<double>(k) * t);
        b += h[i] * std::sin(static_cast<double>(k) * t);
      }
      const bool nyquist = (2 * k == m);
      a *= (nyquist ? 1.0 : 2.0) / static_cast<double>(m);
      b = nyquist ? 0.0 : b * 2.0 / static_cast<double>(m);
      if (std::abs(a) > cutoff || std::abs(b) > cutoff) body.harmonics_.push_back({static_cast<int>(k), a, b});
    }
    body.table_ = std::move(h);
    body.width_ = width;
    body.validate();
    return body;
  }

  /// Support function mean + sum of harmonics, tabulated on m angles.
  static SupportBody from_harmonics(double mean, std::vector<Harmonic> harmonics, std::size_t m,
                                    std::optional<double> width = {}) {
    if (m < 8) throw Error(Errc::BadParameter, "support table needs at least 8 angles");
    SupportBody body;
    body.mean_ = mean;
    body.harmonics_ = std::move(harmonics);
    for (const auto& hk : body.harmonics_) {
      if (hk.order < 1) throw Error(Errc::BadParameter, "harmonic orders must be positive");
    }
    body.table_.resize(m);
    for (std::size_t i = 0; i < m; ++i) body.table_[i] = body.value(body.angle(i));
    body.width_ = width;
    body.validate();
    return body;
  }

  /// Constant-width body h = d/2 + odd harmonics. The table satisfies
  /// h(t) + h(t + pi) == d exactly at every grid angle.
  static SupportBody constant_width(double d, std::vector<Harmonic> odd, std::size_t m) {
    if (!(d > 0)) throw Error(Errc::BadParameter, "width must be positive");
    if (m < 8 || m % 2 != 0) throw Error(Errc::BadParameter, "constant-width table needs an even size >= 8");
    for (const auto& hk : odd) {
      if (hk.order < 1 || hk.order % 2 == 0) {
        throw Error(Errc::BadParameter, "constant width allows odd harmonic orders only");
      }
    }
    SupportBody body;
    body.mean_ = 0.5 * d;
    body.harmonics_ = std::move(odd);
    body.width_ = d;
    body.table_.resize(m);
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double f = body.value(body.angle(i)) - body.mean_;
      // keep the entry >= d/2 as computed and derive its partner as d minus
      // it; the subtraction is exact, so the pair sums to d exactly
      if (f >= 0) {
        body.table_[i] = 0.5 * d + f;
        body.table_[i + half] = d - body.table_[i];
      } else {
        body.table_[i + half] = 0.5 * d - f;
        body.table_[i] = d - body.table_[i + half];
      }
    }
    body.validate();
    return body;
  }

  std::size_t size() const { return table_.size(); }
  const std::vector<double>& table() const { return table_; }
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }
  double mean() const { return mean_; }
  std::optional<double> width_target() const { return width_; }
  double angle(std::size_t i) const {
    return kTwoPi * static_cast<double>(i) / static_cast<double>(table_.size());
  }

  double value(double t) const {
    double v = mean_;
    for (const auto& hk : harmonics_) v += hk.cos_coeff * std::cos(hk.order * t) + hk.sin_coeff * std::sin(hk.order * t);
    return v;
  }
  double derivative(double t) const {
    double v = 0.0;
    for (const auto& hk : harmonics_) {
      v += hk.order * (-hk.cos_coeff * std::sin(hk.order * t) + hk.sin_coeff * std::cos(hk.order * t));
    }
    return v;
  }
  /// Radius of curvature h + h'' at direction t.
  double curvature_radius(double t) const {
    double v = mean_;
    for (const auto& hk : harmonics_) {
      const double k2 = static_cast<double>(hk.order) * hk.order;
      v += (1.0 - k2) * (hk.cos_coeff * std::cos(hk.order * t) + hk.sin_coeff * std::sin(hk.order * t));
    }
    return v;
  }
  /// Boundary arclength from direction 0 to direction t (t in [0, 2pi]).
  double arclength(double t) const {
    double s = mean_ * t;
    for (const auto& hk : harmonics_) {
      const double k = hk.order;
      s += (1.0 - k * k) / k * (hk.cos_coeff * std::sin(k * t) - hk.sin_coeff * (std::cos(k * t) - 1.0));
    }
    return s;
  }
  /// Cauchy: perimeter equals the integral of h over the circle.
  double perimeter() const { return kTwoPi * mean_; }

  Point2 boundary_point(double t) const {
    const Point2 u = unit_at(t);
    return value(t) * u + derivative(t) * perp(u);
  }

 private:
  SupportBody() = default;

  void validate() const {
    const std::size_t m = table_.size();
    const double dt = kTwoPi / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double h = table_[i];
      if (!std::isfinite(h) || !(h > 0)) throw Error(Errc::ConvexityViolation, "support function must be positive");
      const double second = (table_[(i + 1) % m] - 2.0 * h + table_[(i + m - 1) % m]) / (dt * dt);
      if (!(h + second > 0)) throw Error(Errc::ConvexityViolation, "h + h'' must be positive on the grid");
    }
    // the interpolant must stay convex between grid angles too
    const std::size_t dense = 4 * m;
    for (std::size_t i = 0; i < dense; ++i) {
      const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(dense);
      if (!(curvature_radius(t) > 0)) throw Error(Errc::ConvexityViolation, "h + h'' must be positive");
    }
    if (width_) {
      if (m % 2 != 0) throw Error(Errc::BadParameter, "width target needs an even table");
      for (std::size_t i = 0; i < m / 2; ++i) {
        if (std::abs(table_[i] + table_[i + m / 2] - *width_) > 1e-12 * *width_) {
          throw Error(Errc::BadParameter, "table does not have the requested constant width");
        }
      }
    }
  }

  std::vector<double> table_;
  std::vector<Harmonic> harmonics_;
  double mean_ = 0.0;
  std::optional<double> width_;
};

/// Boundary of the body sampled uniformly by arclength, p(t) = h u + h' u^perp.
inline SampledCurve support_to_curve(const SupportBody& body, std::size_t n) {
  if (n < 8) throw Error(Errc::BadParameter, "need at least 8 samples");
  const double total = body.arclength(kTwoPi);
  std::vector<Point2> pts(n), tans(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(n);
    // arclength is strictly increasing: safeguarded Newton
    double lo = 0.0, hi = kTwoPi;
    double t = target / body.mean();
    for (int it = 0; it < 100; ++it) {
      const double f = body.arclength(t) - target;
      if (f > 0) hi = t; else lo = t;
      const double step = f / body.curvature_radius(t);
      double next = t - step;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-15) {
        t = next;
        break;
      }
      t = next;
    }
    pts[i] = body.boundary_point(t);
    tans[i] = perp(unit_at(t));
  }
  return SampledCurve::from_points(std::move(pts), std::move(tans));
}

// ---------------------------------------------------------------------------
// generators

namespace detail {
inline void require_samples(std::size_t n) {
  if (n < 64) throw Error(Errc::BadParameter, "generators need n >= 64");
}
}  // namespace detail

inline SampledCurve generate_circle(double r, std::size_t n, Point2 center = {}) {
  detail::require_samples(n);
  if (!(r > 0)) throw Error(Errc::BadParameter, "radius must be positive");
  std::vector<Point2> pts(n), tans(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = center + r * unit_at(t);
    tans[i] = perp(unit_at(t));
  }
  return SampledCurve::from_points(std::move(pts), std::move(tans));
}

/// Axis-aligned ellipse with semi-axes a (x) and b (y), sampled uniformly by
/// arclength.
inline SampledCurve generate_ellipse(double a, double b, std::size_t n) {
  detail::require_samples(n);
  if (!(a > 0) || !(b > 0)) throw Error(Errc::BadParameter, "semi-axes must be positive");
  auto speed = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  // 5-point Gauss-Legendre on [x0, x1]
  static constexpr double gx[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                   0.9061798459386640};
  static constexpr double gw[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                   0.2369268850561891, 0.2369268850561891};
  auto integrate = [&](double x0, double x1) {
    const double c = 0.5 * (x0 + x1), h = 0.5 * (x1 - x0);
    double s = 0.0;
    for (int k = 0; k < 5; ++k) s += gw[k] * speed(c + h * gx[k]);
    return s * h;
  };
  const std::size_t m = 16 * n;
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    cum[k + 1] = cum[k] + integrate(kTwoPi * static_cast<double>(k) / static_cast<double>(m),
                                    kTwoPi * static_cast<double>(k + 1) / static_cast<double>(m));
  }
  const double total = cum[m];
  std::vector<Point2> pts(n), tans(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(n);
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const std::size_t k = std::min<std::size_t>(m - 1, static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cum.begin() - 1)));
    const double t0 = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    double t = t0;
    for (int iter = 0; iter < 8; ++iter) t -= (cum[k] + integrate(t0, t) - target) / speed(t);
    pts[i] = {a * std::cos(t), b * std::sin(t)};
    tans[i] = normalized(Point2{-a * std::sin(t), b * std::cos(t)});
  }
  return SampledCurve::from_points(std::move(pts), std::move(tans));
}

/// Reuleaux polygon of width d: k arcs of radius d centred at the opposite
/// vertices of a regular k-gon. Each arc starts at its vertex, so all k
/// vertices are samples; the samples are spread uniformly by arclength.
inline SampledCurve generate_reuleaux(int k, double d, std::size_t n) {
  detail::require_samples(n);
  if (k < 3 || k % 2 == 0) throw Error(Errc::BadParameter, "Reuleaux polygons need an odd k >= 3");
  if (!(d > 0)) throw Error(Errc::BadParameter, "width must be positive");
  const auto uk = static_cast<std::size_t>(k);
  const double circumradius = d / (2.0 * std::cos(std::numbers::pi / (2.0 * k)));
  std::vector<Point2> vertex(uk);
  for (std::size_t j = 0; j < uk; ++j) {
    vertex[j] = circumradius * unit_at(0.5 * std::numbers::pi + kTwoPi * static_cast<double>(j) / k);
  }
  const double span = std::numbers::pi / k;
  std::vector<Point2> pts, tans;
  pts.reserve(n);
  tans.reserve(n);
  for (std::size_t j = 0; j < uk; ++j) {
    const Point2 center = vertex[(j + (uk + 1) / 2) % uk];
    const Point2 from = vertex[j] - center;
    const double phi0 = std::atan2(from.y, from.x);
    const std::size_t count = n / uk + (j < n % uk ? 1 : 0);
    // previous arc's end tangent, for the bisector at the joint
    const Point2 prev_center = vertex[(j + uk - 1 + (uk + 1) / 2) % uk];
    const Point2 prev_from = vertex[j] - prev_center;
    const Point2 t_in = perp(normalized(prev_from));
    const Point2 t_out = perp(unit_at(phi0));
    pts.push_back(vertex[j]);
    tans.push_back(normalized(t_in + t_out));
    for (std::size_t s = 1; s < count; ++s) {
      const double phi = phi0 + span * static_cast<double>(s) / static_cast<double>(count);
      pts.push_back(center + d * unit_at(phi));
      tans.push_back(perp(unit_at(phi)));
    }
  }
  return SampledCurve::from_points(std::move(pts), std::move(tans));
}

/// Constant-width curve with support function d/2 + odd harmonics.
inline SampledCurve generate_fourier_cw(double d, std::vector<Harmonic> odd, std::size_t n) {
  detail::require_samples(n);
  const auto body = SupportBody::constant_width(d, std::move(odd), n % 2 == 0 ? n : n + 1);
  return support_to_curve(body, n);
}

/// Open circular arc (not a closed curve), n samples from angle start over
/// the given span.
inline std::vector<Point2> generate_arc(double r, double start, double span, std::size_t n, Point2 center = {}) {
  if (n < 2 || !(r > 0) || !(span > 0)) throw Error(Errc::BadParameter, "bad arc parameters");
  std::vector<Point2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = center + r * unit_at(start + span * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return pts;
}

// ---------------------------------------------------------------------------
// convexity and width

/// True when every turning angle is >= -eps_angle and the total turning is
/// one full revolution.
inline bool is_convex(const SampledCurve& c, double eps_angle) {
  const auto& p = c.points();
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e0 = p[i] - p[(i + n - 1) % n];
    const Point2 e1 = p[(i + 1) % n] - p[i];
    const double turn = std::atan2(cross(e0, e1), dot(e0, e1));
    if (turn < -eps_angle) return false;
    total += turn;
  }
  return std::abs(total - kTwoPi) < 1e-6;
}

namespace detail {
// Support values max_i <p_i, u(theta_j)> for increasing angles theta_j,
// advancing the support vertex monotonically (rotating calipers).
inline std::vector<double> support_sweep(const SampledCurve& c, std::span<const double> angles) {
  const auto& p = c.points();
  const std::size_t n = p.size();
  std::vector<double> out(angles.size());
  if (angles.empty()) return out;
  const Point2 u0 = unit_at(angles[0]);
  std::size_t idx = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (dot(p[i], u0) > dot(p[idx], u0)) idx = i;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const Point2 u = unit_at(angles[j]);
    for (std::size_t steps = 0; steps < n && dot(p[(idx + 1) % n], u) > dot(p[idx], u); ++steps) idx = (idx + 1) % n;
    out[j] = dot(p[idx], u);
  }
  return out;
}
}  // namespace detail

/// Width w(theta_j) = h(theta_j) + h(theta_j + pi) for theta_j = 2 pi j / m.
inline std::vector<double> width_function(const SampledCurve& c, std::size_t m = 720, double eps_angle = 1e-9) {
  if (m == 0) throw Error(Errc::BadParameter, "need at least one caliper direction");
  if (!is_convex(c, eps_angle)) throw Error(Errc::NotConvex, "width needs a convex curve");
  std::vector<double> fwd(m), back(m);
  for (std::size_t j = 0; j < m; ++j) {
    fwd[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    back[j] = fwd[j] + std::numbers::pi;
  }
  const auto h0 = detail::support_sweep(c, fwd);
  const auto h1 = detail::support_sweep(c, back);
  std::vector<double> w(m);
  for (std::size_t j = 0; j < m; ++j) w[j] = h0[j] + h1[j];
  return w;
}

inline bool constant_width_check(const SampledCurve& c, double d, double tol, std::size_t m = 720) {
  const auto w = width_function(c, m);
  double worst = 0.0;
  for (double v : w) worst = std::max(worst, std::abs(v - d));
  return worst <= tol;
}

}  // namespace planeset

#endif  // PLANESET_CURVES_HPP
