#ifndef PLANESET_PACKINGS_HPP
#define PLANESET_PACKINGS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <thread>
#include <variant>
#include <vector>

#include "planeset/format.hpp"
#include "planeset/geom.hpp"
#include "planeset/random.hpp"
#include "planeset/spatial_index.hpp"

namespace planeset {

/// Open axis-aligned square |x - cx| < half, |y - cy| < half.
struct SquareCell {
  Point2 center;
  double half = 0.0;
};

/// Open ellipse interior with semi-axes a >= b, major axis at `angle`.
struct EllipseCell {
  Point2 center;
  double a = 0.0;
  double b = 0.0;
  double angle = 0.0;
};

/// Open interior of a circle, square or ellipse.
using Cell = std::variant<Circle, SquareCell, EllipseCell>;

/// Closed axis-aligned square domain.
struct SquareDomain {
  Point2 center;
  double half = 1.0;
};

/// Closed outer domain: a disk or a square.
using OuterDomain = std::variant<Circle, SquareDomain>;

enum class CellShape { Circle, Square, Ellipse };

namespace detail {

inline Point2 ellipse_frame(const EllipseCell& e, Point2 p) {
  const Point2 d = p - e.center;
  const double c = std::cos(e.angle), s = std::sin(e.angle);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

inline Point2 ellipse_world(const EllipseCell& e, Point2 q) {
  const double c = std::cos(e.angle), s = std::sin(e.angle);
  return e.center + Point2{c * q.x - s * q.y, s * q.x + c * q.y};
}

// 1 on the boundary, < 1 inside.
inline double ellipse_level(const EllipseCell& e, Point2 p) {
  const Point2 q = ellipse_frame(e, p);
  return std::hypot(q.x / e.a, q.y / e.b);
}

inline double chebyshev(Point2 a, Point2 b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

}  // namespace detail

inline Point2 cell_center(const Cell& c) {
  return std::visit([](const auto& s) { return s.center; }, c);
}

/// Radius of the smallest circle about the centre containing the cell.
inline double bounding_radius(const Cell& c) {
  struct V {
    double operator()(const Circle& s) const { return s.radius; }
    double operator()(const SquareCell& s) const { return s.half * std::numbers::sqrt2; }
    double operator()(const EllipseCell& s) const { return std::max(s.a, s.b); }
  };
  return std::visit(V{}, c);
}

/// Exact test for the open cell.
inline bool open_contains(const Cell& c, Point2 p) {
  struct V {
    Point2 p;
    bool operator()(const Circle& s) const { return distance2(p, s.center) < s.radius * s.radius; }
    bool operator()(const SquareCell& s) const {
      return std::abs(p.x - s.center.x) < s.half && std::abs(p.y - s.center.y) < s.half;
    }
    bool operator()(const EllipseCell& s) const {
      const Point2 q = detail::ellipse_frame(s, p);
      return (q.x / s.a) * (q.x / s.a) + (q.y / s.b) * (q.y / s.b) < 1.0;
    }
  };
  return std::visit(V{p}, c);
}

/// Negative inside the cell; inside, |value| is a lower bound on the depth.
inline double cell_clearance(const Cell& c, Point2 p) {
  struct V {
    Point2 p;
    double operator()(const Circle& s) const { return distance(p, s.center) - s.radius; }
    double operator()(const SquareCell& s) const {
      const double qx = std::abs(p.x - s.center.x) - s.half;
      const double qy = std::abs(p.y - s.center.y) - s.half;
      if (qx > 0 || qy > 0) return std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
      return std::max(qx, qy);
    }
    double operator()(const EllipseCell& s) const {
      return (detail::ellipse_level(s, p) - 1.0) * std::min(s.a, s.b);
    }
  };
  return std::visit(V{p}, c);
}

inline Point2 outer_center(const OuterDomain& o) {
  return std::visit([](const auto& s) { return s.center; }, o);
}

/// Radius of a disk domain, half side of a square one.
inline double outer_size(const OuterDomain& o) {
  struct V {
    double operator()(const Circle& s) const { return s.radius; }
    double operator()(const SquareDomain& s) const { return s.half; }
  };
  return std::visit(V{}, o);
}

/// Positive outside the closed domain, <= 0 inside or on it.
inline double outer_excess(const OuterDomain& o, Point2 p) {
  struct V {
    Point2 p;
    double operator()(const Circle& s) const { return distance(p, s.center) - s.radius; }
    double operator()(const SquareDomain& s) const { return detail::chebyshev(p, s.center) - s.half; }
  };
  return std::visit(V{p}, o);
}

inline bool outer_contains(const OuterDomain& o, Point2 p) {
  struct V {
    Point2 p;
    bool operator()(const Circle& s) const { return distance2(p, s.center) <= s.radius * s.radius; }
    bool operator()(const SquareDomain& s) const { return detail::chebyshev(p, s.center) <= s.half; }
  };
  return std::visit(V{p}, o);
}

/// Disk D with open inner disks D_i.
struct DiskPacking {
  Circle outer;
  std::vector<Circle> inner;
  std::size_t depth = 0;  // number of generations (inner disks) placed
  std::uint64_t rng_seed = 0;
};

/// Outer disk or square with open square, ellipse or disk cells.
struct ShapePacking {
  OuterDomain outer;
  std::vector<Cell> cells;
  std::size_t depth = 0;
  std::uint64_t rng_seed = 0;

  static ShapePacking from_disks(const DiskPacking& p) {
    ShapePacking s{p.outer, {}, p.depth, p.rng_seed};
    s.cells.assign(p.inner.begin(), p.inner.end());
    return s;
  }
};

struct PackingOptions {
  CellShape shape = CellShape::Circle;
  double min_size = 0.05;           // radius, half side or semi-major axis
  std::size_t max_count = 64;
  std::uint64_t seed = 0;
  double gap_fraction = 0.01;       // clearance between closures, times outer size
  double max_size_fraction = 0.2;   // size cap, times outer size
  std::size_t trial_budget = 20000;  // consecutive rejected candidates before stopping
  double ellipse_aspect = 0.6;      // b / a

  void validate(double outer) const {
    if (!(min_size > 0 && min_size < 0.5 * outer)) throw Error(Errc::BadParameter, "min_size must lie in (0, outer/2)");
    if (!(gap_fraction > 0 && gap_fraction < 0.5)) throw Error(Errc::BadParameter, "gap_fraction must lie in (0, 0.5)");
    if (!(max_size_fraction > 0 && max_size_fraction < 1)) {
      throw Error(Errc::BadParameter, "max_size_fraction must lie in (0, 1)");
    }
    if (!(ellipse_aspect > 0 && ellipse_aspect <= 1)) throw Error(Errc::BadParameter, "ellipse_aspect must lie in (0, 1]");
    if (trial_budget == 0) throw Error(Errc::BadParameter, "trial_budget must be positive");
  }
};

namespace detail {

inline double shape_bound_factor(CellShape s) { return s == CellShape::Square ? std::numbers::sqrt2 : 1.0; }

// Largest size of a new cell at c that keeps `gap` clear of the outer boundary.
inline double outer_room(const OuterDomain& o, CellShape shape, Point2 c, double gap) {
  if (const auto* disk = std::get_if<Circle>(&o)) {
    return (disk->radius - distance(c, disk->center) - gap) / shape_bound_factor(shape);
  }
  const auto& sq = std::get<SquareDomain>(o);
  return sq.half - chebyshev(c, sq.center) - gap;
}

// Largest size of a new cell at c that keeps `gap` clear of cell e.
inline double cell_room(const Cell& e, CellShape shape, Point2 c, double gap) {
  if (shape == CellShape::Circle) {
    if (const auto* d = std::get_if<Circle>(&e)) return distance(c, d->center) - d->radius - gap;
  }
  if (shape == CellShape::Square) {
    if (const auto* s = std::get_if<SquareCell>(&e)) return chebyshev(c, s->center) - s->half - gap;
  }
  return (distance(c, cell_center(e)) - bounding_radius(e) - gap) / shape_bound_factor(shape);
}

inline Point2 sample_in(const OuterDomain& o, Rng& rng) {
  const Point2 c = outer_center(o);
  const double s = outer_size(o);
  for (;;) {
    const Point2 p{c.x + rng.uniform(-s, s), c.y + rng.uniform(-s, s)};
    if (outer_contains(o, p)) return p;
  }
}

}  // namespace detail

/// Greedy rejection sampling: each candidate centre is uniform in the
/// domain, grows to the largest admissible size (capped), and is kept if
/// that size reaches min_size. Runs with a larger max_count extend runs
/// with a smaller one.
inline ShapePacking greedy_shape_packing(const OuterDomain& outer, const PackingOptions& opt) {
  const double size = outer_size(outer);
  opt.validate(size);
  const double gap = opt.gap_fraction * size;
  const double cap = opt.max_size_fraction * size;
  Rng rng(opt.seed);
  ShapePacking out{outer, {}, 0, opt.seed};
  std::size_t fails = 0;
  while (out.cells.size() < opt.max_count && fails < opt.trial_budget) {
    const Point2 c = detail::sample_in(outer, rng);
    double room = detail::outer_room(outer, opt.shape, c, gap);
    for (const auto& e : out.cells) {
      if (room < opt.min_size) break;
      room = std::min(room, detail::cell_room(e, opt.shape, c, gap));
    }
    if (room < opt.min_size) {
      ++fails;
      continue;
    }
    fails = 0;
    const double s = std::min(room, cap);
    switch (opt.shape) {
      case CellShape::Circle: out.cells.emplace_back(Circle(c, s)); break;
      case CellShape::Square: out.cells.emplace_back(SquareCell{c, s}); break;
      case CellShape::Ellipse:
        out.cells.emplace_back(EllipseCell{c, s, opt.ellipse_aspect * s, rng.uniform(0.0, std::numbers::pi)});
        break;
    }
  }
  out.depth = out.cells.size();
  return out;
}

inline DiskPacking greedy_circle_packing(const Circle& outer, double min_r, std::size_t max_count,
                                         std::uint64_t seed) {
  if (!(min_r > 0 && min_r < 0.5 * outer.radius)) {
    throw Error(Errc::BadParameter, "min_r must lie in (0, outer radius / 2)");
  }
  PackingOptions opt;
  opt.min_size = min_r;
  opt.max_count = max_count;
  opt.seed = seed;
  const ShapePacking s = greedy_shape_packing(outer, opt);
  DiskPacking p{outer, {}, s.depth, seed};
  for (const auto& c : s.cells) p.inner.push_back(std::get<Circle>(c));
  return p;
}

/// Exact check of containment and pairwise disjointness of closures.
inline bool packing_valid(const DiskPacking& p, double eps_geom) {
  for (std::size_t i = 0; i < p.inner.size(); ++i) {
    const Circle& a = p.inner[i];
    if (!(distance(a.center, p.outer.center) + a.radius < p.outer.radius)) return false;
    for (std::size_t j = i + 1; j < p.inner.size(); ++j) {
      const Circle& b = p.inner[j];
      if (!(distance(a.center, b.center) > a.radius + b.radius + eps_geom)) return false;
    }
  }
  return true;
}

/// Sufficient check for general cells: exact for disk/disk and square/square
/// pairs, bounding circles otherwise.
inline bool packing_valid(const ShapePacking& p, double eps_geom) {
  const double size = outer_size(p.outer);
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const Cell& a = p.cells[i];
    const auto* sq = std::get_if<SquareCell>(&a);
    const auto* outer_sq = std::get_if<SquareDomain>(&p.outer);
    if (sq && outer_sq) {
      if (!(detail::chebyshev(sq->center, outer_sq->center) + sq->half < size)) return false;
    } else if (const auto* d = std::get_if<Circle>(&a); d && outer_sq) {
      if (!(detail::chebyshev(d->center, outer_sq->center) + d->radius < size)) return false;
    } else if (!(outer_excess(p.outer, cell_center(a)) + bounding_radius(a) < 0)) {
      return false;
    }
    for (std::size_t j = i + 1; j < p.cells.size(); ++j) {
      const Cell& b = p.cells[j];
      const auto* da = std::get_if<Circle>(&a);
      const auto* db = std::get_if<Circle>(&b);
      const auto* sb = std::get_if<SquareCell>(&b);
      double clearance;
      if (da && db) {
        clearance = distance(da->center, db->center) - da->radius - db->radius;
      } else if (sq && sb) {
        clearance = detail::chebyshev(sq->center, sb->center) - sq->half - sb->half;
      } else {
        clearance = distance(cell_center(a), cell_center(b)) - bounding_radius(a) - bounding_radius(b);
      }
      if (!(clearance > eps_geom)) return false;
    }
  }
  return true;
}

/// K = closed outer domain minus the union of the open cells.
class CompactSetK {
 public:
  explicit CompactSetK(const DiskPacking& p) : CompactSetK(ShapePacking::from_disks(p)) {}

  explicit CompactSetK(ShapePacking p) : packing_(std::move(p)) {
    const Point2 c = outer_center(packing_.outer);
    const double s = outer_size(packing_.outer);
    scale_ = 2.0 * s;
    const double per_side = std::max(1.0, std::ceil(2.0 * std::sqrt(static_cast<double>(packing_.cells.size()))));
    grid_ = detail::UniformGrid({c.x - s, c.y - s}, {c.x + s, c.y + s}, 2.0 * s / per_side);
    std::vector<std::array<std::int64_t, 4>> boxes;
    for (const auto& cell : packing_.cells) {
      const Point2 m = cell_center(cell);
      const double r = bounding_radius(cell);
      boxes.push_back({grid_.clamp_col(grid_.col_of(m.x - r)), grid_.clamp_row(grid_.row_of(m.y - r)),
                       grid_.clamp_col(grid_.col_of(m.x + r)), grid_.clamp_row(grid_.row_of(m.y + r))});
    }
    grid_.fill(boxes);
  }

  const ShapePacking& packing() const { return packing_; }
  const OuterDomain& outer() const { return packing_.outer; }
  const std::vector<Cell>& cells() const { return packing_.cells; }
  double scale() const { return scale_; }
  ToleranceContext tolerance() const { return ToleranceContext::for_scale(scale_); }

  /// Exact: in the closed outer domain and in no open cell.
  bool contains(Point2 p) const {
    if (!outer_contains(packing_.outer, p)) return false;
    bool hit = false;
    for_cells_at(p, [&](const Cell& c) { hit = hit || open_contains(c, p); });
    return !hit;
  }

  /// Membership with every boundary thickened by band.
  bool contains_banded(Point2 p, double band) const {
    if (outer_excess(packing_.outer, p) > band) return false;
    bool hit = false;
    for_cells_at(p, [&](const Cell& c) { hit = hit || cell_clearance(c, p) < -band; });
    return !hit;
  }

 private:
  template <class F>
  void for_cells_at(Point2 p, F&& f) const {
    const auto col = grid_.col_of(p.x);
    const auto row = grid_.row_of(p.y);
    if (col < 0 || row < 0 || col >= grid_.nx() || row >= grid_.ny()) return;  // outside every cell
    for (auto i : grid_.cell_items(col, row)) f(packing_.cells[i]);
  }

  ShapePacking packing_;
  double scale_ = 1.0;
  detail::UniformGrid grid_;
};

inline bool k_membership(const CompactSetK& k, Point2 p) { return k.contains(p); }

/// One connected piece of probe ∩ K, as an angular interval on the probe.
struct ProbeComponent {
  double start = 0.0;    // angle in [0, 2pi)
  double measure = 0.0;  // angular length; 0 for an isolated tangency point
  bool arc = false;      // measure above the resolution threshold
};

struct ProbeResult {
  std::size_t components = 0;
  std::size_t isolated = 0;  // components without positive measure
  bool has_full_arc = false;
  std::size_t samples_used = 0;
  std::vector<ProbeComponent> parts;

  /// Exactly m points: m components, none of them an arc.
  bool exactly(std::size_t m) const { return !has_full_arc && components == m; }
};

namespace detail {

inline double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

// Golden-section search for an extremum of f on [lo, hi].
template <class F>
double golden_extremum(F&& f, double lo, double hi, bool maximize) {
  constexpr double g = 0.6180339887498949;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const bool keep_left = maximize ? f1 > f2 : f1 < f2;
    if (keep_left) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

// Points where the probe touches a square boundary (sides or corners).
inline void square_touches(Point2 c, double half, const Circle& probe, double eps, std::vector<Point2>& out) {
  const Point2 o = probe.center;
  const double r = probe.radius;
  for (int sx : {-1, 1}) {
    const double x = c.x + sx * half;
    if (std::abs(std::abs(o.x - x) - r) <= eps && std::abs(o.y - c.y) <= half) out.push_back({x, o.y});
    const double y = c.y + sx * half;
    if (std::abs(std::abs(o.y - y) - r) <= eps && std::abs(o.x - c.x) <= half) out.push_back({o.x, y});
    for (int sy : {-1, 1}) {
      const Point2 corner{c.x + sx * half, c.y + sy * half};
      if (std::abs(distance(corner, o) - r) <= eps) out.push_back(corner);
    }
  }
}

// Points where the probe touches an ellipse boundary: extrema of the level
// function along the probe with level ~ 1.
inline void ellipse_touches(const EllipseCell& e, const Circle& probe, double eps, std::vector<Point2>& out) {
  if (distance(e.center, probe.center) > probe.radius + e.a + eps) return;
  if (distance(e.center, probe.center) + e.a + eps < probe.radius) return;
  constexpr int m = 720;
  auto level = [&](double t) { return ellipse_level(e, probe.center + probe.radius * unit_at(t)); };
  std::array<double, m> v;
  for (int k = 0; k < m; ++k) v[k] = level(kTwoPi * k / m);
  const double h = kTwoPi / m;
  for (int k = 0; k < m; ++k) {
    const double a = v[(k + m - 1) % m], b = v[k], c = v[(k + 1) % m];
    const bool is_min = b <= a && b < c;
    const bool is_max = b >= a && b > c;
    if (!is_min && !is_max) continue;
    const double t = golden_extremum(level, h * (k - 1), h * (k + 1), is_max);
    if (std::abs(level(t) - 1.0) * std::min(e.a, e.b) <= 4.0 * eps) {
      out.push_back(probe.center + probe.radius * unit_at(t));
    }
  }
}

}  // namespace detail

/// Connected components of probe ∩ K. Membership is sampled at
/// angular_resolution points with boundaries thickened by eps_geom, run
/// ends are bisected down to eps_geom, and isolated tangency points with
/// every boundary are added from exact tangency tests.
inline ProbeResult probe_circle_intersection(const CompactSetK& k, const Circle& probe,
                                             std::size_t angular_resolution = 3600) {
  if (angular_resolution < 3600) throw Error(Errc::ResolutionTooLow, "angular_resolution must be at least 3600");
  const ToleranceContext tol = k.tolerance();
  const double eps = tol.eps_geom();
  const std::size_t res = angular_resolution;
  const double step = kTwoPi / static_cast<double>(res);
  auto point_at = [&](double t) { return probe.center + probe.radius * unit_at(t); };
  auto in_k = [&](double t) { return k.contains_banded(point_at(t), eps); };

  ProbeResult out;
  out.samples_used = res;
  std::vector<char> in(res);
  std::size_t in_count = 0;
  for (std::size_t i = 0; i < res; ++i) {
    in[i] = in_k(step * static_cast<double>(i));
    in_count += in[i];
  }

  if (in_count == res) {
    out.parts.push_back({0.0, kTwoPi, true});
  } else if (in_count > 0) {
    std::size_t transitions = 0;
    for (std::size_t i = 0; i < res; ++i) transitions += in[i] != in[(i + 1) % res];
    if (transitions > res / 8) throw Error(Errc::ResolutionTooLow, "probe crosses K too often for the resolution");
    auto refine = [&](double lo, double hi, bool lo_in) {
      for (int it = 0; it < 100 && (hi - lo) * probe.radius > eps; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (in_k(mid) == lo_in) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    };
    std::size_t first_out = 0;
    while (in[first_out]) ++first_out;
    std::size_t run_start = 0;
    bool inside = false;
    for (std::size_t u = first_out + 1; u <= first_out + res; ++u) {
      const bool now = in[u % res];
      if (now && !inside) {
        run_start = u;
      } else if (!now && inside) {
        const double t0 = refine(step * static_cast<double>(run_start - 1), step * static_cast<double>(run_start), false);
        const double t1 = refine(step * static_cast<double>(u - 1), step * static_cast<double>(u), true);
        const double measure = t1 - t0;
        out.parts.push_back({detail::wrap_angle(t0), measure, measure > 4.0 * step});
      }
      inside = now;
    }
  }

  // exact tangencies with every boundary curve
  std::vector<Point2> touches;
  bool coincident = false;
  auto circle_touch = [&](const Circle& c) {
    const auto r = circle_circle_intersect(probe, c, tol);
    if (const auto* t = std::get_if<Tangent>(&r)) touches.push_back(t->point);
    if (std::holds_alternative<Coincident>(r)) coincident = true;
  };
  if (const auto* d = std::get_if<Circle>(&k.outer())) {
    circle_touch(*d);
  } else {
    const auto& sq = std::get<SquareDomain>(k.outer());
    detail::square_touches(sq.center, sq.half, probe, eps, touches);
  }
  for (const auto& cell : k.cells()) {
    if (distance(cell_center(cell), probe.center) > probe.radius + bounding_radius(cell) + eps) continue;
    if (const auto* d = std::get_if<Circle>(&cell)) {
      circle_touch(*d);
    } else if (const auto* s = std::get_if<SquareCell>(&cell)) {
      detail::square_touches(s->center, s->half, probe, eps, touches);
    } else {
      detail::ellipse_touches(std::get<EllipseCell>(cell), probe, eps, touches);
    }
  }

  auto angular_gap = [](double a, double b) {
    const double d = std::abs(detail::wrap_angle(a - b));
    return std::min(d, kTwoPi - d);
  };
  auto covered = [&](double t) {
    for (const auto& p : out.parts) {
      if (p.measure >= kTwoPi) return true;
      const double rel = detail::wrap_angle(t - p.start + step);
      if (rel <= p.measure + 2.0 * step) return true;
    }
    return false;
  };
  std::vector<double> isolated_angles;
  for (const Point2 t : touches) {
    const double theta = detail::wrap_angle(std::atan2(t.y - probe.center.y, t.x - probe.center.x));
    if (!k.contains_banded(point_at(theta), eps) || covered(theta)) continue;
    bool seen = false;
    for (double a : isolated_angles) seen = seen || angular_gap(a, theta) <= step;
    if (!seen) isolated_angles.push_back(theta);
  }
  for (double a : isolated_angles) out.parts.push_back({a, 0.0, false});

  std::sort(out.parts.begin(), out.parts.end(),
            [](const ProbeComponent& a, const ProbeComponent& b) { return a.start < b.start; });
  out.components = out.parts.size();
  for (const auto& p : out.parts) {
    if (p.arc) {
      out.has_full_arc = true;
    } else {
      ++out.isolated;
    }
  }
  if (coincident) out.has_full_arc = true;
  return out;
}

/// Probes evaluated independently, in input order.
inline std::vector<ProbeResult> probe_all(const CompactSetK& k, std::span<const Circle> probes,
                                          std::size_t angular_resolution = 3600, unsigned threads = 1) {
  std::vector<ProbeResult> out(probes.size());
  auto work = [&](std::size_t offset, std::size_t stride) {
    for (std::size_t i = offset; i < probes.size(); i += stride)
      out[i] = probe_circle_intersection(k, probes[i], angular_resolution);
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

inline void write_probes_csv(std::ostream& os, std::span<const Circle> probes, std::span<const ProbeResult> results) {
  os << "cx,cy,r,components,full_arc\n";
  for (std::size_t i = 0; i < probes.size() && i < results.size(); ++i) {
    os << format_double(probes[i].center.x) << ',' << format_double(probes[i].center.y) << ','
       << format_double(probes[i].radius) << ',' << results[i].components << ','
       << (results[i].has_full_arc ? "true" : "false") << '\n';
  }
}

}  // namespace planeset

#endif  // PLANESET_PACKINGS_HPP
