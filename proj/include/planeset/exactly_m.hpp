#ifndef PLANESET_EXACTLY_M_HPP
#define PLANESET_EXACTLY_M_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "planeset/curves.hpp"
#include "planeset/geom.hpp"
#include "planeset/packings.hpp"
#include "planeset/random.hpp"

namespace planeset {

/// Intersection of a probe circle with a sampled curve's polyline.
struct CurveProbeCount {
  std::size_t events = 0;  // merged intersection clusters
  bool full_arc = false;   // the probe runs along the curve
};

/// Counts crossing and touching points of the probe with the closed
/// polyline. Events closer than merge_len of arclength form one cluster,
/// so a sampled tangency counts once.
inline CurveProbeCount count_curve_intersections(const SampledCurve& c, const Circle& probe, double band,
                                                 double merge_len) {
  const std::size_t n = c.size();
  const auto& pts = c.points();
  const auto& s = c.params();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = distance(pts[i], probe.center) - probe.radius;

  CurveProbeCount out;
  std::vector<double> at;
  std::size_t run = 0, longest = 0;
  for (std::size_t i = 0; i < 2 * n && run < n; ++i) {
    if (std::abs(g[i % n]) <= band) {
      longest = std::max(longest, ++run);
    } else {
      run = 0;
    }
  }
  if (longest >= 4) {
    out.full_arc = true;
    return out;
  }

  std::vector<Point2> hits;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(g[i]) <= band) at.push_back(s[i]);
    const std::size_t j = (i + 1) % n;
    // the segment meets the circle only if its endpoints straddle or graze it
    const double seg = distance(pts[i], pts[j]);
    if (std::min(g[i], g[j]) > band + seg || std::max(g[i], g[j]) < -band - seg) continue;
    hits.clear();
    segment_circle_crossings(pts[i], pts[j], probe, band, hits);
    for (const Point2 h : hits) at.push_back(s[i] + distance(pts[i], h));
  }
  if (at.empty()) return out;
  std::sort(at.begin(), at.end());
  const double len = c.length();
  std::size_t breaks = 0;
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double gap = i + 1 < at.size() ? at[i + 1] - at[i] : at[0] + len - at[i];
    if (gap > merge_len) ++breaks;
  }
  if (breaks == 0) {
    out.full_arc = true;  // clusters chain around the whole curve
  } else {
    out.events = breaks;
  }
  return out;
}

enum class ProbeFamily { Random, Structured, Mixed };

struct SearchOptions {
  std::size_t m = 3;
  ProbeFamily family = ProbeFamily::Mixed;
  std::size_t budget = 10000;  // probes drawn
  std::uint64_t seed = 0;
  std::size_t angular_resolution = 3600;

  void validate() const {
    if (m < 1) throw Error(Errc::BadParameter, "m must be at least 1");
    if (budget < 1) throw Error(Errc::BadParameter, "budget must be at least 1");
  }
};

struct SearchResult {
  std::optional<Circle> witness;
  std::size_t probes_used = 0;
  std::size_t unresolved_probes = 0;  // probes skipped as below resolution
};

namespace detail {

inline bool structured_turn(ProbeFamily f, std::size_t i) {
  return f == ProbeFamily::Structured || (f == ProbeFamily::Mixed && i % 2 == 1);
}

inline Point2 random_direction(Rng& rng) { return unit_at(rng.uniform(0.0, kTwoPi)); }

// A circle touching one boundary piece of K by construction.
inline Circle structured_probe(const CompactSetK& k, Rng& rng) {
  const double size = outer_size(k.outer());
  const std::size_t pick = rng.index(k.cells().size() + 1);
  if (pick == k.cells().size()) {
    const Point2 c = outer_center(k.outer());
    if (std::holds_alternative<SquareDomain>(k.outer())) return Circle(c, size);
    const double rho = rng.uniform(0.05, 1.0) * size;
    return Circle(c + (size - rho) * random_direction(rng), rho);
  }
  const Cell& cell = k.cells()[pick];
  const int variant = static_cast<int>(rng.index(3));
  if (const auto* d = std::get_if<Circle>(&cell)) {
    const Point2 u = random_direction(rng);
    if (variant == 0) {  // inside the hole, touching its boundary
      const double rho = rng.uniform(0.05, 0.999) * d->radius;
      return Circle(d->center + (d->radius - rho) * u, rho);
    }
    if (variant == 1) {  // outside, touching it
      const double rho = rng.uniform(0.05, 1.0) * size;
      return Circle(d->center + (d->radius + rho) * u, rho);
    }
    const double rho = d->radius * rng.uniform(1.001, 3.0);  // around it, touching from outside
    return Circle(d->center + (rho - d->radius) * u, rho);
  }
  if (const auto* s = std::get_if<SquareCell>(&cell)) {
    if (variant == 0) return Circle(s->center, s->half);  // inscribed: four sides
    if (variant == 1) {                                   // two adjacent sides
      const double rho = rng.uniform(0.05, 0.999) * s->half;
      const Point2 corner{rng.uniform() < 0.5 ? -1.0 : 1.0, rng.uniform() < 0.5 ? -1.0 : 1.0};
      return Circle(s->center + (s->half - rho) * corner, rho);
    }
    const double t = rng.uniform(-0.5, 0.5) * s->half;  // two opposite sides
    const Point2 shift = rng.uniform() < 0.5 ? Point2{t, 0.0} : Point2{0.0, t};
    return Circle(s->center + shift, s->half);
  }
  const auto& e = std::get<EllipseCell>(cell);
  return Circle(e.center, std::min(e.a, e.b));  // inscribed: touches at the minor vertices
}

inline Circle random_probe(Point2 lo, Point2 hi, double scale, Rng& rng) {
  const Point2 c{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
  return Circle(c, rng.uniform(0.02, 1.2) * scale);
}

}  // namespace detail

/// First probe meeting K in exactly m isolated points. Probes that hit
/// ResolutionTooLow are counted and skipped.
inline SearchResult exactly_m_search(const CompactSetK& k, const SearchOptions& opt) {
  opt.validate();
  Rng rng(opt.seed);
  const Point2 c = outer_center(k.outer());
  const double size = outer_size(k.outer());
  const Point2 lo{c.x - 1.2 * size, c.y - 1.2 * size}, hi{c.x + 1.2 * size, c.y + 1.2 * size};
  SearchResult out;
  for (std::size_t i = 0; i < opt.budget; ++i) {
    const Circle probe = detail::structured_turn(opt.family, i) ? detail::structured_probe(k, rng)
                                                                : detail::random_probe(lo, hi, size, rng);
    ++out.probes_used;
    try {
      if (probe_circle_intersection(k, probe, opt.angular_resolution).exactly(opt.m)) {
        out.witness = probe;
        return out;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::ResolutionTooLow) throw;
      ++out.unresolved_probes;
    }
  }
  return out;
}

/// Curve target: structured probes are tangent at a vertex x with centre
/// x + rho * inner_normal(x). Intersection events within 3 sample spacings
/// of arclength are merged.
inline SearchResult exactly_m_search(const SampledCurve& curve, const SearchOptions& opt) {
  opt.validate();
  Rng rng(opt.seed);
  const double scale = curve.scale();
  const auto [blo, bhi] = detail::bounding_box(curve.points());
  const Point2 lo{blo.x - 0.5 * scale, blo.y - 0.5 * scale}, hi{bhi.x + 0.5 * scale, bhi.y + 0.5 * scale};
  const double band = curve.tolerance().eps_geom();
  const double merge = 3.0 * curve.max_spacing();
  SearchResult out;
  for (std::size_t i = 0; i < opt.budget; ++i) {
    Circle probe;
    if (detail::structured_turn(opt.family, i)) {
      const std::size_t v = rng.index(curve.size());
      const double rho = rng.uniform(0.05, 2.0) * scale;
      probe = Circle(curve[v] + rho * curve.inner_normals()[v], rho);
    } else {
      probe = detail::random_probe(lo, hi, scale, rng);
    }
    ++out.probes_used;
    const auto count = count_curve_intersections(curve, probe, band, merge);
    if (!count.full_arc && count.events == opt.m) {
      out.witness = probe;
      return out;
    }
  }
  return out;
}

/// Exact circle target: each probe is classified by circle_circle_intersect.
inline SearchResult exactly_m_search(const Circle& target, const SearchOptions& opt) {
  opt.validate();
  Rng rng(opt.seed);
  const double r = target.radius;
  const ToleranceContext tol = ToleranceContext::for_scale(2.0 * r);
  const Point2 lo{target.center.x - 1.5 * r, target.center.y - 1.5 * r};
  const Point2 hi{target.center.x + 1.5 * r, target.center.y + 1.5 * r};
  SearchResult out;
  for (std::size_t i = 0; i < opt.budget; ++i) {
    Circle probe;
    if (detail::structured_turn(opt.family, i)) {
      const Point2 u = detail::random_direction(rng);
      const double rho = rng.uniform(0.05, 2.0) * 2.0 * r;
      probe = Circle(target.center + (r - rho) * u, rho);
    } else {
      probe = detail::random_probe(lo, hi, 2.0 * r, rng);
    }
    ++out.probes_used;
    const auto count = intersection_count(circle_circle_intersect(target, probe, tol));
    if (count && static_cast<std::size_t>(*count) == opt.m) {
      out.witness = probe;
      return out;
    }
  }
  return out;
}

}  // namespace planeset

#endif  // PLANESET_EXACTLY_M_HPP
