#ifndef PLANESET_RECT_SCAN_HPP
#define PLANESET_RECT_SCAN_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

#include "planeset/curves.hpp"
#include "planeset/format.hpp"
#include "planeset/geom.hpp"
#include "planeset/membership.hpp"

namespace planeset {

/// Which rectangles a scan considers, and how membership is judged.
struct ScanConstraints {
  std::optional<double> diagonal;        // exact diagonal length d, +- eps_geom
  std::optional<double> max_aspect;      // short/long <= value, value in (0, 1]
  std::optional<double> max_short_side;  // short side <= value
  double membership_tol = 0.0;
  double angle_tol = 1e-9;
  double eps_geom = 0.0;  // diagonal band and minimum corner separation

  /// membership_tol = 2 * max sample spacing, eps_geom from the curve scale.
  static ScanConstraints for_curve(const SampledCurve& c) {
    ScanConstraints k;
    k.membership_tol = 2.0 * c.max_spacing();
    k.eps_geom = c.tolerance().eps_geom();
    return k;
  }

  void validate() const {
    auto bad = [](const char* msg) { throw Error(Errc::BadParameter, msg); };
    if (max_aspect && max_short_side) bad("set at most one of max_aspect and max_short_side");
    if (max_aspect && !(*max_aspect > 0 && *max_aspect <= 1)) bad("max_aspect must lie in (0, 1]");
    if (max_short_side && !(*max_short_side > 0)) bad("max_short_side must be positive");
    if (diagonal && !(*diagonal > 0)) bad("diagonal must be positive");
    if (diagonal && max_short_side && !(*max_short_side < *diagonal)) bad("max_short_side must be below the diagonal");
    if (!(membership_tol > 0)) bad("membership_tol must be positive");
    if (!(angle_tol > 0)) bad("angle_tol must be positive");
    if (!(eps_geom > 0)) bad("eps_geom must be positive");
  }

  /// Every length scaled by factor (angles unchanged).
  ScanConstraints scaled(double factor) const {
    ScanConstraints k = *this;
    if (k.diagonal) *k.diagonal *= factor;
    if (k.max_short_side) *k.max_short_side *= factor;
    k.membership_tol *= factor;
    k.eps_geom *= factor;
    return k;
  }

  // Radius around a and c that must contain the corner b, if bounded.
  std::optional<double> corner_window(double diag) const {
    if (max_short_side) return *max_short_side;
    if (max_aspect) {
      const double e = *max_aspect;
      return diag * e / std::sqrt(1.0 + e * e) * (1.0 + 1e-12);
    }
    return std::nullopt;
  }

  bool admits(const RectangleMetrics& m) const {
    if (diagonal && std::abs(m.diagonal - *diagonal) > eps_geom) return false;
    if (max_aspect && m.aspect > *max_aspect) return false;
    if (max_short_side && m.short_side > *max_short_side) return false;
    return true;
  }
};

/// Three corners on the set (right angle at b) and the completed fourth.
struct RectangleWitness {
  Point2 a, b, c;
  Point2 fourth;
  double fourth_distance = 0.0;
  RectangleMetrics metrics;
};

/// Report order: larger fourth_distance first, then lexicographic corners.
inline bool witness_before(const RectangleWitness& u, const RectangleWitness& v) {
  if (u.fourth_distance != v.fourth_distance) return u.fourth_distance > v.fourth_distance;
  const double ku[6] = {u.a.x, u.a.y, u.b.x, u.b.y, u.c.x, u.c.y};
  const double kv[6] = {v.a.x, v.a.y, v.b.x, v.b.y, v.c.x, v.c.y};
  return std::lexicographical_compare(ku, ku + 6, kv, kv + 6);
}

struct ScanOptions {
  std::optional<std::uint64_t> budget;  // cap on examined triples
  std::size_t max_witnesses = 1000;     // violations kept in the report
  unsigned threads = 1;                 // ignored when a budget is set
};

struct ScanReport {
  std::vector<RectangleWitness> violations;  // best max_witnesses, report order
  std::uint64_t violation_count = 0;
  std::uint64_t satisfied_count = 0;
  std::uint64_t triples_examined = 0;
  std::size_t sample_count = 0;
  bool budget_exhausted = false;
  bool witnesses_truncated = false;
  double runtime_seconds = 0.0;
};

namespace detail {

class WitnessHeap {
 public:
  explicit WitnessHeap(std::size_t cap) : cap_(cap) {}

  bool full() const { return heap_.size() >= cap_; }
  std::size_t capacity() const { return cap_; }
  const RectangleWitness& worst() const { return heap_.front(); }

  void offer(const RectangleWitness& w) {
    if (cap_ == 0) return;
    if (heap_.size() < cap_) {
      heap_.push_back(w);
      std::push_heap(heap_.begin(), heap_.end(), witness_before);
    } else if (witness_before(w, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), witness_before);
      heap_.back() = w;
      std::push_heap(heap_.begin(), heap_.end(), witness_before);
    }
  }

  std::vector<RectangleWitness> take() { return std::move(heap_); }

 private:
  std::size_t cap_;
  std::vector<RectangleWitness> heap_;
};

struct ScanPartial {
  explicit ScanPartial(std::size_t cap) : heap(cap) {}
  WitnessHeap heap;
  std::uint64_t violations = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t examined = 0;
  bool exhausted = false;
};

// Scans samples i with i % stride == offset.
template <MembershipSet M>
void scan_range(std::span<const Point2> samples, const M& set, const ScanConstraints& k,
                std::optional<std::uint64_t> budget, std::size_t offset, std::size_t stride, ScanPartial& out) {
  std::vector<Point2> diag_ends;
  std::vector<Point2> corners;
  const std::size_t n = samples.size();

  auto visit_pair = [&](Point2 a, Point2 c) -> bool {
    const double diag = distance(a, c);
    if (diag <= k.eps_geom) return true;
    if (k.diagonal && std::abs(diag - *k.diagonal) > k.eps_geom) return true;
    corners.clear();
    const auto w = k.corner_window(diag);
    if (w) {
      const Circle windows[2] = {Circle(a, *w), Circle(c, *w)};
      set.right_angle_candidates(a, c, windows, corners);
    } else {
      set.right_angle_candidates(a, c, {}, corners);
    }
    for (const Point2 b : corners) {
      if (distance(a, b) <= k.eps_geom || distance(b, c) <= k.eps_geom) continue;
      if (right_angle_deviation(a, b, c) > k.angle_tol) continue;
      const RectangleMetrics m = metrics_from_corner(a, b, c);
      if (!k.admits(m)) continue;
      if (budget && out.examined >= *budget) {
        out.exhausted = true;
        return false;
      }
      ++out.examined;
      const Point2 s = a + c - b;
      if (set.distance_within(s, k.membership_tol)) {
        ++out.satisfied;
        continue;
      }
      ++out.violations;
      if (out.heap.capacity() == 0) continue;
      double dist;
      if (!out.heap.full()) {
        dist = set.distance(s);
      } else {
        const auto near = set.distance_within(s, out.heap.worst().fourth_distance);
        if (near && *near < out.heap.worst().fourth_distance) continue;
        dist = near ? *near : set.distance(s);
      }
      out.heap.offer(RectangleWitness{a, b, c, s, dist, m});
    }
    return true;
  };

  for (std::size_t i = offset; i < n; i += stride) {
    const Point2 a = samples[i];
    if (k.diagonal) {
      diag_ends.clear();
      set.circle_hits(Circle(a, *k.diagonal), k.eps_geom, {}, diag_ends);
      for (const Point2 c : diag_ends)
        if (!visit_pair(a, c)) return;
    } else {
      for (std::size_t j = i + 1; j < n; ++j)
        if (!visit_pair(a, samples[j])) return;
    }
  }
}

}  // namespace detail

/// Searches for rectangles with three corners on the set whose fourth corner
/// is farther than membership_tol from it.
///
/// Corner a ranges over the samples. With a fixed diagonal d, the opposite
/// corner c ranges over every point of the set at distance d from a;
/// otherwise c ranges over the later samples. Corner b ranges over the
/// points of the set on the circle with diameter a-c, so the angle at b is
/// right by construction. Every reported corner triple lies on the set, and
/// re-checking any witness reproduces it.
template <MembershipSet M>
ScanReport scan_rectangle_property(std::span<const Point2> samples, const M& set, const ScanConstraints& constraints,
                                   const ScanOptions& options = {}) {
  if (samples.empty()) throw Error(Errc::EmptySet, "no sample points to scan");
  constraints.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const unsigned threads = options.budget ? 1u : std::max(1u, options.threads);
  std::vector<detail::ScanPartial> parts;
  parts.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) parts.emplace_back(options.max_witnesses);
  if (threads == 1) {
    detail::scan_range(samples, set, constraints, options.budget, 0, 1, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] { detail::scan_range(samples, set, constraints, std::nullopt, t, threads, parts[t]); });
    }
    for (auto& th : pool) th.join();
  }

  ScanReport report;
  report.sample_count = samples.size();
  for (auto& p : parts) {
    report.violation_count += p.violations;
    report.satisfied_count += p.satisfied;
    report.triples_examined += p.examined;
    report.budget_exhausted = report.budget_exhausted || p.exhausted;
    auto kept = p.heap.take();
    report.violations.insert(report.violations.end(), kept.begin(), kept.end());
  }
  std::sort(report.violations.begin(), report.violations.end(), witness_before);
  if (report.violations.size() > options.max_witnesses) report.violations.resize(options.max_witnesses);
  report.witnesses_truncated = report.violation_count > report.violations.size();
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

/// Scan of a sampled curve against its own polyline.
inline ScanReport scan_rectangle_property(const SampledCurve& curve, const ScanConstraints& constraints,
                                          const ScanOptions& options = {}) {
  const auto set = PolylineSet::from_curve(curve);
  return scan_rectangle_property(std::span<const Point2>(curve.points()), set, constraints, options);
}

/// Bound on the small side of the rectangle: a ratio short/long or a length.
struct SideBound {
  enum class Kind { Aspect, ShortSide };
  Kind kind = Kind::Aspect;
  double value = 0.0;

  static SideBound aspect(double ratio) { return {Kind::Aspect, ratio}; }
  static SideBound short_side(double length) { return {Kind::ShortSide, length}; }
};

struct InfinitesimalCheck {
  bool holds = false;
  std::vector<RectangleWitness> witnesses;
  ScanReport report;
};

/// Rectangle condition restricted to diagonal d and a small side bound.
inline InfinitesimalCheck verify_infinitesimal_condition(const SampledCurve& curve, double d, SideBound eps,
                                                         std::optional<ToleranceContext> tol = {},
                                                         const ScanOptions& options = {}) {
  if (!(d > 0)) throw Error(Errc::BadParameter, "diagonal must be positive");
  ScanConstraints k = ScanConstraints::for_curve(curve);
  if (tol) {
    k.eps_geom = tol->eps_geom();
    k.angle_tol = tol->eps_angle();
  }
  k.diagonal = d;
  if (eps.kind == SideBound::Kind::Aspect) {
    k.max_aspect = eps.value;
  } else {
    k.max_short_side = eps.value;
  }
  InfinitesimalCheck out;
  out.report = scan_rectangle_property(curve, k, options);
  out.holds = out.report.violation_count == 0;
  out.witnesses = out.report.violations;
  return out;
}

inline void write_witness_csv(std::ostream& os, std::span<const RectangleWitness> witnesses) {
  os << "ax,ay,bx,by,cx,cy,sx,sy,fourth_distance,diagonal,short,long,aspect\n";
  for (const auto& w : witnesses) {
    const double row[13] = {w.a.x, w.a.y, w.b.x, w.b.y, w.c.x, w.c.y, w.fourth.x, w.fourth.y,
                            w.fourth_distance, w.metrics.diagonal, w.metrics.short_side, w.metrics.long_side,
                            w.metrics.aspect};
    for (int i = 0; i < 13; ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

}  // namespace planeset

#endif  // PLANESET_RECT_SCAN_HPP
