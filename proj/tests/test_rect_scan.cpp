#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "planeset/rect_scan.hpp"
#include "oracles.hpp"

using namespace planeset;

namespace {

ScanOptions keep_all() {
  ScanOptions o;
  o.max_witnesses = 1u << 20;
  return o;
}

void expect_same_as_brute_force(const ScanReport& r, const oracle::BruteScan& b) {
  EXPECT_EQ(r.triples_examined, b.examined);
  EXPECT_EQ(r.satisfied_count, b.satisfied);
  EXPECT_EQ(r.violation_count, b.violations.size());
  ASSERT_EQ(r.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < r.violations.size(); ++i) {
    const auto& w = r.violations[i];
    const auto& t = b.violations[i];
    ASSERT_EQ(w.a, t.a) << i;
    ASSERT_EQ(w.b, t.b) << i;
    ASSERT_EQ(w.c, t.c) << i;
    ASSERT_EQ(w.fourth_distance, t.fourth_distance) << i;
  }
}

SampledCurve scaled_curve(const SampledCurve& c, double s) {
  std::vector<Point2> pts;
  for (auto p : c.points()) pts.push_back(s * p);
  return SampledCurve::from_points(pts, c.tangents());
}

std::string csv_of(const ScanReport& r) {
  std::ostringstream os;
  write_witness_csv(os, r.violations);
  return os.str();
}

}  // namespace

TEST(ScanConstraints, Validation) {
  ScanConstraints k;
  k.membership_tol = 0.01;
  k.eps_geom = 1e-9;
  EXPECT_NO_THROW(k.validate());
  auto both = k;
  both.max_aspect = 0.2;
  both.max_short_side = 0.1;
  EXPECT_THROW(both.validate(), Error);
  auto bad_aspect = k;
  bad_aspect.max_aspect = 1.5;
  EXPECT_THROW(bad_aspect.validate(), Error);
  auto bad_short = k;
  bad_short.diagonal = 1.0;
  bad_short.max_short_side = 1.0;
  EXPECT_THROW(bad_short.validate(), Error);
  auto bad_tol = k;
  bad_tol.membership_tol = 0.0;
  EXPECT_THROW(bad_tol.validate(), Error);
}

TEST(Scan, EmptySampleSetThrows) {
  const PointSet set({{0, 0}}, 1.0);
  ScanConstraints k;
  k.membership_tol = 1e-6;
  k.eps_geom = 1e-9;
  try {
    scan_rectangle_property(std::span<const Point2>(), set, k);
    FAIL() << "expected EmptySet";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptySet);
  }
}

TEST(Scan, CircleHasNoViolationsForAnySideBound) {
  const auto c = generate_circle(0.5, 512);
  for (int mode = 0; mode < 3; ++mode) {
    auto k = ScanConstraints::for_curve(c);
    k.diagonal = 1.0;
    if (mode == 1) k.max_short_side = 0.1;
    if (mode == 2) k.max_aspect = 0.05;
    const auto r = scan_rectangle_property(c, k);
    EXPECT_EQ(r.violation_count, 0u) << "mode " << mode;
    EXPECT_GT(r.satisfied_count, 0u) << "mode " << mode;
  }
}

TEST(Scan, CircleFreeDiagonalMatchesBruteForce) {
  const auto c = generate_circle(1.0, 96);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.5;
  const auto r = scan_rectangle_property(c, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_polyline(c.points(), c.points(), true, k));
  EXPECT_EQ(r.violation_count, 0u);
}

TEST(Scan, EllipseFreeDiagonalMatchesBruteForce) {
  const auto c = generate_ellipse(2.0, 1.0, 128);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.3;
  const auto r = scan_rectangle_property(c, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_polyline(c.points(), c.points(), true, k));
  EXPECT_GT(r.violation_count, 0u);
}

TEST(Scan, EllipseFixedDiagonalMatchesBruteForce) {
  const auto c = generate_ellipse(2.0, 1.0, 256);
  auto k = ScanConstraints::for_curve(c);
  k.diagonal = 3.0;
  k.max_short_side = 0.8;
  const auto r = scan_rectangle_property(c, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_polyline(c.points(), c.points(), true, k));
  EXPECT_GT(r.violation_count, 0u);
}

TEST(Scan, ReuleauxFixedDiagonalMatchesBruteForce) {
  const auto c = generate_reuleaux(3, 1.0, 192);
  auto k = ScanConstraints::for_curve(c);
  k.diagonal = 1.0;
  k.max_short_side = 0.15;
  const auto r = scan_rectangle_property(c, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_polyline(c.points(), c.points(), true, k));
  EXPECT_GT(r.violation_count, 0u);
}

TEST(Scan, UnconstrainedEllipseMatchesBruteForce) {
  const auto c = generate_ellipse(1.5, 1.0, 64);
  auto k = ScanConstraints::for_curve(c);
  const auto r = scan_rectangle_property(c, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_polyline(c.points(), c.points(), true, k));
}

TEST(Scan, OpenArcMatchesBruteForce) {
  // 0.9 degree spacing puts antipodal pairs on samples
  const auto pts = generate_arc(1.0, 0.0, 1.2 * std::numbers::pi, 241);
  ScanConstraints k;
  k.membership_tol = 2.0 * distance(pts[0], pts[1]);
  k.eps_geom = 2e-9;
  const PolylineSet set(pts, false, k.eps_geom);
  const auto r = scan_rectangle_property(std::span<const Point2>(pts), set, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_polyline(pts, pts, false, k));
  // a 216 degree arc has antipodal pairs, so rectangles leave the arc
  EXPECT_GT(r.violation_count, 0u);
}

TEST(Scan, PointSetsMatchBruteForce) {
  // lattice with a few holes: many exact right angles, some missing corners
  std::vector<Point2> pts;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 6; ++j)
      if ((i * 7 + j * 3) % 11 != 0) pts.push_back({0.5 * i, 0.25 * j});
  ScanConstraints k;
  k.membership_tol = 1e-9;
  k.eps_geom = 1e-9;
  for (int mode = 0; mode < 3; ++mode) {
    auto km = k;
    if (mode == 1) km.max_aspect = 0.5;
    if (mode == 2) {
      km.diagonal = std::hypot(1.0, 0.5);
      km.max_short_side = 0.6;
    }
    const PointSet set(pts, 0.3);
    const auto r = scan_rectangle_property(std::span<const Point2>(pts), set, km, keep_all());
    expect_same_as_brute_force(r, oracle::brute_scan_points(pts, km));
    EXPECT_GT(r.violation_count, 0u) << "mode " << mode;
  }
}

TEST(Scan, RandomPointSetMatchesBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> u(0, 12);
  std::vector<Point2> pts;
  for (int i = 0; i < 120; ++i) pts.push_back({0.1 * u(rng), 0.1 * u(rng)});
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  ScanConstraints k;
  k.membership_tol = 1e-9;
  k.eps_geom = 1e-9;
  k.angle_tol = 1e-12;
  const PointSet set(pts, 0.2);
  const auto r = scan_rectangle_property(std::span<const Point2>(pts), set, k, keep_all());
  expect_same_as_brute_force(r, oracle::brute_scan_points(pts, k));
}

TEST(Scan, NonRightTriangleIsVacuous) {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0.3, 0.8}};
  ScanConstraints k;
  k.membership_tol = 1e-6;
  k.eps_geom = 1e-9;
  const PointSet set(pts, 0.5);
  const auto r = scan_rectangle_property(std::span<const Point2>(pts), set, k);
  EXPECT_EQ(r.triples_examined, 0u);
  EXPECT_EQ(r.violation_count, 0u);
}

TEST(Scan, ProperArcOfSemicircleIsVacuous) {
  for (double span_deg : {120.0, 179.0}) {
    const auto pts = generate_arc(1.0, 0.3, span_deg * std::numbers::pi / 180.0, 512);
    ScanConstraints k;
    k.membership_tol = 2.0 * distance(pts[0], pts[1]);
    k.eps_geom = 2e-9;
    const PolylineSet set(pts, false, k.eps_geom);
    const auto r = scan_rectangle_property(std::span<const Point2>(pts), set, k);
    EXPECT_EQ(r.violation_count, 0u) << span_deg;
  }
}

TEST(Scan, WitnessesReverifyIndependently) {
  const auto c = generate_ellipse(2.0, 1.0, 512);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.2;
  const auto r = scan_rectangle_property(c, k);
  ASSERT_GT(r.violations.size(), 0u);
  for (const auto& w : r.violations) {
    for (Point2 p : {w.a, w.b, w.c}) EXPECT_LE(oracle::polyline_distance(c.points(), true, p), 1e-12);
    EXPECT_LE(right_angle_deviation(w.a, w.b, w.c), k.angle_tol);
    EXPECT_EQ(w.fourth, w.a + w.c - w.b);
    EXPECT_DOUBLE_EQ(w.fourth_distance, oracle::polyline_distance(c.points(), true, w.fourth));
    EXPECT_GT(w.fourth_distance, k.membership_tol);
    EXPECT_LE(w.metrics.aspect, 0.2);
  }
  EXPECT_TRUE(std::is_sorted(r.violations.begin(), r.violations.end(), witness_before));
}

TEST(Scan, DeterministicAndParallelEqualsSerial) {
  const auto c = generate_ellipse(2.0, 1.0, 256);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.25;
  ScanOptions serial;
  serial.max_witnesses = 50;
  ScanOptions parallel = serial;
  parallel.threads = 3;
  const auto a = scan_rectangle_property(c, k, serial);
  const auto b = scan_rectangle_property(c, k, serial);
  const auto p = scan_rectangle_property(c, k, parallel);
  EXPECT_EQ(csv_of(a), csv_of(b));
  EXPECT_EQ(csv_of(a), csv_of(p));
  EXPECT_EQ(a.violation_count, p.violation_count);
  EXPECT_EQ(a.satisfied_count, p.satisfied_count);
  EXPECT_EQ(a.triples_examined, p.triples_examined);
}

TEST(Scan, TopWitnessesArePrefixOfFullList) {
  const auto c = generate_ellipse(2.0, 1.0, 128);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.3;
  const auto full = scan_rectangle_property(c, k, keep_all());
  ScanOptions few;
  few.max_witnesses = 5;
  const auto top = scan_rectangle_property(c, k, few);
  ASSERT_GT(full.violations.size(), 5u);
  ASSERT_EQ(top.violations.size(), 5u);
  EXPECT_TRUE(top.witnesses_truncated);
  EXPECT_FALSE(full.witnesses_truncated);
  EXPECT_EQ(top.violation_count, full.violation_count);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(top.violations[i].a, full.violations[i].a);
    EXPECT_EQ(top.violations[i].fourth_distance, full.violations[i].fourth_distance);
  }
}

TEST(Scan, EnlargingToleranceNeverAddsViolations) {
  const auto c = generate_reuleaux(3, 1.0, 1024);
  auto k = ScanConstraints::for_curve(c);
  k.diagonal = 1.0;
  k.max_short_side = 0.3;
  std::uint64_t prev = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t examined = 0;
  for (double f : {1.0, 2.0, 5.0, 10.0, 30.0}) {
    auto kf = k;
    kf.membership_tol = f * k.membership_tol;
    const auto r = scan_rectangle_property(c, kf);
    EXPECT_LE(r.violation_count, prev) << f;
    if (examined) {
      EXPECT_EQ(r.triples_examined, examined);
    }
    examined = r.triples_examined;
    prev = r.violation_count;
  }
}

TEST(Scan, UniformScalingMapsWitnesses) {
  const auto c = generate_ellipse(2.0, 1.0, 160);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.3;
  const auto base = scan_rectangle_property(c, k, keep_all());
  for (double s : {4.0, 3.7, 0.013}) {
    const auto cs = scaled_curve(c, s);
    const auto r = scan_rectangle_property(cs, k.scaled(s), keep_all());
    ASSERT_EQ(r.violation_count, base.violation_count) << s;
    ASSERT_EQ(r.triples_examined, base.triples_examined) << s;
    // compare as point sets: sort both by the scaled coordinates
    auto key = [](const RectangleWitness& w) { return std::make_tuple(w.a.x, w.a.y, w.b.x, w.b.y, w.c.x, w.c.y); };
    auto sorted = [&](std::vector<RectangleWitness> v) {
      std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
      return v;
    };
    std::vector<RectangleWitness> expect = base.violations;
    for (auto& w : expect) {
      w.a = s * w.a;
      w.b = s * w.b;
      w.c = s * w.c;
      w.fourth_distance *= s;
    }
    const auto e = sorted(expect);
    const auto g = sorted(r.violations);
    const double tol = 1e-9 * s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      ASSERT_LE(distance(e[i].a, g[i].a), tol);
      ASSERT_LE(distance(e[i].b, g[i].b), tol);
      ASSERT_LE(distance(e[i].c, g[i].c), tol);
      ASSERT_NEAR(e[i].fourth_distance, g[i].fourth_distance, tol);
    }
  }
}

TEST(Scan, BudgetStopsAndFlags) {
  const auto c = generate_ellipse(2.0, 1.0, 128);
  auto k = ScanConstraints::for_curve(c);
  k.max_aspect = 0.3;
  ScanOptions o;
  o.budget = 10;
  o.threads = 4;  // ignored under a budget
  const auto r = scan_rectangle_property(c, k, o);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.triples_examined, 10u);
  const auto full = scan_rectangle_property(c, k);
  o.budget = full.triples_examined;
  const auto exact = scan_rectangle_property(c, k, o);
  EXPECT_FALSE(exact.budget_exhausted);
  EXPECT_EQ(exact.violation_count, full.violation_count);
}

TEST(InfinitesimalCondition, CircleHoldsReuleauxAndEllipseFail) {
  const auto circle = generate_circle(0.5, 512);
  EXPECT_TRUE(verify_infinitesimal_condition(circle, 1.0, SideBound::aspect(0.1)).holds);
  EXPECT_TRUE(verify_infinitesimal_condition(circle, 1.0, SideBound::short_side(0.05)).holds);

  const auto reuleaux = generate_reuleaux(3, 1.0, 1024);
  const auto rr = verify_infinitesimal_condition(reuleaux, 1.0, SideBound::short_side(0.15));
  EXPECT_FALSE(rr.holds);
  ASSERT_FALSE(rr.witnesses.empty());
  EXPECT_EQ(rr.witnesses.size(), rr.report.violations.size());

  const auto ellipse = generate_ellipse(2.0, 1.0, 512);
  EXPECT_FALSE(verify_infinitesimal_condition(ellipse, 3.0, SideBound::short_side(0.5)).holds);
}

TEST(WitnessCsv, HeaderAndRows) {
  const auto c = generate_reuleaux(3, 1.0, 512);
  auto k = ScanConstraints::for_curve(c);
  k.diagonal = 1.0;
  k.max_short_side = 0.15;
  ScanOptions o;
  o.max_witnesses = 3;
  const auto csv = csv_of(scan_rectangle_property(c, k, o));
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "ax,ay,bx,by,cx,cy,sx,sy,fourth_distance,diagonal,short,long,aspect");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12);
  }
  EXPECT_EQ(rows, 3);
}
