#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "planeset/exactly_m.hpp"
#include "oracles.hpp"

using namespace planeset;

TEST(CurveIntersections, CountsCrossingsTangencyAndOverlap) {
  const auto c = generate_circle(1.0, 1024);
  const double band = c.tolerance().eps_geom(), merge = 3.0 * c.max_spacing();
  EXPECT_EQ(count_curve_intersections(c, Circle({1.0, 0.0}, 1.0), band, merge).events, 2u);
  EXPECT_EQ(count_curve_intersections(c, Circle({5.0, 0.0}, 1.0), band, merge).events, 0u);
  const auto tangent = count_curve_intersections(c, Circle({0.5, 0.0}, 0.5), band, merge);
  EXPECT_FALSE(tangent.full_arc);
  EXPECT_EQ(tangent.events, 1u);
  EXPECT_TRUE(count_curve_intersections(c, Circle({0.0, 0.0}, 1.0), band, merge).full_arc);
}

TEST(ExactlyM, ExactCircleTargetHasNoThreePointProbe) {
  const Circle target({0.3, -0.2}, 0.5);
  SearchOptions opt;
  opt.m = 3;
  opt.seed = 1;
  const auto r = exactly_m_search(target, opt);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.probes_used, opt.budget);
  // the same search does find one and two point probes
  opt.m = 1;
  const auto one = exactly_m_search(target, opt);
  ASSERT_TRUE(one.witness.has_value());
  EXPECT_EQ(intersection_count(circle_circle_intersect(target, *one.witness, ToleranceContext::for_scale(1.0))), 1);
  opt.m = 2;
  EXPECT_TRUE(exactly_m_search(target, opt).witness.has_value());
}

TEST(ExactlyM, EllipseHasThreePointProbeConfirmedAnalytically) {
  const auto ellipse = generate_ellipse(2.0, 1.0, 2048);
  SearchOptions opt;
  opt.m = 3;
  opt.seed = 5;
  const auto r = exactly_m_search(ellipse, opt);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LE(r.probes_used, opt.budget);
  EXPECT_EQ(oracle::ellipse_circle_points(2.0, 1.0, *r.witness, 1e-7), 3u);
}

TEST(ExactlyM, PackingHasNoThreePointProbeWithinBudget) {
  const CompactSetK k(greedy_circle_packing(Circle({0, 0}, 1.0), 0.05, 64, 42));
  SearchOptions opt;
  opt.m = 3;
  opt.seed = 9;
  const auto r = exactly_m_search(k, opt);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.probes_used, opt.budget);
  EXPECT_LT(r.unresolved_probes, opt.budget / 10);
}

TEST(ExactlyM, PackingOnePointProbesExistAndReverify) {
  const CompactSetK k(greedy_circle_packing(Circle({0, 0}, 1.0), 0.05, 64, 42));
  SearchOptions opt;
  opt.m = 1;
  opt.budget = 2000;
  opt.seed = 9;
  const auto r = exactly_m_search(k, opt);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(probe_circle_intersection(k, *r.witness).exactly(1));
}

TEST(ExactlyM, SearchIsDeterministicPerSeed) {
  const auto ellipse = generate_ellipse(2.0, 1.0, 1024);
  SearchOptions opt;
  opt.seed = 17;
  const auto a = exactly_m_search(ellipse, opt);
  const auto b = exactly_m_search(ellipse, opt);
  ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
  EXPECT_EQ(a.probes_used, b.probes_used);
  if (a.witness) {
    EXPECT_EQ(a.witness->center, b.witness->center);
    EXPECT_EQ(a.witness->radius, b.witness->radius);
  }
}

TEST(ExactlyM, RandomOnlyFamilyRarelyFindsTangency) {
  // transversal crossings of two closed curves come in pairs, so an odd
  // count needs a tangency that random probes essentially never hit
  const Circle target({0, 0}, 1.0);
  SearchOptions opt;
  opt.m = 1;
  opt.family = ProbeFamily::Random;
  opt.budget = 2000;
  EXPECT_FALSE(exactly_m_search(target, opt).witness.has_value());
}

TEST(ExactlyM, RejectsBadOptions) {
  SearchOptions opt;
  opt.m = 0;
  EXPECT_THROW(exactly_m_search(Circle({0, 0}, 1.0), opt), Error);
  opt.m = 3;
  opt.budget = 0;
  EXPECT_THROW(exactly_m_search(Circle({0, 0}, 1.0), opt), Error);
}
