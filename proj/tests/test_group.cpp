#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "morrey_lab/group.hpp"

using namespace morrey;

namespace {

std::vector<GroupDescriptor> groups() {
  return {GroupDescriptor::euclidean(1), GroupDescriptor::euclidean(2), GroupDescriptor::euclidean(3),
          GroupDescriptor::heisenberg(), GroupDescriptor::euclidean(2, GaugeKind::anisotropic)};
}

Point random_point(const GroupDescriptor& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  Point x(g.dimension);
  for (std::size_t i = 0; i < g.dimension; ++i) x[i] = d(rng);
  return x;
}

double max_abs_diff(const Point& a, const Point& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Dilate, Examples) {
  const auto e2 = GroupDescriptor::euclidean(2);
  EXPECT_EQ(dilate(e2, 2.0, Point{1, 1}), (Point{2, 2}));
  EXPECT_EQ(dilate(GroupDescriptor::heisenberg(), 3.0, Point{1, 0, 1}), (Point{3, 0, 9}));
  const Point x{0.3, -1.7};
  EXPECT_EQ(dilate(e2, 1.0, x), x);
}

TEST(Dilate, Errors) {
  const auto e2 = GroupDescriptor::euclidean(2);
  EXPECT_THROW(dilate(e2, 0.0, Point{1, 1}), DomainError);
  EXPECT_THROW(dilate(e2, -1.0, Point{1, 1}), DomainError);
  EXPECT_THROW(dilate(e2, 2.0, Point{1, 1, 1}), ShapeError);
}

TEST(Law, Examples) {
  const auto e2 = GroupDescriptor::euclidean(2);
  EXPECT_EQ(mul(e2, Point{1, 2}, Point{3, 4}), (Point{4, 6}));
  EXPECT_EQ(inv(e2, Point{1, -2}), (Point{-1, 2}));
  EXPECT_EQ(mul(GroupDescriptor::heisenberg(), Point{1, 0, 0}, Point{0, 1, 0}), (Point{1, 1, 0.5}));
  EXPECT_THROW(mul(e2, Point{1, 2}, Point{1, 2, 3}), ShapeError);
  EXPECT_THROW(inv(e2, Point{1}), ShapeError);
}

TEST(Law, AxiomsOnRandomSamples) {
  std::mt19937_64 rng(11);
  for (const auto& g : groups()) {
    const Point e = identity(g);
    for (int k = 0; k < 1000; ++k) {
      const Point x = random_point(g, rng), y = random_point(g, rng), z = random_point(g, rng);
      const double t = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
      ASSERT_LE(max_abs_diff(mul(g, mul(g, x, y), z), mul(g, x, mul(g, y, z))), 1e-12) << g.name();
      ASSERT_LE(max_abs_diff(mul(g, x, inv(g, x)), e), 1e-12);
      ASSERT_LE(max_abs_diff(mul(g, inv(g, x), x), e), 1e-12);
      ASSERT_LE(max_abs_diff(dilate(g, t, mul(g, x, y)), mul(g, dilate(g, t, x), dilate(g, t, y))), 1e-11);
    }
  }
}

TEST(Gauge, Examples) {
  EXPECT_EQ(gauge(GroupDescriptor::euclidean(2), Point{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(gauge(GroupDescriptor::euclidean(2), Point{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(gauge(GroupDescriptor::heisenberg(), Point{0, 0, 1}), 2.0);
  EXPECT_EQ(gauge(GroupDescriptor::heisenberg(), Point{0, 0, 0}), 0.0);
}

TEST(Gauge, HomogeneitySymmetryPositivity) {
  std::mt19937_64 rng(12);
  for (const auto& g : groups()) {
    for (int k = 0; k < 1000; ++k) {
      const Point x = random_point(g, rng);
      const double t = std::exp(std::uniform_real_distribution<double>(-3, 3)(rng));
      const double n = gauge(g, x);
      ASSERT_GT(n, 0.0);
      ASSERT_NEAR(gauge(g, dilate(g, t, x)) / (t * n), 1.0, 1e-12) << g.name();
      ASSERT_NEAR(gauge(g, inv(g, x)) / n, 1.0, 1e-12);
    }
  }
}

TEST(Gauge, DistanceIsLeftInvariant) {
  std::mt19937_64 rng(13);
  const auto g = GroupDescriptor::heisenberg();
  for (int k = 0; k < 200; ++k) {
    const Point c = random_point(g, rng), y = random_point(g, rng), z = random_point(g, rng);
    EXPECT_NEAR(distance(g, c, y), gauge(g, mul(g, inv(g, c), y)), 1e-12);
    EXPECT_NEAR(distance(g, mul(g, z, c), mul(g, z, y)), distance(g, c, y), 1e-10);
  }
}

TEST(QuasiConstant, ShippedGaugesAreNorms) {
  EXPECT_LE(estimate_quasi_constant(GroupDescriptor::euclidean(2), 2000, 1), 1.0 + 1e-12);
  EXPECT_LE(estimate_quasi_constant(GroupDescriptor::euclidean(3), 2000, 2), 1.0 + 1e-12);
  EXPECT_LE(estimate_quasi_constant(GroupDescriptor::heisenberg(), 2000, 3), 1.0 + 1e-9);
  EXPECT_GE(estimate_quasi_constant(GroupDescriptor::heisenberg(), 2000, 3), 0.5);
  EXPECT_THROW(estimate_quasi_constant(GroupDescriptor::heisenberg(), 99, 3), DomainError);
}

TEST(QuasiConstant, DegenerateIdenticalPoints) {
  const auto g = GroupDescriptor::euclidean(2);
  const std::vector<std::pair<Point, Point>> pairs(5, {Point{0, 0}, Point{0, 0}});
  EXPECT_EQ(estimate_quasi_constant(g, pairs), 0.5);
}

TEST(BallVolume, Examples) {
  const QuadratureSpec spec;
  EXPECT_NEAR(ball_volume(GroupDescriptor::euclidean(2), 1.0, spec), M_PI, 0.01 * M_PI);
  EXPECT_NEAR(ball_volume(GroupDescriptor::euclidean(1), 3.0, spec), 6.0, 1e-12);
  const auto h = GroupDescriptor::heisenberg();
  EXPECT_NEAR(ball_volume(h, 2.0, spec) / ball_volume(h, 1.0, spec), 16.0, 0.02 * 16.0);
  EXPECT_THROW(ball_volume(h, 0.0, spec), DomainError);
}

TEST(BallVolume, ScalingAndRefinement) {
  const QuadratureSpec spec;
  for (const auto& g : groups()) {
    const double v1 = ball_volume(g, 1.0, spec);
    const double v1r = ball_volume(g, 1.0, spec.refined());
    for (double R : {0.5, 2.0, 4.0}) {
      EXPECT_NEAR(ball_volume(g, R, spec) / v1 / std::pow(R, g.Q), 1.0, 0.02) << g.name() << " R=" << R;
      EXPECT_NEAR(ball_volume(g, R, spec.refined()) / v1r / std::pow(R, g.Q), 1.0, 0.005) << g.name();
    }
  }
}

TEST(BallVolume, Euclidean3MatchesClosedForm) {
  EXPECT_NEAR(ball_volume(GroupDescriptor::euclidean(3), 1.0, QuadratureSpec{}), 4.0 * M_PI / 3.0, 0.01);
}

TEST(PolarIntegrate, Examples) {
  QuadratureSpec spec;
  spec.R_max = 4.0;
  const auto e1 = GroupDescriptor::euclidean(1);
  EXPECT_EQ(polar_integrate(e1, [](double) { return 0.0; }, spec), 0.0);
  EXPECT_NEAR(polar_integrate(e1, [](double r) { return r < 1.0 ? 1.0 : 0.0; }, spec), 2.0, 1e-6);
  const auto h = GroupDescriptor::heisenberg();
  const double sigma = 4.0 * ball_volume(h, 1.0, fine_volume_spec());
  EXPECT_NEAR(polar_integrate(h, [](double r) { return r < 1.0 ? 1.0 / (r * r) : 0.0; }, spec), 0.5 * sigma,
              1e-6 * sigma);
}

TEST(PolarIntegrate, AgreesWithBallVolume) {
  QuadratureSpec spec;
  spec.R_max = 2.0;
  for (const auto& g : groups()) {
    const double polar = polar_integrate(g, [](double r) { return r < 1.0 ? 1.0 : 0.0; }, spec);
    EXPECT_NEAR(polar / ball_volume(g, 1.0, QuadratureSpec{}), 1.0, 0.01) << g.name();
  }
}

TEST(PolarIntegrate, DivergentAtOriginThrows) {
  QuadratureSpec spec;
  const auto e2 = GroupDescriptor::euclidean(2);
  EXPECT_THROW(polar_integrate(e2, [](double r) { return std::pow(r, -2.5); }, spec), DomainError);
}

TEST(Descriptor, Validation) {
  GroupDescriptor g = GroupDescriptor::euclidean(2);
  g.Q = 3.0;
  EXPECT_THROW(g.validate(), DomainError);
  GroupDescriptor h = GroupDescriptor::heisenberg();
  h.gauge = GaugeKind::euclidean;
  EXPECT_THROW(h.validate(), DomainError);
  EXPECT_THROW(GroupDescriptor::euclidean(5), DomainError);
}
