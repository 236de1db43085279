#include <cmath>

#include <gtest/gtest.h>

#include "morrey_lab/morrey.hpp"

using namespace morrey;

namespace {

QuadratureSpec spec_with(double R, double h) {
  QuadratureSpec s;
  s.R_max = R;
  s.lattice_h = h;
  return s;
}

const GroupDescriptor kE1 = GroupDescriptor::euclidean(1);
const GroupDescriptor kE2 = GroupDescriptor::euclidean(2);

}  // namespace

TEST(MorreyNorm, ZeroFunction) {
  const auto spec = spec_with(4.0, 1.0 / 16);
  EXPECT_EQ(morrey_norm(kE1, 2.0, 0.5, TestFunction::zero(kE1), spec).value, 0.0);
  EXPECT_EQ(local_morrey_norm(kE1, 2.0, 0.5, TestFunction::zero(kE1), default_radii(spec, 1.0), spec).value, 0.0);
  const auto e = embedding_check(kE2, 2.0, 0.5, TestFunction::zero(kE2), default_radii(spec, 1.0), spec);
  EXPECT_EQ(e.local, 0.0);
  EXPECT_EQ(e.global, 0.0);
  EXPECT_TRUE(e.ok);
}

TEST(MorreyNorm, LambdaZeroGaussianIsLpNorm) {
  const auto est = morrey_norm(kE1, 2.0, 0.0, TestFunction::gauss_tensor(kE1, 1.0), spec_with(8.0, 1.0 / 16));
  EXPECT_NEAR(est.value, std::pow(M_PI / 2.0, 0.25), 0.01 * 1.11951);
}

TEST(MorreyNorm, LambdaZeroMatchesLatticeLp) {
  const auto spec = spec_with(6.0, 1.0 / 16);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto u = TestFunction::bump_compact(kE2, 1.5);
    const auto lp = lattice_integrate(kE2, [&](const Point& x) { return std::pow(std::abs(u(x)), p); }, spec);
    EXPECT_NEAR(morrey_norm(kE2, p, 0.0, u, spec).value / std::pow(lp.value, 1.0 / p), 1.0, 0.01) << p;
  }
}

TEST(MorreyNorm, DilationScalingLaw) {
  const auto spec = spec_with(16.0, 1.0 / 32);
  const auto u = TestFunction::gauss_tensor(kE1, 1.0);
  for (double lambda : {0.0, 0.25, 0.5}) {
    const double base = morrey_norm(kE1, 2.0, lambda, u, spec).value;
    for (double t : {0.5, 2.0}) {
      const double v = morrey_norm(kE1, 2.0, lambda, u.dilated(t), spec).value;
      EXPECT_NEAR(v / base / std::pow(t, (lambda - 1.0) / 2.0), 1.0, 0.02) << lambda << " " << t;
    }
  }
}

TEST(MorreyNorm, GridSupMonotone) {
  const auto spec = spec_with(6.0, 1.0 / 16);
  const auto u = TestFunction::bump_compact(kE2, 1.0).translated(Point{1.0, 0.5});
  const auto all_radii = default_radii(spec, 1.0);
  const std::vector<double> few_radii(all_radii.begin(), all_radii.begin() + 8);
  const auto centers = default_centers(kE2, spec.R_max, spec.effective_h());
  const std::vector<Point> few(centers.begin(), centers.begin() + 5);
  auto run = [&](const std::vector<Point>& c, const std::vector<double>& r) {
    return morrey_norm(kE2, MorreyParams{2.0, 0.7, c, r}, u, spec).value;
  };
  EXPECT_LE(run(few, few_radii), run(centers, few_radii));
  EXPECT_LE(run(few, few_radii), run(few, all_radii));
  EXPECT_LE(run(centers, few_radii), run(centers, all_radii));
}

TEST(MorreyNorm, DefaultCentersAreBounded) {
  for (const auto& g : {kE1, kE2, GroupDescriptor::euclidean(3), GroupDescriptor::heisenberg()}) {
    const auto c = default_centers(g, 8.0, 1.0 / 64);
    EXPECT_LE(c.size(), 125u) << g.name();
    EXPECT_EQ(c.front(), identity(g));
    for (const auto& x : c) EXPECT_LE(gauge(g, x), 4.0 + 1e-12);
  }
}

TEST(MorreyNorm, ConstantRevealsTruncation) {
  const auto spec = spec_with(4.0, 1.0 / 16);
  const auto c = TestFunction::custom(kE1, [](const Point&) { return 1.0; }, 4.0, "const");
  const auto est = morrey_norm(kE1, 2.0, 0.5, c, spec);
  EXPECT_TRUE(est.truncation_note);
  const auto capped = morrey_norm(kE1, MorreyParams{2.0, 0.5, {Point{0.0}}, {0.5, 1.0, 2.0}}, c, spec);
  EXPECT_TRUE(capped.truncation_note);
  EXPECT_EQ(capped.argmax_radius, 2.0);
  EXPECT_FALSE(morrey_norm(kE1, 2.0, 0.5, TestFunction::gauss_tensor(kE1, 1.0), spec_with(8.0, 1.0 / 16))
                   .truncation_note);
}

TEST(MorreyNorm, InvalidParams) {
  const auto spec = spec_with(4.0, 1.0 / 16);
  const auto u = TestFunction::gauss_tensor(kE1, 1.0);
  EXPECT_THROW(morrey_norm(kE1, 1.0, 0.5, u, spec), DomainError);
  EXPECT_THROW(morrey_norm(kE1, 2.0, 1.5, u, spec), DomainError);
  EXPECT_THROW(morrey_norm(kE1, MorreyParams{2.0, 0.5, {}, {1.0}}, u, spec), DomainError);
  EXPECT_THROW(morrey_norm(kE1, MorreyParams{2.0, 0.5, {Point{0, 0}}, {1.0}}, u, spec), ShapeError);
}

TEST(LocalMorreyNorm, BoundedByGlobal) {
  const auto spec = spec_with(8.0, 1.0 / 16);
  for (const auto& u : {TestFunction::gauss_tensor(kE2, 1.0), TestFunction::bump_compact(kE2, 2.0),
                        TestFunction::power_truncated(kE2, 0.5, 1.0)}) {
    const auto radii = default_radii(spec, u.decay_radius());
    const double loc = local_morrey_norm(kE2, 2.0, 1.0, u, radii, spec).value;
    const double glob = morrey_norm(kE2, 2.0, 1.0, u, spec).value;
    EXPECT_LE(loc, glob) << u.label();
    EXPECT_TRUE(embedding_check(kE2, 2.0, 1.0, u, radii, spec).ok);
  }
}

TEST(LocalMorreyNorm, OffCenterGaussianGap) {
  const auto spec = spec_with(8.0, 1.0 / 16);
  const auto u = TestFunction::gauss_tensor(kE1, 1.0).translated(Point{3.0});
  const auto radii = geometric_radii(0.125, 2.0);
  const auto e = embedding_check(kE1, 2.0, 0.0, u, radii, spec, {identity(kE1), Point{3.0}});
  EXPECT_TRUE(e.ok);
  EXPECT_LT(e.local, e.global);
  EXPECT_GE(1.0 - e.local / e.global, 0.05);
}

TEST(EmbeddingCheck, PowerGolden) {
  const auto spec = spec_with(8.0, 1.0 / 16);
  const auto u = TestFunction::power_truncated(kE2, 1.0, 1.0);
  const auto e = embedding_check(kE2, 1.5, 0.5, u, default_radii(spec, u.decay_radius()), spec);
  EXPECT_TRUE(e.ok);
  EXPECT_NEAR(e.local, 5.400454933, 1e-8);
  EXPECT_NEAR(e.global, 5.400454933, 1e-8);
}

TEST(WeightedMasses, Errors) {
  Lattice lat(kE2, 2.0, 0.25);
  const std::vector<double> v(static_cast<std::size_t>(lat.size()), 1.0);
  EXPECT_THROW(weighted_masses(lat, std::vector<double>(3, 1.0), 2.0), ShapeError);
  EXPECT_THROW(weighted_masses(lat, v, 2.0, -2.0), DomainError);
  EXPECT_NO_THROW(weighted_masses(lat, v, 2.0, -1.5));
}
