#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "morrey_lab/quadrature.hpp"

using namespace morrey;

namespace {

QuadratureSpec spec_with(double R, double h) {
  QuadratureSpec s;
  s.R_max = R;
  s.lattice_h = h;
  return s;
}

double indicator_1d(const Point& y) { return std::abs(y[0]) <= 1.0 ? 1.0 : 0.0; }

}  // namespace

TEST(Spec, Validation) {
  QuadratureSpec s;
  EXPECT_NO_THROW(s.validate());
  s.lattice_h = 10.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = QuadratureSpec{};
  s.shell_ratio = 1.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = QuadratureSpec{};
  s.inner_cutoff = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
  EXPECT_DOUBLE_EQ(QuadratureSpec{}.refined(2).effective_h(), QuadratureSpec{}.lattice_h / 4);
}

TEST(Lattice, MidpointLayout) {
  const auto h1 = GroupDescriptor::heisenberg();
  Lattice lat(h1, 2.0, 0.25);
  EXPECT_EQ(lat.count(0), 16);
  EXPECT_DOUBLE_EQ(lat.step(2), 0.0625);
  EXPECT_EQ(lat.count(2), 32);
  EXPECT_EQ(lat.size(), 16 * 16 * 32);
  EXPECT_DOUBLE_EQ(lat.coordinate(0, 0), -2.0 + 0.125);
  EXPECT_EQ(lat.stride(2), 1);
  EXPECT_THROW(Lattice(h1, 0.1, 0.25), DomainError);
}

TEST(PairwiseSum, MatchesNaiveOnSmallInput) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.5};
  EXPECT_EQ(pairwise_sum(v), 10.5);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(LatticeIntegrate, Examples) {
  const auto e1 = GroupDescriptor::euclidean(1);
  const auto one = lattice_integrate(e1, [](const Point&) { return 1.0; }, spec_with(1.0, 1.0 / 16));
  EXPECT_NEAR(one.value, 2.0, 1e-12);
  EXPECT_LE(one.error_estimate, 1e-10);
  const auto gauss = lattice_integrate(e1, [](const Point& x) { return std::exp(-x[0] * x[0]); }, spec_with(8.0, 1.0 / 16));
  EXPECT_NEAR(gauss.value, std::sqrt(M_PI), 1e-6);
  const auto zero = lattice_integrate(e1, [](const Point&) { return 0.0; }, spec_with(8.0, 1.0 / 16));
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.error_estimate, 0.0);
  EXPECT_GT(zero.nodes_used, 0);
}

TEST(LatticeIntegrate, NonFiniteSampleNamesTheNode) {
  const auto e1 = GroupDescriptor::euclidean(1);
  try {
    lattice_integrate(e1, [](const Point& x) { return x[0] > 0.5 ? NAN : 1.0; }, spec_with(1.0, 0.25));
    FAIL() << "expected IntegrandError";
  } catch (const IntegrandError& e) {
    EXPECT_NE(std::string(e.what()).find("node"), std::string::npos);
  }
}

TEST(LatticeIntegrate, RefinementErrorDecreases) {
  const auto e2 = GroupDescriptor::euclidean(2);
  auto f = [](const Point& x) { return std::exp(-x[0] * x[0] - 2 * x[1] * x[1]) * (1 + x[0] * x[0]); };
  QuadratureSpec s = spec_with(2.0, 0.25);
  double prev = lattice_integrate(e2, f, s).error_estimate;
  for (int l = 1; l <= 3; ++l) {
    const double e = lattice_integrate(e2, f, s.refined(l)).error_estimate;
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(LatticeIntegrate, TranslationCovariance) {
  const auto h1 = GroupDescriptor::heisenberg();
  const Point z{0.3, -0.2, 0.1};
  auto f = [](const Point& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1]) - x[2] * x[2]); };
  const auto spec = spec_with(5.0, 1.0 / 8);
  const auto base = lattice_integrate(h1, f, spec);
  const auto moved = lattice_integrate(h1, [&](const Point& x) { return f(mul(h1, z, x)); }, spec);
  EXPECT_NEAR(moved.value, base.value, 2.0 * std::max(base.error_estimate, moved.error_estimate) + 1e-9);
}

TEST(ShellIntegrate, Examples) {
  const auto e1 = GroupDescriptor::euclidean(1);
  const auto spec = spec_with(8.0, 1.0 / 64);
  const auto r = shell_integrate_singular(e1, -0.5, indicator_1d, Point{0.0}, spec);
  EXPECT_NEAR(r.value, 4.0, 0.04);
  const auto z = shell_integrate_singular(e1, -0.5, [](const Point&) { return 0.0; }, Point{0.0}, spec);
  EXPECT_EQ(z.value, 0.0);
}

TEST(ShellIntegrate, Errors) {
  const auto e2 = GroupDescriptor::euclidean(2);
  auto one = [](const Point&) { return 1.0; };
  EXPECT_THROW(shell_integrate_singular(e2, -2.0, one, Point{0, 0}, QuadratureSpec{}), DomainError);
  EXPECT_THROW(shell_integrate_singular(e2, 0.0, one, Point{0, 0}, QuadratureSpec{}), DomainError);
  EXPECT_THROW(shell_integrate_singular(e2, -1.0, one, Point{0}, QuadratureSpec{}), ShapeError);
}

TEST(ShellIntegrate, RefinementShrinksErrorOnGaussian) {
  const auto e1 = GroupDescriptor::euclidean(1);
  auto gauss = [](const Point& y) { return std::exp(-y[0] * y[0]); };
  const auto spec = spec_with(8.0, 1.0 / 4);
  const double e0 = shell_integrate_singular(e1, -0.5, gauss, Point{0.3}, spec).error_estimate;
  const double e1r = shell_integrate_singular(e1, -0.5, gauss, Point{0.3}, spec.refined()).error_estimate;
  EXPECT_GE(e0 / e1r, 1.5);
}

TEST(ShellIntegrate, AgreesWithLatticeForMildKernel) {
  const auto e2 = GroupDescriptor::euclidean(2);
  const double a = -0.4;
  auto u = [](const Point& y) { return std::exp(-(y[0] * y[0] + y[1] * y[1])); };
  const auto spec = spec_with(6.0, 1.0 / 16);
  const auto shell = shell_integrate_singular(e2, a, u, Point{0, 0}, spec);
  const auto lat = lattice_integrate(
      e2, [&](const Point& y) { return u(y) * std::pow(std::hypot(y[0], y[1]), a); }, spec, Point{0, 0});
  // Closed form: pi * Gamma(1 + a/2).
  const double exact = M_PI * std::tgamma(1.0 + 0.5 * a);
  EXPECT_NEAR(shell.value, exact, 0.01 * exact);
  EXPECT_NEAR(shell.value, lat.value, 2.0 * (shell.error_estimate + lat.error_estimate) + 0.01 * exact);
}

TEST(ShellQuadrature, WeightsReproduceBallVolume) {
  for (const auto& g : {GroupDescriptor::euclidean(2), GroupDescriptor::heisenberg()}) {
    QuadratureSpec spec = spec_with(2.0, g.law == GroupLaw::heisenberg1 ? 1.0 / 8 : 1.0 / 32);
    ShellQuadrature sq(g, spec);
    double total = sq.inner_kernel_moment(0.0);
    for (const auto& nd : sq.nodes()) total += nd.weight;
    EXPECT_NEAR(total / ball_volume(g, 2.0, fine_volume_spec()), 1.0, 0.01) << g.name();
  }
}

TEST(BallIntegrator, ConstantMassGivesVolume) {
  const auto e2 = GroupDescriptor::euclidean(2);
  Lattice lat(e2, 8.0, 1.0 / 16);
  BallIntegrator bi(lat, std::vector<double>(static_cast<std::size_t>(lat.size()), lat.cell_volume()));
  for (double r : {0.5, 1.0, 2.0, 3.0}) EXPECT_NEAR(bi.integrate(Point{0.4, -1.1}, r) / (M_PI * r * r), 1.0, 0.01);
}

TEST(BallIntegrator, EuclideanRowPathMatchesGenericPath) {
  // Unit weights make the anisotropic gauge equal the Euclidean norm but skip the row fast path.
  const auto fast = GroupDescriptor::euclidean(3);
  const auto slow = GroupDescriptor::euclidean(3, GaugeKind::anisotropic);
  Lattice lf(fast, 3.0, 1.0 / 8), ls(slow, 3.0, 1.0 / 8);
  auto mass = [](const Lattice& lat) {
    return lat.sample([](const Point& x) { return std::exp(-(x[0] * x[0] + 2 * x[1] * x[1] + 3 * x[2] * x[2])); });
  };
  BallIntegrator bf(lf, mass(lf)), bs(ls, mass(ls));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-1.5, 1.5), r(0.2, 3.0);
  for (int k = 0; k < 50; ++k) {
    const Point x{c(rng), c(rng), c(rng)};
    const double rad = r(rng);
    EXPECT_NEAR(bf.integrate(x, rad), bs.integrate(x, rad), 1e-10 * (1.0 + bs.total_mass()));
  }
}

TEST(BallIntegrator, MatchesBruteForceSum) {
  const auto h1 = GroupDescriptor::heisenberg();
  Lattice lat(h1, 2.0, 1.0 / 8);
  const auto m = lat.sample([](const Point& x) { return 1.0 + x[0] * x[0] + std::abs(x[2]); });
  BallIntegrator bi(lat, m);
  const Point c{0.3, -0.2, 0.1};
  for (double r : {0.5, 1.0}) {
    double brute = 0;
    for (std::int64_t k = 0; k < lat.size(); ++k)
      if (distance(h1, c, lat.node(k)) < r) brute += m[static_cast<std::size_t>(k)];
    EXPECT_NEAR(bi.integrate(c, r) / brute, 1.0, 0.05) << "r=" << r;
  }
}

TEST(BallIntegrator, ShapeMismatchThrows) {
  Lattice lat(GroupDescriptor::euclidean(1), 2.0, 0.25);
  EXPECT_THROW(BallIntegrator(lat, std::vector<double>(3, 1.0)), ShapeError);
}
