#include <cmath>

#include <gtest/gtest.h>

#include "morrey_lab/harness/exponents.hpp"
#include "morrey_lab/rational.hpp"

using namespace morrey;

namespace {

PartialConfig swa(double Q, double p, double lambda, double gamma, double alpha, double beta) {
  return PartialConfig{Theorem::stein_weiss_adams, Q, p, lambda, gamma, alpha, beta};
}

}  // namespace

TEST(Admissible, SteinWeissGolden) {
  const auto ad = admissible(swa(4, 2, 1, 1, 0, 0));
  ASSERT_TRUE(ad.accepted());
  EXPECT_NEAR(ad.config->q, 6.0, 1e-12);
  EXPECT_NEAR(1.0 / ad.config->p + 1.0 / ad.config->p_prime, 1.0, 1e-15);
  EXPECT_NEAR(1.0 / ad.config->q + 1.0 / ad.config->q_prime, 1.0, 1e-15);
  EXPECT_TRUE(ad.config->admissible);
}

TEST(Admissible, NamedRejections) {
  const auto big = admissible(swa(4, 2, 2.5, 1, 0, 0));
  EXPECT_FALSE(big.accepted());
  EXPECT_EQ(big.violated, "0<lambda<Q-(gamma-alpha-beta)p");
  for (double Q : {1.0, 2.0, 3.0, 4.0}) {
    const auto h = admissible(PartialConfig{Theorem::hardy, Q, 2, 0.1, std::nullopt, 1.0, 0.5});
    EXPECT_EQ(h.violated, "alpha+beta=1") << Q;
  }
  EXPECT_EQ(admissible(PartialConfig{Theorem::maximal_bound, 2, 1.0, 0.5}).violated, "p>1");
  EXPECT_EQ(admissible(PartialConfig{Theorem::adams_hls, 2, 2, 0.5}).violated, "gamma given");
  EXPECT_EQ(admissible(PartialConfig{Theorem::hardy, 2, 2, 0.5, 2.0, 0.5, 0.5}).violated, "gamma=1");
}

TEST(Admissible, RejectsNonFinite) {
  EXPECT_THROW(admissible(swa(4, NAN, 1, 1, 0, 0)), DomainError);
  EXPECT_THROW(admissible(swa(4, 2, 1, INFINITY, 0, 0)), DomainError);
}

TEST(Admissible, DeterministicAndTotal) {
  for (double lambda = 0.05; lambda < 4.0; lambda += 0.3) {
    for (double alpha = -0.5; alpha <= 1.0; alpha += 0.25) {
      const auto a = admissible(swa(4, 2, lambda, 1, alpha, 0.1));
      const auto b = admissible(swa(4, 2, lambda, 1, alpha, 0.1));
      EXPECT_NE(a.accepted(), !a.violated.empty());
      EXPECT_EQ(a.accepted(), b.accepted());
      EXPECT_EQ(a.violated, b.violated);
    }
  }
}

TEST(Admissible, TheoremNamesRoundTrip) {
  for (Theorem t : kAllTheorems) EXPECT_EQ(parse_theorem(theorem_name(t)), t);
  EXPECT_FALSE(parse_theorem("nope").has_value());
}

TEST(Mismatch, ZeroForAcceptedConfigs) {
  for (double lambda : {0.1, 0.5, 1.0, 1.5}) {
    for (double alpha : {0.0, 0.2, 0.4}) {
      const auto ad = admissible(swa(4, 2, lambda, 1, alpha, 0.1));
      if (!ad.accepted()) continue;
      EXPECT_NEAR(predicted_mismatch(*ad.config), 0.0, 1e-12);
      EXPECT_NEAR(structural_mismatch(*ad.config), 0.0, 1e-12);
    }
  }
}

TEST(Mismatch, SteinWeissIsExactlyZeroOnRationals) {
  int accepted = 0;
  for (int l = 1; l < 8; ++l) {
    for (int a = 0; a < 4; ++a) {
      for (int b = -2; b < 3; ++b) {
        ExponentTuple<Rational> x;
        x.Q = 4;
        x.p = Rational(3, 2);
        x.gamma = Rational(3, 2);
        x.lambda = Rational(l, 4);
        x.alpha = Rational(a, 8);
        x.beta = Rational(b, 8);
        const auto v = check_conditions(Theorem::stein_weiss_adams, x);
        if (!v.accepted) continue;
        ++accepted;
        EXPECT_EQ(closed_form_mismatch(Theorem::stein_weiss_adams, x, v.inv_q), Rational(0));
        EXPECT_EQ(generic_mismatch(side_structure(Theorem::stein_weiss_adams, x, v.inv_q), x.Q, x.lambda),
                  Rational(0));
      }
    }
  }
  EXPECT_GT(accepted, 20);
}

TEST(Mismatch, GagliardoNirenbergRelationOnRationals) {
  ExponentTuple<Rational> x;
  x.Q = 3;
  x.p = Rational(3, 2);
  x.lambda = Rational(1, 2);
  x.gamma = 1;
  x.a = Rational(2, 5);
  x.r = 3;
  const auto v = check_conditions(Theorem::gagliardo_nirenberg, x);
  ASSERT_TRUE(v.accepted);
  EXPECT_EQ(v.inv_q, x.a * (Rational(1) / x.p - Rational(1) / (x.Q - x.lambda)) + (Rational(1) - x.a) / x.r);
}

TEST(PerturbQ, Examples) {
  const auto c = *admissible(swa(4, 2, 1, 1, 0, 0)).config;
  const auto same = perturb_q(c, 0.0);
  EXPECT_EQ(same.q, c.q);
  EXPECT_TRUE(same.admissible);
  const auto p = perturb_q(c, 1.0 / 6.0);
  EXPECT_NEAR(p.q, 3.0, 1e-12);
  EXPECT_FALSE(p.admissible);
  EXPECT_NEAR(1.0 / p.q + 1.0 / p.q_prime, 1.0, 1e-15);
  EXPECT_THROW(perturb_q(c, -1.0 / 6.0), DomainError);
  EXPECT_THROW(perturb_q(c, NAN), DomainError);
}

TEST(PerturbQ, MismatchShiftsByQMinusLambda) {
  const auto c = *admissible(swa(4, 2, 1, 1, 0, 0)).config;
  EXPECT_NEAR(predicted_mismatch(perturb_q(c, 0.1)), -0.3, 1e-12);
  EXPECT_NEAR(predicted_mismatch(perturb_q(c, -0.1)), 0.3, 1e-12);
  EXPECT_NEAR(structural_mismatch(perturb_q(c, -0.1)), 0.3, 1e-12);
}

TEST(RationalType, Arithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -3), Rational(-1, 3));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(3, 6).str(), "1/2");
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
  EXPECT_THROW(Rational(1, 0), DomainError);
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
}
