#pragma once

// Exponent bookkeeping for the inequality families: admissibility with named
// conditions, the derived target exponent q, and dilation mismatch exponents.
//
// The condition checks and the scale algebra are templated on the scalar so the
// same code runs on doubles and on exact rationals.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/rational.hpp"

namespace morrey {

enum class Theorem {
  adams_hls,
  stein_weiss_adams,
  maximal_bound,
  hardy,
  hardy_sobolev,
  rellich,
  gagliardo_nirenberg,
  uncertainty,
  frac_hardy,
  frac_hardy_sobolev,
  frac_rellich,
  frac_gn,
};

inline constexpr Theorem kAllTheorems[] = {
    Theorem::adams_hls,     Theorem::stein_weiss_adams,   Theorem::maximal_bound, Theorem::hardy,
    Theorem::hardy_sobolev, Theorem::rellich,             Theorem::gagliardo_nirenberg,
    Theorem::uncertainty,   Theorem::frac_hardy,          Theorem::frac_hardy_sobolev,
    Theorem::frac_rellich,  Theorem::frac_gn,
};

inline std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::adams_hls: return "adams_hls";
    case Theorem::stein_weiss_adams: return "stein_weiss_adams";
    case Theorem::maximal_bound: return "maximal_bound";
    case Theorem::hardy: return "hardy";
    case Theorem::hardy_sobolev: return "hardy_sobolev";
    case Theorem::rellich: return "rellich";
    case Theorem::gagliardo_nirenberg: return "gagliardo_nirenberg";
    case Theorem::uncertainty: return "uncertainty";
    case Theorem::frac_hardy: return "frac_hardy";
    case Theorem::frac_hardy_sobolev: return "frac_hardy_sobolev";
    case Theorem::frac_rellich: return "frac_rellich";
    case Theorem::frac_gn: return "frac_gn";
  }
  return "?";
}

/// Accepts the canonical names plus the short aliases sw, swa, hls, gn, hs.
inline std::optional<Theorem> parse_theorem(std::string_view s) {
  if (s == "sw" || s == "swa") return Theorem::stein_weiss_adams;
  if (s == "hls") return Theorem::adams_hls;
  if (s == "gn") return Theorem::gagliardo_nirenberg;
  if (s == "hs") return Theorem::hardy_sobolev;
  for (Theorem t : kAllTheorems)
    if (theorem_name(t) == s) return t;
  return std::nullopt;
}

/// True for the families whose right side uses (-Delta)^{gamma/2}; these need a
/// Euclidean group.
inline bool is_fractional_operator(Theorem t) {
  return t == Theorem::frac_hardy || t == Theorem::frac_hardy_sobolev || t == Theorem::frac_rellich ||
         t == Theorem::frac_gn;
}

/// Operator degree fixed by the family (gradient 1, sub-Laplacian 2); nullopt when gamma is free.
inline std::optional<double> fixed_gamma(Theorem t) {
  switch (t) {
    case Theorem::hardy:
    case Theorem::hardy_sobolev:
    case Theorem::gagliardo_nirenberg: return 1.0;
    case Theorem::rellich: return 2.0;
    case Theorem::maximal_bound: return 0.0;
    default: return std::nullopt;
  }
}

/// User-facing tuple; gamma/alpha/beta/a/r are optional where a family does not use them.
struct PartialConfig {
  Theorem theorem = Theorem::stein_weiss_adams;
  double Q = 0.0;
  double p = 2.0;
  double lambda = 0.0;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> a;
  std::optional<double> r_exp;
};

struct ExponentConfig {
  Theorem theorem = Theorem::stein_weiss_adams;
  double Q = 0.0;
  double p = 2.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  std::optional<double> a;
  std::optional<double> r_exp;
  double q = 2.0;
  double p_prime = 2.0;
  double q_prime = 2.0;
  bool admissible = false;
};

template <class T>
struct ExponentTuple {
  T Q{}, p{}, gamma{}, alpha{}, beta{}, lambda{};
  T a{}, r{1};
};

template <class T>
struct Verdict {
  bool accepted = false;
  std::string violated;
  T inv_q{};
};

namespace detail {

template <class T>
T tmin(const T& x, const T& y) {
  return y < x ? y : x;
}

// Equalities hold exactly on rationals and to 1e-12 relative on doubles.
inline bool same(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}
inline bool same(const Rational& x, const Rational& y) { return x == y; }

template <class T>
bool le(const T& x, const T& y) {
  return x < y || same(x, y);
}

template <class T>
class ConditionChain {
 public:
  bool operator()(bool holds, const char* name) {
    if (failed_) return false;
    if (!holds) {
      failed_ = true;
      name_ = name;
    }
    return holds;
  }
  bool failed() const { return failed_; }
  const std::string& name() const { return name_; }

 private:
  bool failed_ = false;
  std::string name_;
};

}  // namespace detail

/// Checks the hypotheses of the family in order (structural equalities, then
/// conditions independent of q, then q itself, then conditions involving q) and
/// returns the first violated one by name.
template <class T>
Verdict<T> check_conditions(Theorem th, const ExponentTuple<T>& x) {
  const T zero(0), one(1), two(2);
  const T& Q = x.Q;
  const T& p = x.p;
  const T& g = x.gamma;
  const T& al = x.alpha;
  const T& be = x.beta;
  const T& la = x.lambda;
  Verdict<T> v;
  detail::ConditionChain<T> c;
  auto finish = [&]() {
    v.accepted = !c.failed();
    v.violated = c.name();
    return v;
  };
  // 1/p' = 1 - 1/p, so alpha < Q/p' reads alpha < Q (1 - 1/p)
  auto alpha_cond = [&]() { return al < Q * (one - one / p); };
  switch (th) {
    case Theorem::maximal_bound:
      c(p > one, "p>1");
      c(zero < la && la < Q, "0<lambda<Q");
      if (!c.failed()) v.inv_q = one / p;
      return finish();

    case Theorem::adams_hls:
      c(detail::same(al, zero) && detail::same(be, zero), "alpha=beta=0");
      c(zero < g && g < Q, "0<gamma<Q");
      c(one < p && p * g < Q, "1<p<Q/gamma");
      c(zero < la && la < Q - g * p, "0<lambda<Q-gamma p");
      if (c.failed()) return finish();
      v.inv_q = one / p - g / (Q - la);
      c(v.inv_q > zero && v.inv_q < one / p, "1<p<q<inf");
      return finish();

    case Theorem::stein_weiss_adams: {
      const T d = g - al - be;
      c(zero < g && g < Q, "0<gamma<Q");
      c(detail::le(zero, al + be) && detail::le(al + be, g), "0<=alpha+beta<=gamma");
      c(one < p && p * d < Q, "1<p<Q/(gamma-alpha-beta)");
      c(alpha_cond(), "alpha<Q/p'");
      c(zero < la && la < Q - d * p, "0<lambda<Q-(gamma-alpha-beta)p");
      if (c.failed()) return finish();
      v.inv_q = one / p - d / (Q - la);
      c(be < (Q - la) * v.inv_q, "beta<(Q-lambda)/q");
      return finish();
    }

    case Theorem::hardy:
    case Theorem::rellich:
    case Theorem::frac_hardy:
    case Theorem::frac_rellich: {
      const bool frac = th == Theorem::frac_hardy || th == Theorem::frac_rellich;
      if (th == Theorem::hardy) c(detail::same(al + be, one), "alpha+beta=1");
      if (th == Theorem::rellich) c(detail::same(al + be, two), "alpha+beta=2");
      if (frac) c(detail::same(al + be, g), "alpha+beta=gamma");
      if (th == Theorem::frac_hardy) c(zero < g && g < one, "0<gamma<1");
      if (th == Theorem::frac_rellich) c(one < g && g < two, "1<gamma<2");
      c(p > one, "1<p<inf");
      if (th == Theorem::frac_rellich) c(Q > g * p, "Q>gamma p");
      c(alpha_cond(), "alpha<Q/p'");
      c(be * p < Q - la, "beta<(Q-lambda)/p");
      if (th == Theorem::frac_rellich)
        c(zero < la && la < detail::tmin(Q, Q - g * p), "0<lambda<min{Q,Q-gamma p}");
      else
        c(zero < la && la < detail::tmin(Q, Q - be * p), "0<lambda<min{Q,Q-beta p}");
      if (!c.failed()) v.inv_q = one / p;
      return finish();
    }

    case Theorem::hardy_sobolev:
    case Theorem::frac_hardy_sobolev: {
      const bool frac = th == Theorem::frac_hardy_sobolev;
      const T deg = frac ? g : one;
      const T d = deg - al - be;
      if (frac) {
        c(zero < g && g < one, "0<gamma<1");
        c(detail::le(zero, al + be) && detail::le(al + be, g), "0<=alpha+beta<=gamma");
        c(g < Q, "gamma<Q");
        c(one < p && p * d < Q, "1<p<Q/(gamma-alpha-beta)");
      } else {
        c(detail::le(zero, al + be) && detail::le(al + be, one), "0<=alpha+beta<=1");
        c(one < Q, "1<Q");
        c(one < p && p * d < Q, "1<p<Q/(1-alpha-beta)");
      }
      c(alpha_cond(), "alpha<Q/p'");
      if (frac)
        c(zero < la && la < detail::tmin(Q - be * p, Q - d * p), "0<lambda<min{Q-beta p,Q-(gamma-alpha-beta)p}");
      else
        c(zero < la && la < detail::tmin(Q - be * p, Q - d * p), "0<lambda<min{Q-beta p,Q-(1-alpha-beta)p}");
      if (c.failed()) return finish();
      v.inv_q = one / p - d / (Q - la);
      c(be < (Q - la) * v.inv_q, "beta<(Q-lambda)/q");
      return finish();
    }

    case Theorem::gagliardo_nirenberg:
    case Theorem::frac_gn: {
      const bool frac = th == Theorem::frac_gn;
      const T deg = frac ? g : one;
      if (frac) c(zero < g && g < one, "0<gamma<1");
      c(zero <= x.a && x.a <= one, "0<=a<=1");
      c(x.r >= one, "r>=1");
      if (frac) {
        c(one < p && p * g < Q, "1<p<Q/gamma");
        c(zero < la && la < Q - g * p, "0<lambda<Q-gamma p");
      } else {
        c(one < p && p < Q, "1<p<Q");
        c(zero < la && la < Q - p, "0<lambda<Q-p");
      }
      if (c.failed()) return finish();
      v.inv_q = x.a * (one / p - deg / (Q - la)) + (one - x.a) / x.r;
      c(v.inv_q < one && v.inv_q > zero, "q>1");
      return finish();
    }

    case Theorem::uncertainty:
      c(detail::same(p, two), "p=2");
      c(zero < g && g <= one, "0<gamma<=1");
      c(Q > two * g, "Q>2gamma");
      c(zero < la && la < Q - two * g, "0<lambda<Q-2gamma");
      if (!c.failed()) v.inv_q = one / two;
      return finish();
  }
  return finish();
}

/// One factor of an inequality side: || |x|^weight (D u) ||^power in M^lambda_exponent,
/// where D has dilation degree `degree` (I_gamma has degree -gamma).
template <class T>
struct SideFactor {
  T degree{};
  T weight{};
  T exponent{1};
  T power{1};
};

template <class T>
struct SideStructure {
  std::vector<SideFactor<T>> lhs;
  std::vector<SideFactor<T>> rhs;
};

/// Structure of both sides of the family's inequality (uncertainty uses the squared left side).
template <class T>
SideStructure<T> side_structure(Theorem th, const ExponentTuple<T>& x, const T& inv_q) {
  const T zero(0), one(1), two(2);
  const T q = one / inv_q;
  SideStructure<T> s;
  switch (th) {
    case Theorem::maximal_bound:
      s.lhs = {{zero, zero, x.p, one}};
      s.rhs = {{zero, zero, x.p, one}};
      break;
    case Theorem::adams_hls:
    case Theorem::stein_weiss_adams:
      s.lhs = {{-x.gamma, -x.beta, q, one}};
      s.rhs = {{zero, x.alpha, x.p, one}};
      break;
    case Theorem::hardy:
    case Theorem::hardy_sobolev:
      s.lhs = {{zero, -x.beta, q, one}};
      s.rhs = {{one, x.alpha, x.p, one}};
      break;
    case Theorem::rellich:
      s.lhs = {{zero, -x.beta, q, one}};
      s.rhs = {{two, x.alpha, x.p, one}};
      break;
    case Theorem::frac_hardy:
    case Theorem::frac_hardy_sobolev:
    case Theorem::frac_rellich:
      s.lhs = {{zero, -x.beta, q, one}};
      s.rhs = {{x.gamma, x.alpha, x.p, one}};
      break;
    case Theorem::gagliardo_nirenberg:
    case Theorem::frac_gn: {
      const T deg = th == Theorem::frac_gn ? x.gamma : one;
      s.lhs = {{zero, zero, q, one}};
      s.rhs = {{deg, zero, x.p, x.a}, {zero, zero, x.r, one - x.a}};
      break;
    }
    case Theorem::uncertainty:
      s.lhs = {{zero, zero, two, two}};
      s.rhs = {{zero, x.gamma, two, one}, {x.gamma, zero, two, one}};
      break;
  }
  return s;
}

/// Exponent m with lhs/rhs of u(D_t .) proportional to t^m, from the factor
/// rule: each factor scales as t^{power (degree - weight + (lambda - Q)/exponent)}.
template <class T>
T generic_mismatch(const SideStructure<T>& s, const T& Q, const T& lambda) {
  auto side = [&](const std::vector<SideFactor<T>>& fs) {
    T acc(0);
    for (const auto& f : fs) acc += f.power * (f.degree - f.weight + (lambda - Q) / f.exponent);
    return acc;
  };
  return side(s.lhs) - side(s.rhs);
}

/// Closed-form mismatch exponents per family.
template <class T>
T closed_form_mismatch(Theorem th, const ExponentTuple<T>& x, const T& inv_q) {
  const T one(1), two(2);
  const T span = x.Q - x.lambda;
  const T dq = one / x.p - inv_q;
  switch (th) {
    case Theorem::maximal_bound:
    case Theorem::uncertainty: return T(0);
    case Theorem::adams_hls:
    case Theorem::stein_weiss_adams: return (x.alpha + x.beta - x.gamma) + span * dq;
    case Theorem::hardy:
    case Theorem::hardy_sobolev: return (x.alpha + x.beta - one) + span * dq;
    case Theorem::rellich: return (x.alpha + x.beta - two) + span * dq;
    case Theorem::frac_hardy:
    case Theorem::frac_hardy_sobolev:
    case Theorem::frac_rellich: return (x.alpha + x.beta - x.gamma) + span * dq;
    case Theorem::gagliardo_nirenberg:
      return span * (x.a / x.p + (one - x.a) / x.r - inv_q) - x.a;
    case Theorem::frac_gn: return span * (x.a / x.p + (one - x.a) / x.r - inv_q) - x.a * x.gamma;
  }
  return T(0);
}

inline ExponentTuple<double> to_tuple(const ExponentConfig& c) {
  return {c.Q, c.p, c.gamma, c.alpha, c.beta, c.lambda, c.a.value_or(0.0), c.r_exp.value_or(1.0)};
}

/// Result of admissible(): the completed config, or the first violated condition.
struct Admissibility {
  std::optional<ExponentConfig> config;
  std::string violated;
  bool accepted() const { return config.has_value(); }
};

/// Completes a partial tuple: fills the family's fixed fields, derives q and the
/// conjugate exponents, and checks every hypothesis.
inline Admissibility admissible(const PartialConfig& in) {
  auto finite = [](double v) { return std::isfinite(v); };
  auto opt_finite = [&](const std::optional<double>& v) { return !v || finite(*v); };
  if (!finite(in.Q) || !finite(in.p) || !finite(in.lambda) || !opt_finite(in.gamma) || !opt_finite(in.alpha) ||
      !opt_finite(in.beta) || !opt_finite(in.a) || !opt_finite(in.r_exp))
    throw DomainError("admissible: non-finite exponent");
  Admissibility res;
  const Theorem th = in.theorem;
  ExponentConfig c;
  c.theorem = th;
  c.Q = in.Q;
  c.p = in.p;
  c.lambda = in.lambda;
  c.alpha = in.alpha.value_or(0.0);
  c.beta = in.beta.value_or(0.0);
  if (auto fg = fixed_gamma(th)) {
    if (in.gamma && *in.gamma != *fg) {
      res.violated = *fg == 1.0 ? "gamma=1" : (*fg == 2.0 ? "gamma=2" : "gamma=0");
      return res;
    }
    c.gamma = *fg;
  } else {
    if (!in.gamma) {
      res.violated = "gamma given";
      return res;
    }
    c.gamma = *in.gamma;
  }
  if (th == Theorem::gagliardo_nirenberg || th == Theorem::frac_gn) {
    if (!in.a) {
      res.violated = "a given";
      return res;
    }
    if (!in.r_exp) {
      res.violated = "r given";
      return res;
    }
    c.a = in.a;
    c.r_exp = in.r_exp;
  }
  if (!(c.Q > 0.0)) {
    res.violated = "Q>0";
    return res;
  }
  const auto v = check_conditions(th, to_tuple(c));
  if (!v.accepted) {
    res.violated = v.violated;
    return res;
  }
  c.q = 1.0 / v.inv_q;
  c.p_prime = c.p / (c.p - 1.0);
  c.q_prime = c.q / (c.q - 1.0);
  c.admissible = true;
  res.config = c;
  return res;
}

/// Mismatch exponent of a (possibly perturbed) config via the closed form.
inline double predicted_mismatch(const ExponentConfig& c) {
  return closed_form_mismatch(c.theorem, to_tuple(c), 1.0 / c.q);
}

/// Same quantity via the per-factor scaling rule.
inline double structural_mismatch(const ExponentConfig& c) {
  const auto x = to_tuple(c);
  return generic_mismatch(side_structure(c.theorem, x, 1.0 / c.q), x.Q, x.lambda);
}

/// Shifts 1/q by delta_inv_q (negative control); clears the admissibility flag.
inline ExponentConfig perturb_q(const ExponentConfig& c, double delta_inv_q) {
  if (!std::isfinite(delta_inv_q)) throw DomainError("perturb_q: non-finite shift");
  if (delta_inv_q == 0.0) return c;
  const double inv_q = 1.0 / c.q + delta_inv_q;
  if (!(inv_q > 1e-12 && inv_q < 1.0 - 1e-12)) throw DomainError("perturb_q: shifted q must lie in (1, inf)");
  ExponentConfig out = c;
  out.q = 1.0 / inv_q;
  out.q_prime = out.q / (out.q - 1.0);
  out.admissible = false;
  return out;
}

}  // namespace morrey
