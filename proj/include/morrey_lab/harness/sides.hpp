#pragma once

// Both sides of each inequality on a fixed lattice, dilation sweeps with fitted
// scaling slopes, and the maximal-bound and pointwise Hedberg checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/group.hpp"
#include "morrey_lab/harness/exponents.hpp"
#include "morrey_lab/morrey.hpp"
#include "morrey_lab/operators.hpp"
#include "morrey_lab/quadrature.hpp"
#include "morrey_lab/test_function.hpp"

namespace morrey {

/// Lattice and (center, radius) grid shared by every evaluation in a sweep.
struct SweepGrid {
  QuadratureSpec spec;
  std::vector<Point> centers;
  std::vector<double> radii;
};

/// Default grid: covariant center family and radii from 2h to 2 (R_max + decay).
inline SweepGrid make_sweep_grid(const GroupDescriptor& g, const QuadratureSpec& spec, double decay_radius) {
  spec.validate();
  return {spec, default_centers(g, spec.R_max, spec.effective_h()), default_radii(spec, decay_radius)};
}

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

namespace detail {

enum class FieldOp { identity, riesz, gradient, sub_laplacian, frac_laplacian, maximal };

inline FieldOp factor_op(Theorem th, bool lhs, std::size_t index) {
  if (lhs) {
    if (th == Theorem::adams_hls || th == Theorem::stein_weiss_adams) return FieldOp::riesz;
    return th == Theorem::maximal_bound ? FieldOp::maximal : FieldOp::identity;
  }
  switch (th) {
    case Theorem::maximal_bound:
    case Theorem::adams_hls:
    case Theorem::stein_weiss_adams: return FieldOp::identity;
    case Theorem::hardy:
    case Theorem::hardy_sobolev: return FieldOp::gradient;
    case Theorem::rellich: return FieldOp::sub_laplacian;
    case Theorem::gagliardo_nirenberg: return index == 0 ? FieldOp::gradient : FieldOp::identity;
    case Theorem::frac_gn: return index == 0 ? FieldOp::frac_laplacian : FieldOp::identity;
    case Theorem::frac_hardy:
    case Theorem::frac_hardy_sobolev:
    case Theorem::frac_rellich: return FieldOp::frac_laplacian;
    case Theorem::uncertainty: return FieldOp::identity;
  }
  return FieldOp::identity;
}

/// The uncertainty right side is || |x|^gamma u || * || D u || with D the gradient
/// for gamma = 1 and (-Delta)^{gamma/2} otherwise.
inline FieldOp uncertainty_op(double gamma) { return gamma == 1.0 ? FieldOp::gradient : FieldOp::frac_laplacian; }

class FieldCache {
 public:
  FieldCache(const Lattice& lat, const TestFunction& u, double gamma, const SweepGrid& grid)
      : lat_(lat), u_(u), gamma_(gamma), grid_(grid) {}

  const std::vector<double>& get(FieldOp op) {
    auto& slot = fields_[static_cast<int>(op)];
    if (!slot.empty()) return slot;
    const auto& g = lat_.group();
    switch (op) {
      case FieldOp::identity: slot = sample_values(lat_, u_); break;
      case FieldOp::riesz: slot = riesz_field(lat_, gamma_, get(FieldOp::identity), grid_.spec); break;
      case FieldOp::maximal: {
        // The node value is the r -> 0 member of the sup at continuity points.
        MaximalEvaluator ev(lat_, u_);
        slot = lat_.sample([&](const Point& x) { return std::max(ev.evaluate(x, grid_.radii, 0.0), std::abs(u_(x))); });
        break;
      }
      case FieldOp::gradient:
        slot = lat_.sample([&](const Point& x) { return norm(horizontal_gradient(g, u_, x)); });
        break;
      case FieldOp::sub_laplacian:
        slot = lat_.sample([&](const Point& x) { return sub_laplacian(g, u_, x); });
        break;
      case FieldOp::frac_laplacian: {
        const double s = 0.5 * gamma_;
        if (u_.has_frac_laplacian()) {
          slot = lat_.sample([&](const Point& x) { return u_.frac_laplacian(s, x); });
        } else {
          slot = lat_.sample([&](const Point& x) { return frac_laplacian(g, s, u_, x, grid_.spec); });
        }
        break;
      }
    }
    return slot;
  }

 private:
  const Lattice& lat_;
  const TestFunction& u_;
  double gamma_;
  const SweepGrid& grid_;
  std::vector<double> fields_[6];
};

inline void check_operator_support(const GroupDescriptor& g, Theorem th, const ExponentConfig& cfg,
                                   const TestFunction& u) {
  const bool frac = is_fractional_operator(th) || (th == Theorem::uncertainty && cfg.gamma != 1.0);
  if (frac && g.law != GroupLaw::euclidean)
    throw UnsupportedGroupError(std::string(theorem_name(th)) + " needs a Euclidean group");
  const bool deriv = th == Theorem::hardy || th == Theorem::hardy_sobolev || th == Theorem::rellich ||
                     th == Theorem::gagliardo_nirenberg || (th == Theorem::uncertainty && cfg.gamma == 1.0);
  if (deriv) require_stratified(g);
  if ((frac || deriv) && u.origin_power() != 0.0)
    throw DomainError(std::string(theorem_name(th)) + ": test function is singular at the identity");
  if (std::abs(cfg.Q - g.Q) > 1e-12) throw DomainError("config Q differs from the group's homogeneous dimension");
}

}  // namespace detail

/// Left and right sides of the family's inequality for u, every norm taken on
/// the grid's lattice and (center, radius) family.  Weighted integrands are
/// assembled per node before Morrey estimation; the uncertainty left side is squared.
inline Sides inequality_sides(const GroupDescriptor& g, const ExponentConfig& cfg, const TestFunction& u,
                              const SweepGrid& grid) {
  const Theorem th = cfg.theorem;
  detail::check_operator_support(g, th, cfg, u);
  grid.spec.validate();
  Lattice lat(g, grid.spec.R_max, grid.spec.effective_h());
  detail::FieldCache cache(lat, u, cfg.gamma, grid);
  const auto x = to_tuple(cfg);
  const auto st = side_structure(th, x, 1.0 / cfg.q);

  auto side = [&](const std::vector<SideFactor<double>>& fs, bool lhs) {
    double acc = 1.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& f = fs[i];
      if (f.power == 0.0) continue;
      detail::FieldOp op = detail::factor_op(th, lhs, i);
      if (th == Theorem::uncertainty && !lhs && i == 1) op = detail::uncertainty_op(cfg.gamma);
      const auto& values = cache.get(op);
      const double origin = op == detail::FieldOp::identity ? u.origin_power() : 0.0;
      const auto est = field_morrey_norm(lat, values, f.exponent, cfg.lambda, grid.centers, grid.radii,
                                         f.weight * f.exponent, origin);
      acc *= std::pow(est.value, f.power);
    }
    return acc;
  };
  Sides s{side(st.lhs, true), side(st.rhs, false)};
  if (s.rhs == 0.0 && s.lhs != 0.0)
    throw DegenerateInputError(std::string(theorem_name(th)) + ": right side vanishes while the left does not");
  return s;
}

struct RatioSweepRecord {
  ExponentConfig config;
  std::string test_function;
  std::vector<double> t_values;
  std::vector<double> ratios;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double fitted_slope = 0.0;
  double predicted_mismatch = 0.0;
  double estimated_constant = 0.0;
  bool degenerate = false;

  /// max/min of the ratios.
  double spread() const {
    if (ratios.empty()) return 1.0;
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    return *hi / *lo;
  }
};

/// Least-squares slope of log y against log x; 0 for fewer than two distinct x.
inline double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("fit_loglog_slope: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

/// Ratios lhs/rhs for u(D_t .) over t_values, all on the grid's single lattice.
inline RatioSweepRecord dilation_sweep(const GroupDescriptor& g, const ExponentConfig& cfg, const TestFunction& u,
                                       std::span<const double> t_values, const SweepGrid& grid) {
  if (t_values.empty()) throw DomainError("dilation_sweep: no t values");
  for (double t : t_values)
    if (!(t > 0.0)) throw DomainError("dilation_sweep: t values must be positive");
  RatioSweepRecord rec;
  rec.config = cfg;
  rec.test_function = u.label();
  rec.t_values.assign(t_values.begin(), t_values.end());
  rec.predicted_mismatch = predicted_mismatch(cfg);
  for (double t : t_values) {
    const Sides s = inequality_sides(g, cfg, u.dilated(t), grid);
    if (s.rhs == 0.0) throw DegenerateInputError("dilation_sweep: both sides vanish for " + u.label());
    rec.lhs.push_back(s.lhs);
    rec.rhs.push_back(s.rhs);
    rec.ratios.push_back(s.lhs / s.rhs);
  }
  const auto [tlo, thi] = std::minmax_element(rec.t_values.begin(), rec.t_values.end());
  rec.degenerate = *tlo == *thi;
  rec.fitted_slope = rec.degenerate ? 0.0 : fit_loglog_slope(rec.t_values, rec.ratios);
  rec.estimated_constant = *std::max_element(rec.ratios.begin(), rec.ratios.end());
  return rec;
}

// ---------------------------------------------------------------------------
// Maximal operator bound

struct MaximalBoundEntry {
  std::string test_function;
  std::vector<double> t_values;
  std::vector<double> ratios;
  double spread = 1.0;
};

struct MaximalBoundReport {
  double max_ratio = 0.0;
  double max_spread = 1.0;
  std::vector<MaximalBoundEntry> entries;
};

/// ||M_0 u||_{M^lambda_p} / ||u||_{M^lambda_p} with M_0 u sampled at every lattice
/// node over the grid's radii; one entry per base function, over its dilates.
inline MaximalBoundReport maximal_bound_check(const GroupDescriptor& g, double p, double lambda,
                                              std::span<const TestFunction> family,
                                              std::span<const double> t_values, const SweepGrid& grid) {
  PartialConfig pc;
  pc.theorem = Theorem::maximal_bound;
  pc.Q = g.Q;
  pc.p = p;
  pc.lambda = lambda;
  const auto ad = admissible(pc);
  if (!ad.accepted()) throw DomainError("maximal_bound_check: violated " + ad.violated);
  MaximalBoundReport rep;
  for (const auto& base : family) {
    const auto rec = dilation_sweep(g, *ad.config, base, t_values, grid);
    MaximalBoundEntry e;
    e.test_function = rec.test_function;
    e.t_values = rec.t_values;
    e.ratios = rec.ratios;
    e.spread = rec.spread();
    rep.max_ratio = std::max(rep.max_ratio, rec.estimated_constant);
    rep.max_spread = std::max(rep.max_spread, e.spread);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pointwise Hedberg estimate

struct HedbergPoint {
  Point x;
  double riesz = 0.0;
  double m_frac = 0.0;
  double m_0 = 0.0;
  double ratio = 0.0;
};

struct HedbergReport {
  double theta = 0.0;  // p gamma / (Q - lambda)
  double frac_order = 0.0;  // (Q - lambda) / (Q p)
  std::vector<HedbergPoint> points;
  std::size_t skipped = 0;
  double max_ratio = 0.0;
  double refined_max_ratio = 0.0;
  double relative_change = 0.0;
};

namespace detail {

inline double hedberg_max(const GroupDescriptor& g, const ExponentConfig& cfg, const TestFunction& u,
                          std::span<const Point> xs, std::span<const double> radii, const QuadratureSpec& spec,
                          double theta, double frac_order, HedbergReport* rep) {
  MaximalEvaluator ev(g, u, spec);
  RieszEvaluator riesz(g, cfg.gamma, spec);
  double best = 0.0;
  for (const auto& x : xs) {
    HedbergPoint hp;
    hp.x = x;
    hp.m_0 = ev.evaluate(x, radii, 0.0);
    hp.m_frac = ev.evaluate(x, radii, frac_order);
    if (hp.m_0 == 0.0 || hp.m_frac == 0.0) {
      if (rep) ++rep->skipped;
      continue;
    }
    hp.riesz = std::abs(riesz(u, x));
    hp.ratio = hp.riesz / (std::pow(hp.m_frac, theta) * std::pow(hp.m_0, 1.0 - theta));
    best = std::max(best, hp.ratio);
    if (rep) rep->points.push_back(hp);
  }
  return best;
}

}  // namespace detail

/// R(x) = |I_gamma u(x)| / (M_{(Q-lambda)/(Qp)} u(x)^theta M_0 u(x)^{1-theta}),
/// theta = p gamma / (Q - lambda), at the given quadrature level and one level finer.
inline HedbergReport hedberg_pointwise_check(const GroupDescriptor& g, const ExponentConfig& cfg,
                                             const TestFunction& u, std::span<const Point> sample_points,
                                             std::span<const double> radii, const QuadratureSpec& spec) {
  if (cfg.theorem != Theorem::adams_hls && cfg.theorem != Theorem::stein_weiss_adams)
    throw DomainError("hedberg_pointwise_check: needs a Riesz potential config");
  if (cfg.alpha != 0.0 || cfg.beta != 0.0) throw DomainError("hedberg_pointwise_check: needs alpha = beta = 0");
  for (const auto& x : sample_points) check_shape(g, x);
  HedbergReport rep;
  rep.theta = cfg.p * cfg.gamma / (cfg.Q - cfg.lambda);
  rep.frac_order = (cfg.Q - cfg.lambda) / (cfg.Q * cfg.p);
  rep.max_ratio = detail::hedberg_max(g, cfg, u, sample_points, radii, spec, rep.theta, rep.frac_order, &rep);
  rep.refined_max_ratio =
      detail::hedberg_max(g, cfg, u, sample_points, radii, spec.refined(), rep.theta, rep.frac_order, nullptr);
  if (rep.max_ratio > 0.0) rep.relative_change = std::abs(rep.refined_max_ratio / rep.max_ratio - 1.0);
  return rep;
}

}  // namespace morrey
