#pragma once

// Riesz potentials, maximal operators, the fractional Laplacian, horizontal
// derivatives, and the near/far and three-zone splittings of the potential.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/group.hpp"
#include "morrey_lab/quadrature.hpp"
#include "morrey_lab/test_function.hpp"

namespace morrey {

/// Geometric radius grid r_k = 2^{k/4}, anchored at 1 so that dilations by
/// powers of two map the grid into itself.
inline std::vector<double> geometric_radii(double r_min, double r_max, int per_octave = 4) {
  if (!(r_min > 0.0) || !(r_max >= r_min)) throw DomainError("geometric_radii: need 0 < r_min <= r_max");
  const double n = per_octave;
  const auto k0 = static_cast<int>(std::ceil(n * std::log2(r_min) - 1e-9));
  const auto k1 = static_cast<int>(std::floor(n * std::log2(r_max) + 1e-9));
  std::vector<double> r;
  for (int k = k0; k <= k1; ++k) r.push_back(std::exp2(k / n));
  if (r.empty()) r.push_back(r_min);
  return r;
}

/// Default radius grid from 2h up to 2 (R_max + decay_radius).
inline std::vector<double> default_radii(const QuadratureSpec& spec, double decay_radius) {
  return geometric_radii(2.0 * spec.effective_h(), 2.0 * (spec.R_max + decay_radius));
}

inline void check_radii(std::span<const double> radii) {
  if (radii.empty()) throw DomainError("radius grid is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw DomainError("radius grid must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("radius grid must be increasing");
  }
}

// ---------------------------------------------------------------------------
// Horizontal derivatives

/// Derivative controls: an explicit step forces finite differences.
struct DerivativeOptions {
  std::optional<double> step;
  bool prefer_analytic = true;
};

namespace detail {

inline void require_stratified(const GroupDescriptor& g) {
  if (g.law != GroupLaw::euclidean && g.law != GroupLaw::heisenberg1)
    throw UnsupportedGroupError("horizontal derivatives need a stratified group");
}

// x * exp(eps X_j): for both laws the first-layer directions are one-parameter
// subgroups eps -> eps e_j.
inline Point horizontal_shift(const GroupDescriptor& g, const Point& x, std::size_t j, double eps) {
  Point e(g.dimension);
  e[j] = eps;
  return mul(g, x, e);
}

inline double coordinate_scale(const Point& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]));
  return 1.0 + m;
}

}  // namespace detail

/// Horizontal gradient (X_1 u, ..., X_{N1} u); for H1, X = d_x - (y/2) d_t and
/// Y = d_y + (x/2) d_t.
inline HorizontalGradient horizontal_gradient(const GroupDescriptor& g, const TestFunction& u, const Point& x,
                                              const DerivativeOptions& opt = {}) {
  detail::require_stratified(g);
  check_shape(g, x);
  if (!opt.step && opt.prefer_analytic && u.has_gradient()) return u.gradient(x);
  const double eps = opt.step.value_or(std::cbrt(std::numeric_limits<double>::epsilon()) *
                                       detail::coordinate_scale(x));
  const std::size_t m = g.horizontal_dim();
  HorizontalGradient d(m);
  for (std::size_t j = 0; j < m; ++j) {
    d[j] = (u(detail::horizontal_shift(g, x, j, eps)) - u(detail::horizontal_shift(g, x, j, -eps))) / (2.0 * eps);
  }
  return d;
}

/// Sub-Laplacian sum_j X_j^2 u (the ordinary Laplacian on R^N).
inline double sub_laplacian(const GroupDescriptor& g, const TestFunction& u, const Point& x,
                            const DerivativeOptions& opt = {}) {
  detail::require_stratified(g);
  check_shape(g, x);
  if (!opt.step && opt.prefer_analytic && u.has_sub_laplacian()) return u.sub_laplacian(x);
  const double eps = opt.step.value_or(std::sqrt(std::sqrt(std::numeric_limits<double>::epsilon())) *
                                       detail::coordinate_scale(x));
  const double u0 = u(x);
  double acc = 0.0;
  for (std::size_t j = 0; j < g.horizontal_dim(); ++j) {
    acc += u(detail::horizontal_shift(g, x, j, eps)) - 2.0 * u0 + u(detail::horizontal_shift(g, x, j, -eps));
  }
  return acc / (eps * eps);
}

inline double norm(const HorizontalGradient& d) {
  double s = 0.0;
  for (double v : d) s += v * v;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Riesz potential

inline void check_gamma(const GroupDescriptor& g, double gamma) {
  if (!(gamma > 0.0 && gamma < g.Q)) throw DomainError("Riesz order gamma must lie in (0, Q)");
}

/// Repeated pointwise evaluation of I_gamma u(x) = int gauge(y^{-1}x)^{gamma-Q} u(y) dy
/// over the truncated ball around x, reusing one shell discretization.
class RieszEvaluator {
 public:
  RieszEvaluator(const GroupDescriptor& g, double gamma, const QuadratureSpec& spec)
      : g_(g), gamma_(gamma), shells_(std::make_shared<ShellQuadrature>(g, spec)) {
    check_gamma(g, gamma);
  }

  template <class F>
  double operator()(F&& u, const Point& x) const {
    check_shape(g_, x);
    return shell_sum(*shells_, gamma_ - g_.Q, x, u);
  }

  const ShellQuadrature& shells() const { return *shells_; }
  double gamma() const { return gamma_; }

 private:
  GroupDescriptor g_;
  double gamma_;
  std::shared_ptr<const ShellQuadrature> shells_;
};

/// I_gamma u(x) on the truncated domain.
inline double riesz_potential(const GroupDescriptor& g, double gamma, const TestFunction& u, const Point& x,
                              const QuadratureSpec& spec) {
  check_gamma(g, gamma);
  return RieszEvaluator(g, gamma, spec)(u, x);
}

/// I_gamma F at every node of a lattice, for a field F given by its node values.
///
/// Euclidean groups use product integration against exact cell moments of the
/// kernel, a discrete convolution; other groups fall back to pointwise shell
/// quadrature of the field's piecewise-constant extension.
inline std::vector<double> riesz_field(const Lattice& lat, double gamma, const std::vector<double>& values,
                                       std::optional<QuadratureSpec> fallback = std::nullopt) {
  const auto& g = lat.group();
  check_gamma(g, gamma);
  if (values.size() != static_cast<std::size_t>(lat.size())) throw ShapeError("riesz_field: field size mismatch");
  const std::size_t n = g.dimension;
  const double a = gamma - g.Q;
  std::vector<double> out(values.size(), 0.0);
  if (g.law != GroupLaw::euclidean) {
    QuadratureSpec spec = fallback.value_or(QuadratureSpec{});
    spec.lattice_h = lat.h();
    spec.refinement_level = 0;
    RieszEvaluator ev(g, gamma, spec);
    auto field = [&](const Point& y) {
      std::int64_t flat = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double pos = y[i] / lat.step(i) + static_cast<double>(lat.count(i) / 2);
        if (pos < 0.0 || pos >= static_cast<double>(lat.count(i))) return 0.0;
        flat += static_cast<std::int64_t>(pos) * lat.stride(i);
      }
      return values[static_cast<std::size_t>(flat)];
    };
    for (std::int64_t k = 0; k < lat.size(); ++k) {
      if (!lat.inside(k)) continue;
      out[static_cast<std::size_t>(k)] = ev(field, lat.node(k));
    }
    return out;
  }
  // Kernel moments K(d) = int_{cell at offset d} |y|^a dy for every offset d.
  std::array<std::int64_t, kMaxDim> side{}, kstride{};
  std::int64_t ksize = 1;
  for (std::size_t i = 0; i < n; ++i) {
    side[i] = 2 * lat.count(i) - 1;
    ksize *= side[i];
  }
  for (std::size_t i = n; i-- > 0;) kstride[i] = (i + 1 < n) ? kstride[i + 1] * side[i + 1] : 1;
  std::vector<double> K(static_cast<std::size_t>(ksize));
  const double vol = lat.cell_volume();
  for (std::int64_t f = 0; f < ksize; ++f) {
    Point lo(n), hi(n), mid(n);
    bool near = true;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t d = (f / kstride[i]) % side[i] - (lat.count(i) - 1);
      mid[i] = static_cast<double>(d) * lat.step(i);
      lo[i] = mid[i] - 0.5 * lat.step(i);
      hi[i] = mid[i] + 0.5 * lat.step(i);
      near = near && std::abs(d) <= 3;
    }
    K[static_cast<std::size_t>(f)] =
        vol * (near ? box_power_average(g, lo, hi, a) : std::pow(gauge(g, mid), a));
  }
  std::vector<std::int64_t> support;
  for (std::int64_t j = 0; j < lat.size(); ++j)
    if (values[static_cast<std::size_t>(j)] != 0.0) support.push_back(j);
  std::array<std::int64_t, kMaxDim> ii{}, jj{};
  for (std::int64_t i = 0; i < lat.size(); ++i) {
    if (!lat.inside(i)) continue;
    for (std::size_t d = 0; d < n; ++d) ii[d] = (i / lat.stride(d)) % lat.count(d);
    std::vector<double> terms;
    terms.reserve(support.size());
    for (std::int64_t j : support) {
      std::int64_t kf = 0;
      for (std::size_t d = 0; d < n; ++d) {
        jj[d] = (j / lat.stride(d)) % lat.count(d);
        kf += (ii[d] - jj[d] + lat.count(d) - 1) * kstride[d];
      }
      terms.push_back(values[static_cast<std::size_t>(j)] * K[static_cast<std::size_t>(kf)]);
    }
    out[static_cast<std::size_t>(i)] = pairwise_sum(terms);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maximal operators

/// Ball averages of |u| on a fixed lattice, for repeated maximal-function queries.
///
/// The denominator is the lattice measure of the same soft ball, so averages of
/// constants are exact for balls inside the lattice box.
class MaximalEvaluator {
 public:
  MaximalEvaluator(const GroupDescriptor& g, const TestFunction& u, const QuadratureSpec& spec)
      : MaximalEvaluator(Lattice(g, spec.R_max, spec.effective_h()), u) {}

  /// The amplitude of u is factored out so that M(c u) = |c| M u holds exactly.
  MaximalEvaluator(const Lattice& lat, const TestFunction& u)
      : MaximalEvaluator(lat, abs_masses(lat, u.unit_amplitude())) {
    scale_ = std::abs(u.amplitude());
  }

  /// Masses are |u| times cell volume per node.
  MaximalEvaluator(const Lattice& lat, std::vector<double> masses)
      : mass_(lat, std::move(masses)), volume_(lat, std::vector<double>(static_cast<std::size_t>(lat.size()),
                                                                         lat.cell_volume())) {}

  /// max over the radius grid of |B(x,r)|^{alpha-1} int_{B(x,r)} |u|.
  double evaluate(const Point& x, std::span<const double> radii, double alpha) const {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("fractional maximal order must lie in [0,1)");
    check_radii(radii);
    double best = 0.0;
    for (double r : radii) {
      const double m = mass_.integrate(x, r);
      if (m == 0.0) continue;
      const double v = volume_.integrate(x, r);
      best = std::max(best, m * std::pow(v, alpha - 1.0));
    }
    return scale_ * best;
  }

  const Lattice& lattice() const { return mass_.lattice(); }

  static std::vector<double> abs_masses(const Lattice& lat, const TestFunction& u) {
    PowerWeight pw(lat, u.origin_power());
    const auto& g = lat.group();
    std::vector<double> m(static_cast<std::size_t>(lat.size()), 0.0);
    Point p(g.dimension);
    for (std::int64_t k = 0; k < lat.size(); ++k) {
      lat.node_coords(k, p.data());
      const double r = detail::gauge_raw(g, p.data());
      if (r > lat.radius()) continue;
      double v = std::abs(u(p));
      if (u.origin_power() != 0.0 && v != 0.0) v = v / std::pow(r, u.origin_power()) * pw.cell_average(k, p.data());
      m[static_cast<std::size_t>(k)] = v * lat.cell_volume();
    }
    return m;
  }

 private:
  BallIntegrator mass_;
  BallIntegrator volume_;
  double scale_ = 1.0;
};

/// Fractional maximal function M_alpha u(x) over a radius grid (a lower bound of the supremum).
inline double frac_maximal(const GroupDescriptor& g, double alpha, const TestFunction& u, const Point& x,
                           std::span<const double> radii, const QuadratureSpec& spec) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("fractional maximal order must lie in [0,1)");
  check_shape(g, x);
  check_radii(radii);
  return MaximalEvaluator(g, u, spec).evaluate(x, radii, alpha);
}

/// Hardy-Littlewood maximal function; identical to frac_maximal with alpha = 0.
inline double hl_maximal(const GroupDescriptor& g, const TestFunction& u, const Point& x,
                         std::span<const double> radii, const QuadratureSpec& spec) {
  return frac_maximal(g, 0.0, u, x, radii, spec);
}

// ---------------------------------------------------------------------------
// Fractional Laplacian

/// A(N,s) = 4^s Gamma(N/2+s) / (pi^{N/2} |Gamma(-s)|), the constant giving symbol |xi|^{2s}.
inline double frac_laplacian_constant(std::size_t N, double s) {
  const double n = static_cast<double>(N);
  return std::pow(4.0, s) * std::tgamma(0.5 * n + s) /
         (std::pow(M_PI, 0.5 * n) * std::abs(boost::math::tgamma(-s)));
}

/// (-Delta)^s u(x) from the symmetric second-difference integral.
///
/// Dyadic shells in y cover sigma^K R_max <= |y| <= R_max; inside the innermost
/// ball the second-order Taylor term is integrated exactly.  The tail |y| > R_max
/// contributes 2 (u(x) - m) sigma R_max^{-2s} / (2s), with m the mean of u over the
/// outermost shell (0 for decaying inputs, u itself for constants).
inline double frac_laplacian(const GroupDescriptor& g, double s, const TestFunction& u, const Point& x,
                             const QuadratureSpec& spec) {
  if (g.law != GroupLaw::euclidean) throw UnsupportedGroupError("fractional Laplacian is defined on R^N only");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional Laplacian order s must lie in (0,1)");
  check_shape(g, x);
  const GroupDescriptor ge = GroupDescriptor::euclidean(g.dimension);
  ShellQuadrature shells(ge, spec);
  const double n = static_cast<double>(g.dimension);
  const double u0 = u(x);
  std::vector<double> terms;
  terms.reserve(shells.nodes().size());
  std::vector<double> outer_vals, outer_wts;
  const double outer_from = spec.shell_ratio * spec.R_max;
  Point xp(g.dimension), xm(g.dimension);
  for (const auto& nd : shells.nodes()) {
    for (std::size_t i = 0; i < g.dimension; ++i) {
      xp[i] = x[i] + nd.z[i];
      xm[i] = x[i] - nd.z[i];
    }
    const double up = u(xp), um = u(xm);
    if (nd.gauge >= outer_from) {
      outer_vals.push_back(0.5 * (up + um) * nd.weight);
      outer_wts.push_back(nd.weight);
    }
    const double diff = 2.0 * u0 - up - um;
    if (diff == 0.0) continue;
    terms.push_back(diff * std::pow(nd.gauge, -n - 2.0 * s) * nd.weight);
  }
  const double outer_mean = outer_wts.empty() ? 0.0 : pairwise_sum(outer_vals) / pairwise_sum(outer_wts);
  const double sigma = shells.sphere_measure_value();
  const double rho = shells.inner_radius();
  const double lap = sub_laplacian(ge, u, x);
  const double inner = -(lap / n) * sigma * std::pow(rho, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  const double tail = 2.0 * (u0 - outer_mean) * sigma * std::pow(spec.R_max, -2.0 * s) / (2.0 * s);
  return 0.5 * frac_laplacian_constant(g.dimension, s) * (pairwise_sum(terms) + inner + tail);
}

// ---------------------------------------------------------------------------
// Splittings of the potential

struct HedbergSplit {
  double j1 = 0.0;
  double j2 = 0.0;
  double rho = 0.0;
};

/// J1 = int_{gauge(y^{-1}x) <= rho} kernel |u|, J2 the complement, on the same nodes.
inline HedbergSplit hedberg_split(const GroupDescriptor& g, double gamma, const TestFunction& u, const Point& x,
                                  double rho, const QuadratureSpec& spec) {
  check_gamma(g, gamma);
  check_shape(g, x);
  if (!(rho > 0.0)) throw DomainError("hedberg_split: rho must be positive");
  ShellQuadrature shells(g, spec);
  const double a = gamma - g.Q;
  std::vector<double> near, far;
  for (const auto& nd : shells.nodes()) {
    const double v = std::abs(u(mul(g, x, nd.z)));
    if (v == 0.0) continue;
    (nd.gauge <= rho ? near : far).push_back(v * std::pow(nd.gauge, a) * nd.weight);
  }
  // Innermost ball B(0, rho_K): |u(x)| sigma r^gamma / gamma up to min(rho, rho_K).
  const double sigma = shells.sphere_measure_value();
  const double rk = shells.inner_radius();
  const double ux = std::abs(u(x));
  const double inside = ux * sigma * std::pow(std::min(rho, rk), gamma) / gamma;
  const double outside = ux * sigma * (std::pow(rk, gamma) - std::pow(std::min(rho, rk), gamma)) / gamma;
  HedbergSplit h;
  h.rho = rho;
  h.j1 = pairwise_sum(near) + inside;
  h.j2 = pairwise_sum(far) + outside;
  return h;
}

/// rho = (m_frac / m_0)^{p/(Q - lambda)}, the radius balancing the two Hedberg bounds.
inline double hedberg_optimal_rho(double m_frac, double m_0, double p, double Q, double lambda) {
  if (!(m_frac > 0.0) || !(m_0 > 0.0))
    throw DomainError("hedberg_optimal_rho: maximal values must be positive");
  if (!(lambda > 0.0 && lambda < Q)) throw DomainError("hedberg_optimal_rho: need 0 < lambda < Q");
  return std::pow(m_frac / m_0, p / (Q - lambda));
}

struct ThreeZones {
  double z1 = 0.0;
  double z2 = 0.0;
  double z3 = 0.0;
  double total() const { return z1 + z2 + z3; }
};

/// Kernel integrals of |u| over gauge(y) < gauge(x)/2, gauge(x)/2 <= gauge(y) <= 2 gauge(x),
/// and gauge(y) > 2 gauge(x).
inline ThreeZones three_zone_split(const GroupDescriptor& g, double gamma, const TestFunction& u, const Point& x,
                                   const QuadratureSpec& spec) {
  check_gamma(g, gamma);
  check_shape(g, x);
  const double gx = gauge(g, x);
  if (gx == 0.0) throw DomainError("three_zone_split: x must differ from the identity");
  ShellQuadrature shells(g, spec);
  const double a = gamma - g.Q;
  std::vector<double> zone[3];
  for (const auto& nd : shells.nodes()) {
    const Point y = mul(g, x, nd.z);
    const double v = std::abs(u(y));
    if (v == 0.0) continue;
    const double gy = gauge(g, y);
    const int k = gy < 0.5 * gx ? 0 : (gy <= 2.0 * gx ? 1 : 2);
    zone[k].push_back(v * std::pow(nd.gauge, a) * nd.weight);
  }
  ThreeZones z;
  z.z1 = pairwise_sum(zone[0]);
  z.z2 = pairwise_sum(zone[1]);
  z.z3 = pairwise_sum(zone[2]);
  // The innermost ball around x is attributed to the middle zone, which contains
  // it whenever its radius is below gauge(x)/2.
  z.z2 += std::abs(u(x)) * shells.inner_kernel_moment(a);
  return z;
}

}  // namespace morrey
