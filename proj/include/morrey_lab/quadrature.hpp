#pragma once

// Discretization engines: the anisotropic midpoint lattice, dyadic shells around
// a singular point, singular-weight cell moments, and the multilevel ball
// integrator that backs every maximal-function and Morrey evaluation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/group.hpp"
#include "morrey_lab/quadrature_spec.hpp"

namespace morrey {

/// Deterministic pairwise summation.
inline double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kBlock = 128;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Soft indicator of {d < r} with a linear ramp of width w centred on d = r.
inline double ramp_weight(double r, double d, double w) {
  const double t = (r - d) / w + 0.5;
  return t <= 0.0 ? 0.0 : (t >= 1.0 ? 1.0 : t);
}

/// Midpoint lattice covering the truncated domain {gauge <= R}.
///
/// Coordinate i has spacing h^{weight_i} and an even node count, so nodes sit
/// at (k + 1/2) * spacing symmetrically around the identity.  Flat indices are
/// row-major with coordinate 0 slowest.
class Lattice {
 public:
  Lattice(const GroupDescriptor& g, double R, double h) : g_(g), R_(R), h_(h) {
    if (!(h > 0.0) || !(R > h)) throw DomainError("Lattice: require R > h > 0");
    size_ = 1;
    for (std::size_t i = 0; i < g.dimension; ++i) {
      step_[i] = std::pow(h, g.weights[i]);
      // Box of B(0,R); for H1 the t-extent is R^2/4.
      double extent = std::pow(R, g.weights[i]);
      if (g.law == GroupLaw::heisenberg1 && i == 2) extent = 0.25 * R * R;
      count_[i] = 2 * static_cast<std::int64_t>(std::ceil(extent / step_[i] - 1e-9));
      size_ *= count_[i];
    }
    cell_volume_ = 1.0;
    for (std::size_t i = 0; i < g.dimension; ++i) cell_volume_ *= step_[i];
    for (std::size_t i = g.dimension; i-- > 0;) {
      stride_[i] = (i + 1 < g.dimension) ? stride_[i + 1] * count_[i + 1] : 1;
    }
  }

  const GroupDescriptor& group() const { return g_; }
  double radius() const { return R_; }
  double h() const { return h_; }
  std::int64_t size() const { return size_; }
  double cell_volume() const { return cell_volume_; }
  double step(std::size_t i) const { return step_[i]; }
  std::int64_t count(std::size_t i) const { return count_[i]; }
  std::int64_t stride(std::size_t i) const { return stride_[i]; }

  double coordinate(std::size_t i, std::int64_t k) const {
    return (static_cast<double>(k - count_[i] / 2) + 0.5) * step_[i];
  }

  void node_coords(std::int64_t flat, double* x) const {
    for (std::size_t i = 0; i < g_.dimension; ++i) {
      const std::int64_t k = (flat / stride_[i]) % count_[i];
      x[i] = coordinate(i, k);
    }
  }

  Point node(std::int64_t flat) const {
    Point p(g_.dimension);
    node_coords(flat, p.data());
    return p;
  }

  bool inside(std::int64_t flat) const {
    double x[kMaxDim];
    node_coords(flat, x);
    return detail::gauge_raw(g_, x) <= R_;
  }

  /// Index of the node whose cell contains coordinate value v along axis i (clamped).
  std::int64_t index_of(std::size_t i, double v) const {
    const auto k = static_cast<std::int64_t>(std::floor(v / step_[i])) + count_[i] / 2;
    return std::clamp<std::int64_t>(k, 0, count_[i] - 1);
  }

  /// Samples f at every node of the truncated domain; nodes outside hold 0.
  template <class F>
  std::vector<double> sample(F&& f) const {
    std::vector<double> out(static_cast<std::size_t>(size_), 0.0);
    Point p(g_.dimension);
    for (std::int64_t n = 0; n < size_; ++n) {
      node_coords(n, p.data());
      if (detail::gauge_raw(g_, p.data()) > R_) continue;
      out[static_cast<std::size_t>(n)] = f(p);
    }
    return out;
  }

 private:
  GroupDescriptor g_;
  double R_;
  double h_;
  std::array<double, kMaxDim> step_{};
  std::array<std::int64_t, kMaxDim> count_{};
  std::array<std::int64_t, kMaxDim> stride_{};
  std::int64_t size_ = 0;
  double cell_volume_ = 0.0;
};

namespace detail {

inline const std::array<double, 6>& gl6_nodes() {
  static const std::array<double, 6> x = {-0.9324695142031521, -0.6612093864662645,
                                          -0.2386191860831969, 0.2386191860831969,
                                          0.6612093864662645,  0.9324695142031521};
  return x;
}
inline const std::array<double, 6>& gl6_weights() {
  static const std::array<double, 6> w = {0.1713244923791704, 0.3607615730481386,
                                          0.4679139345726910, 0.4679139345726910,
                                          0.3607615730481386, 0.1713244923791704};
  return w;
}

struct Box {
  std::array<double, kMaxDim> lo{};
  std::array<double, kMaxDim> hi{};
};

inline double box_gl_average(const GroupDescriptor& g, const Box& b, double e) {
  const auto& xs = gl6_nodes();
  const auto& ws = gl6_weights();
  const std::size_t n = g.dimension;
  std::array<int, kMaxDim> idx{};
  double acc = 0.0;
  double x[kMaxDim];
  for (;;) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mid = 0.5 * (b.lo[i] + b.hi[i]), half = 0.5 * (b.hi[i] - b.lo[i]);
      x[i] = mid + half * xs[static_cast<std::size_t>(idx[i])];
      w *= 0.5 * ws[static_cast<std::size_t>(idx[i])];
    }
    acc += w * std::pow(gauge_raw(g, x), e);
    std::size_t d = 0;
    while (d < n && ++idx[d] == 6) idx[d++] = 0;
    if (d == n) break;
  }
  return acc;
}

// Average of gauge^e over a box whose closure avoids the origin.
inline double regular_box_average(const GroupDescriptor& g, const Box& b, double e, int depth) {
  const std::size_t n = g.dimension;
  double near[kMaxDim], size = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    near[i] = (b.lo[i] > 0.0) ? b.lo[i] : (b.hi[i] < 0.0 ? b.hi[i] : 0.0);
    size = std::max(size, std::pow(b.hi[i] - b.lo[i], 1.0 / g.weights[i]));
  }
  const double dist = gauge_raw(g, near);
  if (depth >= 5 || dist > 2.0 * size) return box_gl_average(g, b, e);
  // Split each axis in two and recurse.
  double acc = 0.0;
  const std::size_t parts = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < parts; ++mask) {
    Box c;
    for (std::size_t i = 0; i < n; ++i) {
      const double mid = 0.5 * (b.lo[i] + b.hi[i]);
      c.lo[i] = (mask >> i & 1) ? mid : b.lo[i];
      c.hi[i] = (mask >> i & 1) ? b.hi[i] : mid;
    }
    acc += regular_box_average(g, c, e, depth + 1) / static_cast<double>(parts);
  }
  return acc;
}

// Average of gauge^e over [0,a_1] x ... x [0,a_N] using dilation self-similarity:
// the corner sub-box D_{1/2}(box) carries average 2^{-e} A.
inline double corner_box_average(const GroupDescriptor& g, const std::array<double, kMaxDim>& a,
                                 double e) {
  const std::size_t n = g.dimension;
  std::array<int, kMaxDim> splits{};
  std::size_t pieces = 1;
  for (std::size_t i = 0; i < n; ++i) {
    splits[i] = 1 << static_cast<int>(g.weights[i]);
    pieces *= static_cast<std::size_t>(splits[i]);
  }
  std::array<int, kMaxDim> idx{};
  double others = 0.0;
  for (;;) {
    bool corner = true;
    Box c;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = a[i] / splits[i];
      c.lo[i] = idx[i] * w;
      c.hi[i] = (idx[i] + 1) * w;
      corner = corner && idx[i] == 0;
    }
    if (!corner) others += regular_box_average(g, c, e, 1);
    std::size_t d = 0;
    while (d < n && ++idx[d] == splits[d]) idx[d++] = 0;
    if (d == n) break;
  }
  const double inv_pieces = 1.0 / static_cast<double>(pieces);
  return others * inv_pieces / (1.0 - std::pow(2.0, -g.Q - e));
}

}  // namespace detail

/// Average of gauge(x)^e over the coordinate box [lo, hi]; handles boxes that
/// contain the origin provided e > -Q.  Gauges must be even in every coordinate.
inline double box_power_average(const GroupDescriptor& g, const Point& lo, const Point& hi, double e) {
  if (e == 0.0) return 1.0;
  const std::size_t n = g.dimension;
  bool touches = true;
  for (std::size_t i = 0; i < n; ++i) touches = touches && lo[i] <= 0.0 && hi[i] >= 0.0;
  if (!touches) {
    detail::Box b;
    for (std::size_t i = 0; i < n; ++i) b.lo[i] = lo[i], b.hi[i] = hi[i];
    return detail::regular_box_average(g, b, e, 0);
  }
  if (e <= -g.Q) throw DomainError("box_power_average: exponent not integrable at the origin");
  // Split at the origin into orthant boxes with the singularity at a corner.
  double vol = 1.0;
  for (std::size_t i = 0; i < n; ++i) vol *= hi[i] - lo[i];
  double acc = 0.0;
  const std::size_t parts = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < parts; ++mask) {
    std::array<double, kMaxDim> a{};
    double pv = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = (mask >> i & 1) ? hi[i] : -lo[i];
      pv *= a[i];
    }
    if (pv <= 0.0) continue;
    acc += pv * detail::corner_box_average(g, a, e);
  }
  return acc / vol;
}

/// Per-node correction factors <gauge^e>_cell / gauge(node)^e for the nodes within
/// `radius_cells` cells of the identity; 1 elsewhere.  Used for product
/// integration of power weights on the midpoint lattice.
class PowerWeight {
 public:
  PowerWeight(const Lattice& lat, double exponent, int radius_cells = 3)
      : lat_(&lat), e_(exponent), r_(radius_cells) {
    if (e_ == 0.0) return;
    const std::size_t n = lat.group().dimension;
    std::int64_t side = 2 * r_;
    std::int64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= side;
    factors_.assign(static_cast<std::size_t>(total), 1.0);
    std::array<std::int64_t, kMaxDim> idx{};
    for (std::int64_t flat = 0; flat < total; ++flat) {
      std::int64_t rem = flat;
      Point lo(n), hi(n), mid(n);
      for (std::size_t i = n; i-- > 0;) {
        idx[i] = rem % side - r_;
        rem /= side;
        lo[i] = static_cast<double>(idx[i]) * lat.step(i);
        hi[i] = lo[i] + lat.step(i);
        mid[i] = 0.5 * (lo[i] + hi[i]);
      }
      const double avg = box_power_average(lat.group(), lo, hi, e_);
      factors_[static_cast<std::size_t>(flat)] = avg / std::pow(gauge(lat.group(), mid), e_);
    }
  }

  /// Cell average of gauge^e at lattice node `flat`.
  double cell_average(std::int64_t flat, const double* x) const {
    const double point = std::pow(detail::gauge_raw(lat_->group(), x), e_);
    if (factors_.empty()) return point;
    const std::size_t n = lat_->group().dimension;
    std::int64_t local = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t k = (flat / lat_->stride(i)) % lat_->count(i) - lat_->count(i) / 2;
      if (k < -r_ || k >= r_) return point;
      local = local * (2 * r_) + (k + r_);
    }
    return point * factors_[static_cast<std::size_t>(local)];
  }

 private:
  const Lattice* lat_;
  double e_;
  int r_;
  std::vector<double> factors_;
};

/// Midpoint rule over the truncated lattice at the given quadrature level and one level
/// finer; the value is the finer sum and the error estimate their difference.
inline IntegrationResult lattice_integrate(const GroupDescriptor& g,
                                           const std::function<double(const Point&)>& f,
                                           const QuadratureSpec& spec,
                                           const std::optional<Point>& singular_point = std::nullopt) {
  spec.validate();
  auto level_sum = [&](double h, std::int64_t& nodes) {
    Lattice lat(g, spec.R_max, h);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(lat.size()));
    Point p(g.dimension);
    for (std::int64_t n = 0; n < lat.size(); ++n) {
      lat.node_coords(n, p.data());
      if (detail::gauge_raw(g, p.data()) > spec.R_max) continue;
      if (singular_point && distance(g, *singular_point, p) < 1e-12) continue;
      const double v = f(p);
      if (!std::isfinite(v)) throw IntegrandError("non-finite integrand at node " + p.str());
      values.push_back(v);
      ++nodes;
    }
    return pairwise_sum(values) * lat.cell_volume();
  };
  IntegrationResult r;
  const double coarse = level_sum(spec.effective_h(), r.nodes_used);
  const double fine = level_sum(0.5 * spec.effective_h(), r.nodes_used);
  r.value = fine;
  r.error_estimate = std::abs(fine - coarse);
  return r;
}

/// Dyadic shells {shell_ratio^{k+1} R_max <= gauge <= shell_ratio^k R_max} around the
/// identity, each discretized by its own midpoint lattice with soft edges that
/// telescope to a partition of unity, plus an innermost ball of radius
/// `inner_radius` handled in closed form by the caller.
class ShellQuadrature {
 public:
  struct Node {
    Point z;
    double gauge;
    double weight;  // cell volume times the shell partition weight
  };

  ShellQuadrature(const GroupDescriptor& g, const QuadratureSpec& spec) : g_(g) {
    spec.validate();
    const double h = spec.effective_h();
    const double s = spec.shell_ratio;
    // Shells are resolved relative to their radius; refinement halves both the
    // absolute and the relative spacing.
    const double rel = (1.0 - s) * 0.25 / std::ldexp(1.0, spec.refinement_level);
    auto spacing = [&](double rho) { return std::min(h, rho * rel); };
    std::vector<double> radii{spec.R_max};
    while (radii.back() > spec.inner_cutoff * h) radii.push_back(radii.back() * s);
    inner_radius_ = radii.back();
    for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
      const double outer = radii[k], inner = radii[k + 1];
      const double hk = spacing(outer);
      const double w_out = spacing(outer), w_in = spacing(inner);
      Lattice lat(g, outer + w_out, hk);
      Point p(g.dimension);
      for (std::int64_t n = 0; n < lat.size(); ++n) {
        lat.node_coords(n, p.data());
        const double d = detail::gauge_raw(g, p.data());
        const double w = ramp_weight(outer, d, w_out) - ramp_weight(inner, d, w_in);
        if (w <= 0.0) continue;
        nodes_.push_back({p, d, w * lat.cell_volume()});
      }
    }
    sigma_ = sphere_measure(g, fine_volume_spec());
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  double inner_radius() const { return inner_radius_; }
  double sphere_measure_value() const { return sigma_; }
  const GroupDescriptor& group() const { return g_; }

  /// int_{B(0, inner_radius)} gauge^a dz for a > -Q.
  double inner_kernel_moment(double a) const {
    return sigma_ * std::pow(inner_radius_, a + g_.Q) / (a + g_.Q);
  }

 private:
  GroupDescriptor g_;
  std::vector<Node> nodes_;
  double inner_radius_ = 0.0;
  double sigma_ = 0.0;
};

/// Sum over shell nodes of F(z) * gauge(z)^a plus u(center) times the closed-form
/// kernel moment of the innermost ball.  F receives the translated point center*z.
template <class F>
double shell_sum(const ShellQuadrature& sq, double a, const Point& center, F&& u) {
  const auto& g = sq.group();
  std::vector<double> terms;
  terms.reserve(sq.nodes().size());
  for (const auto& nd : sq.nodes()) {
    const Point y = mul(g, center, nd.z);
    const double v = u(y);
    if (v == 0.0) continue;
    if (!std::isfinite(v)) throw IntegrandError("non-finite integrand at node " + y.str());
    terms.push_back(v * std::pow(nd.gauge, a) * nd.weight);
  }
  return pairwise_sum(terms) + u(center) * sq.inner_kernel_moment(a);
}

/// Integral of u(y) gauge(y^{-1} center)^a over the truncated domain for a
/// locally integrable kernel exponent a in (-Q, 0).
inline IntegrationResult shell_integrate_singular(const GroupDescriptor& g, double a,
                                                  const std::function<double(const Point&)>& u,
                                                  const Point& center, const QuadratureSpec& spec) {
  check_shape(g, center);
  if (a <= -g.Q) throw DomainError("shell_integrate_singular: kernel exponent <= -Q diverges");
  if (a >= 0.0)
    throw DomainError("shell_integrate_singular: non-singular kernel; use lattice_integrate");
  ShellQuadrature coarse(g, spec), fine(g, spec.refined());
  IntegrationResult r;
  const double vc = shell_sum(coarse, a, center, u);
  const double vf = shell_sum(fine, a, center, u);
  r.value = vf;
  r.error_estimate = std::abs(vf - vc);
  r.nodes_used = static_cast<std::int64_t>(coarse.nodes().size() + fine.nodes().size());
  return r;
}

/// Multilevel integrator of a non-negative lattice mass over soft quasi-balls.
///
/// Level 0 holds the per-node masses; each coarser level merges 2^{weight_i}
/// cells per axis and stores mass-weighted centroids.  A ball of radius r is
/// evaluated on the coarsest level whose cell width is at most r/resolution,
/// with a ramp of one cell width at the boundary.
class BallIntegrator {
 public:
  BallIntegrator(const Lattice& lat, std::vector<double> masses, double resolution = 16.0)
      : lat_(lat), resolution_(resolution) {
    if (masses.size() != static_cast<std::size_t>(lat.size()))
      throw ShapeError("BallIntegrator: mass vector does not match the lattice");
    const std::size_t n = lat.group().dimension;
    Level base;
    base.width = lat.h();
    for (std::size_t i = 0; i < n; ++i) {
      base.count[i] = lat.count(i);
      base.factor[i] = 1;
    }
    base.mass = std::move(masses);
    levels_.push_back(std::move(base));
    for (int l = 1; l < 40; ++l) {
      const Level& prev = levels_.back();
      bool any_big = false;
      for (std::size_t i = 0; i < n; ++i) any_big = any_big || prev.count[i] > 2;
      if (!any_big) break;
      levels_.push_back(coarsen(prev));
    }
    total_ = pairwise_sum(levels_.front().mass);
    euclidean_rows_ = lat.group().law == GroupLaw::euclidean && lat.group().gauge == GaugeKind::euclidean;
    if (euclidean_rows_)
      for (auto& L : levels_) fill_row_cumsum(L, n);
  }

  const Lattice& lattice() const { return lat_; }
  double total_mass() const { return total_; }
  std::size_t level_count() const { return levels_.size(); }

  /// Integral of the mass over the soft ball B(c, r).
  double integrate(const Point& c, double r) const {
    const auto& g = lat_.group();
    const std::size_t n = g.dimension;
    std::size_t li = 0;
    while (li + 1 < levels_.size() && levels_[li + 1].width * resolution_ <= r) ++li;
    const Level& L = levels_[li];
    const double w = L.width;
    auto [lo, hi] = ball_bounding_box(g, c, r + 0.5 * w);
    std::array<std::int64_t, kMaxDim> kl{}, kh{}, stride{};
    for (std::size_t i = 0; i < n; ++i) {
      kl[i] = std::clamp<std::int64_t>(lat_.index_of(i, lo[i]) / L.factor[i], 0, L.count[i] - 1);
      kh[i] = std::clamp<std::int64_t>(lat_.index_of(i, hi[i]) / L.factor[i], 0, L.count[i] - 1);
    }
    for (std::size_t i = n; i-- > 0;) stride[i] = (i + 1 < n) ? stride[i + 1] * L.count[i + 1] : 1;
    std::array<std::int64_t, kMaxDim> idx = kl;
    double acc = 0.0;
    double x[kMaxDim];
    const double* cd = c.data();
    const std::size_t last = n - 1;
    const bool rows = euclidean_rows_;
    const double rho = r - 0.5 * w;
    for (;;) {
      std::int64_t flat = 0;
      for (std::size_t i = 0; i < last; ++i) flat += idx[i] * stride[i];
      auto edge = [&](std::int64_t k) {
        const std::size_t f = static_cast<std::size_t>(flat + k);
        const double m = L.mass[f];
        if (m == 0.0) return;
        if (li == 0) {
          for (std::size_t i = 0; i < last; ++i) x[i] = lat_.coordinate(i, idx[i]);
          x[last] = lat_.coordinate(last, k);
        } else {
          for (std::size_t i = 0; i < n; ++i) x[i] = L.centroid[i][f];
        }
        const double d = detail::distance_raw(g, cd, x);
        acc += m * ramp_weight(r, d, w);
      };
      // Cells whose whole extent lies within r - w/2 have ramp weight 1; on
      // Euclidean balls they form one run per row, summed from row prefix sums.
      std::int64_t in_lo = kh[last] + 1, in_hi = kh[last];
      if (rows && rho > 0.0) {
        double a = 0.0;
        for (std::size_t i = 0; i < last; ++i) {
          const auto [xl, xh] = cell_extent(L, i, idx[i]);
          const double far = std::max(std::abs(cd[i] - xl), std::abs(cd[i] - xh));
          a += far * far;
        }
        if (a < rho * rho) {
          const double sl = std::sqrt(rho * rho - a);
          const double st = lat_.step(last);
          const double half = static_cast<double>(lat_.count(last) / 2);
          const auto f = static_cast<double>(L.factor[last]);
          in_lo = static_cast<std::int64_t>(std::ceil(((cd[last] - sl) / st + half - 0.5) / f)) + 1;
          in_hi = static_cast<std::int64_t>(std::floor(((cd[last] + sl) / st + half + 0.5) / f)) - 2;
          in_lo = std::max(in_lo, kl[last]);
          in_hi = std::min(in_hi, kh[last]);
          if (in_lo > in_hi) {
            in_lo = kh[last] + 1;
            in_hi = kh[last];
          }
        }
      }
      if (in_lo <= in_hi) {
        for (std::int64_t k = kl[last]; k < in_lo; ++k) edge(k);
        const auto& cum = L.row_cumsum;
        const double upto = cum[static_cast<std::size_t>(flat + in_hi)];
        const double before = in_lo > 0 ? cum[static_cast<std::size_t>(flat + in_lo - 1)] : 0.0;
        acc += upto - before;
        for (std::int64_t k = in_hi + 1; k <= kh[last]; ++k) edge(k);
      } else {
        for (std::int64_t k = kl[last]; k <= kh[last]; ++k) edge(k);
      }
      if (last == 0) break;
      std::size_t d = last;
      bool done = true;
      while (d-- > 0) {
        if (++idx[d] <= kh[d]) {
          done = false;
          break;
        }
        idx[d] = kl[d];
      }
      if (done) break;
    }
    return acc;
  }

 private:
  struct Level {
    std::array<std::int64_t, kMaxDim> count{};
    std::array<std::int64_t, kMaxDim> factor{};  // fine cells per coarse cell per axis
    double width = 0.0;
    std::vector<double> mass;
    std::vector<double> row_cumsum;  // running mass sum along the last axis, per row
    std::array<std::vector<double>, kMaxDim> centroid;
  };

  // Coordinate range of the fine nodes merged into cell k of level L along axis i.
  std::pair<double, double> cell_extent(const Level& L, std::size_t i, std::int64_t k) const {
    const std::int64_t first = k * L.factor[i];
    const std::int64_t lastn = std::min((k + 1) * L.factor[i], lat_.count(i)) - 1;
    return {lat_.coordinate(i, first), lat_.coordinate(i, lastn)};
  }

  static void fill_row_cumsum(Level& L, std::size_t n) {
    const std::int64_t len = L.count[n - 1];
    L.row_cumsum.resize(L.mass.size());
    for (std::size_t start = 0; start < L.mass.size(); start += static_cast<std::size_t>(len)) {
      double run = 0.0;
      for (std::int64_t k = 0; k < len; ++k) {
        run += L.mass[start + static_cast<std::size_t>(k)];
        L.row_cumsum[start + static_cast<std::size_t>(k)] = run;
      }
    }
  }

  Level coarsen(const Level& prev) const {
    const auto& g = lat_.group();
    const std::size_t n = g.dimension;
    Level L;
    L.width = prev.width * 2.0;
    std::array<std::int64_t, kMaxDim> merge{};
    for (std::size_t i = 0; i < n; ++i) {
      merge[i] = std::int64_t{1} << static_cast<int>(g.weights[i]);
      L.factor[i] = prev.factor[i] * merge[i];
      L.count[i] = (lat_.count(i) + L.factor[i] - 1) / L.factor[i];
    }
    std::int64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= L.count[i];
    L.mass.assign(static_cast<std::size_t>(size), 0.0);
    std::array<std::vector<double>, kMaxDim> moment;
    for (std::size_t i = 0; i < n; ++i) moment[i].assign(static_cast<std::size_t>(size), 0.0);
    std::array<std::int64_t, kMaxDim> pstride{}, cstride{};
    for (std::size_t i = n; i-- > 0;) {
      pstride[i] = (i + 1 < n) ? pstride[i + 1] * prev.count[i + 1] : 1;
      cstride[i] = (i + 1 < n) ? cstride[i + 1] * L.count[i + 1] : 1;
    }
    const bool prev_is_base = prev.centroid[0].empty();
    std::int64_t psize = static_cast<std::int64_t>(prev.mass.size());
    for (std::int64_t f = 0; f < psize; ++f) {
      const double m = prev.mass[static_cast<std::size_t>(f)];
      if (m == 0.0) continue;
      std::int64_t cf = 0;
      std::array<double, kMaxDim> xi{};
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t k = (f / pstride[i]) % prev.count[i];
        cf += (k / merge[i]) * cstride[i];
        xi[i] = prev_is_base ? lat_.coordinate(i, k) : prev.centroid[i][static_cast<std::size_t>(f)];
      }
      L.mass[static_cast<std::size_t>(cf)] += m;
      for (std::size_t i = 0; i < n; ++i) moment[i][static_cast<std::size_t>(cf)] += m * xi[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      L.centroid[i].assign(static_cast<std::size_t>(size), 0.0);
      for (std::int64_t cf = 0; cf < size; ++cf) {
        const double m = L.mass[static_cast<std::size_t>(cf)];
        if (m != 0.0) L.centroid[i][static_cast<std::size_t>(cf)] = moment[i][static_cast<std::size_t>(cf)] / m;
      }
    }
    return L;
  }

  Lattice lat_;
  double resolution_;
  bool euclidean_rows_ = false;
  std::vector<Level> levels_;
  double total_ = 0.0;
};

}  // namespace morrey
