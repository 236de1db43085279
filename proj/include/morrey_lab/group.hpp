#pragma once

// Homogeneous groups supported by the laboratory: Euclidean R^N and the first
// Heisenberg group, with their dilations, gauges and ball geometry.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/quadrature_spec.hpp"

namespace morrey {

inline constexpr std::size_t kMaxDim = 4;

/// Coordinates of a group element in the global exponential chart.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t n) : n_(n) {
    if (n > kMaxDim) throw ShapeError("Point: dimension exceeds kMaxDim");
  }
  Point(std::initializer_list<double> values) : Point(values.size()) {
    std::copy(values.begin(), values.end(), c_.begin());
  }

  std::size_t size() const { return n_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> coords() const { return {c_.data(), n_}; }
  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }

  bool is_finite() const {
    return std::all_of(c_.begin(), c_.begin() + n_, [](double v) { return std::isfinite(v); });
  }

  friend bool operator==(const Point& a, const Point& b) {
    return a.n_ == b.n_ && std::equal(a.c_.begin(), a.c_.begin() + a.n_, b.c_.begin());
  }

  std::string str() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < n_; ++i) os << (i ? "," : "") << c_[i];
    os << ')';
    return os.str();
  }

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t n_ = 0;
};

enum class GroupLaw { euclidean, heisenberg1 };
enum class GaugeKind { euclidean, koranyi, anisotropic };

inline std::string to_string(GroupLaw law) {
  return law == GroupLaw::euclidean ? "euclidean" : "heisenberg1";
}

inline std::string to_string(GaugeKind g) {
  switch (g) {
    case GaugeKind::euclidean: return "euclidean";
    case GaugeKind::koranyi: return "koranyi";
    case GaugeKind::anisotropic: return "anisotropic";
  }
  return "?";
}

/// A homogeneous group on R^N: law, dilation weights and the chosen gauge.
struct GroupDescriptor {
  std::size_t dimension = 1;
  std::array<double, kMaxDim> weights{1.0, 1.0, 1.0, 1.0};
  GroupLaw law = GroupLaw::euclidean;
  GaugeKind gauge = GaugeKind::euclidean;
  double Q = 1.0;
  std::optional<std::size_t> first_layer;

  static GroupDescriptor euclidean(std::size_t n, GaugeKind gauge = GaugeKind::euclidean) {
    GroupDescriptor g;
    g.dimension = n;
    g.weights = {1.0, 1.0, 1.0, 1.0};
    g.law = GroupLaw::euclidean;
    g.gauge = gauge;
    g.Q = static_cast<double>(n);
    g.first_layer = n;
    g.validate();
    return g;
  }

  static GroupDescriptor heisenberg() {
    GroupDescriptor g;
    g.dimension = 3;
    g.weights = {1.0, 1.0, 2.0, 1.0};
    g.law = GroupLaw::heisenberg1;
    g.gauge = GaugeKind::koranyi;
    g.Q = 4.0;
    g.first_layer = 2;
    g.validate();
    return g;
  }

  std::span<const double> weight_span() const { return {weights.data(), dimension}; }

  double max_weight() const {
    return *std::max_element(weights.begin(), weights.begin() + dimension);
  }

  /// Number of horizontal (first-layer) directions.
  std::size_t horizontal_dim() const { return first_layer.value_or(dimension); }

  std::string name() const {
    return law == GroupLaw::euclidean ? "R^" + std::to_string(dimension) : "H1";
  }

  void validate() const {
    if (dimension == 0 || dimension > kMaxDim)
      throw DomainError("GroupDescriptor: dimension must be in 1.." + std::to_string(kMaxDim));
    double sum = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) {
      if (!(weights[i] > 0.0)) throw DomainError("GroupDescriptor: weights must be positive");
      sum += weights[i];
    }
    if (Q != sum) throw DomainError("GroupDescriptor: Q must equal the sum of the weights");
    if (law == GroupLaw::euclidean) {
      for (std::size_t i = 0; i < dimension; ++i)
        if (weights[i] != 1.0) throw DomainError("GroupDescriptor: euclidean law requires unit weights");
      if (gauge == GaugeKind::koranyi)
        throw DomainError("GroupDescriptor: euclidean law requires euclidean or anisotropic gauge");
    } else {
      if (dimension != 3 || weights[0] != 1.0 || weights[1] != 1.0 || weights[2] != 2.0)
        throw DomainError("GroupDescriptor: heisenberg1 requires N=3 and weights (1,1,2)");
      if (gauge != GaugeKind::koranyi)
        throw DomainError("GroupDescriptor: heisenberg1 requires the koranyi gauge");
      if (first_layer.value_or(0) != 2)
        throw DomainError("GroupDescriptor: heisenberg1 requires first layer size 2");
    }
  }
};

inline void check_shape(const GroupDescriptor& g, const Point& x) {
  if (x.size() != g.dimension)
    throw ShapeError("point of dimension " + std::to_string(x.size()) + " used with group " +
                     g.name());
}

inline Point identity(const GroupDescriptor& g) { return Point(g.dimension); }

/// Anisotropic dilation: component i scales by t^{weight_i}.
inline Point dilate(const GroupDescriptor& g, double t, const Point& x) {
  if (!(t > 0.0)) throw DomainError("dilate: t must be positive");
  check_shape(g, x);
  Point y(g.dimension);
  for (std::size_t i = 0; i < g.dimension; ++i)
    y[i] = (g.weights[i] == 1.0 ? t : std::pow(t, g.weights[i])) * x[i];
  return y;
}

/// Group law; for H1 the symmetric convention t + t' + (x y' - y x')/2.
inline Point mul(const GroupDescriptor& g, const Point& x, const Point& y) {
  check_shape(g, x);
  check_shape(g, y);
  Point z(g.dimension);
  for (std::size_t i = 0; i < g.dimension; ++i) z[i] = x[i] + y[i];
  if (g.law == GroupLaw::heisenberg1) z[2] += 0.5 * (x[0] * y[1] - x[1] * y[0]);
  return z;
}

/// Inverse element; negation for both supported laws.
inline Point inv(const GroupDescriptor& g, const Point& x) {
  check_shape(g, x);
  Point y(g.dimension);
  for (std::size_t i = 0; i < g.dimension; ++i) y[i] = -x[i];
  return y;
}

namespace detail {

inline double gauge_raw(const GroupDescriptor& g, const double* x) {
  switch (g.gauge) {
    case GaugeKind::euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < g.dimension; ++i) s += x[i] * x[i];
      return std::sqrt(s);
    }
    case GaugeKind::koranyi: {
      const double r2 = x[0] * x[0] + x[1] * x[1];
      return std::sqrt(std::sqrt(r2 * r2 + 16.0 * x[2] * x[2]));
    }
    case GaugeKind::anisotropic: {
      const double two_m = 2.0 * g.max_weight();
      double s = 0.0;
      for (std::size_t i = 0; i < g.dimension; ++i)
        s += std::pow(std::abs(x[i]), two_m / g.weights[i]);
      return std::pow(s, 1.0 / two_m);
    }
  }
  return 0.0;
}

/// gauge(c^{-1} y) without constructing intermediate points.
inline double distance_raw(const GroupDescriptor& g, const double* c, const double* y) {
  double d[kMaxDim];
  for (std::size_t i = 0; i < g.dimension; ++i) d[i] = y[i] - c[i];
  if (g.law == GroupLaw::heisenberg1) d[2] -= 0.5 * (c[0] * y[1] - c[1] * y[0]);
  return gauge_raw(g, d);
}

}  // namespace detail

/// Homogeneous gauge |x|: Euclidean norm, Koranyi gauge ((x^2+y^2)^2 + 16 t^2)^{1/4},
/// or the anisotropic gauge (sum |x_i|^{2M/v_i})^{1/(2M)} with M the largest weight.
inline double gauge(const GroupDescriptor& g, const Point& x) {
  check_shape(g, x);
  return detail::gauge_raw(g, x.data());
}

/// gauge(c^{-1} y), the left-invariant quasi-distance.
inline double distance(const GroupDescriptor& g, const Point& c, const Point& y) {
  check_shape(g, c);
  check_shape(g, y);
  return detail::distance_raw(g, c.data(), y.data());
}

/// Coordinate box containing the quasi-ball B(c, r).
inline std::pair<Point, Point> ball_bounding_box(const GroupDescriptor& g, const Point& c,
                                                 double r) {
  check_shape(g, c);
  Point lo(g.dimension), hi(g.dimension);
  if (g.law == GroupLaw::heisenberg1) {
    const double ext_t = 0.25 * r * r + 0.5 * (std::abs(c[0]) + std::abs(c[1])) * r;
    lo = Point{c[0] - r, c[1] - r, c[2] - ext_t};
    hi = Point{c[0] + r, c[1] + r, c[2] + ext_t};
    return {lo, hi};
  }
  for (std::size_t i = 0; i < g.dimension; ++i) {
    const double e = std::pow(r, g.weights[i]);
    lo[i] = c[i] - e;
    hi[i] = c[i] + e;
  }
  return {lo, hi};
}

/// Ratio gauge(xy) / (gauge(x) + gauge(y)) maximized over the given pairs.
/// The ratio at x = y = 0 is defined as 0.5.
inline double estimate_quasi_constant(const GroupDescriptor& g,
                                      std::span<const std::pair<Point, Point>> pairs) {
  double best = 0.0;
  for (const auto& [x, y] : pairs) {
    const double den = gauge(g, x) + gauge(g, y);
    const double ratio = den == 0.0 ? 0.5 : gauge(g, mul(g, x, y)) / den;
    best = std::max(best, ratio);
  }
  return best;
}

/// Random-sampling estimate of the quasi-triangle constant; 1 for gauges that are norms.
inline double estimate_quasi_constant(const GroupDescriptor& g, int samples, std::uint64_t seed) {
  if (samples < 100) throw DomainError("estimate_quasi_constant: need at least 100 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::exponential_distribution<double> scale_dist(1.0);
  std::vector<std::pair<Point, Point>> pairs;
  pairs.reserve(static_cast<std::size_t>(samples));
  auto draw = [&] {
    const double s = scale_dist(rng) + 1e-3;
    Point p(g.dimension);
    for (std::size_t i = 0; i < g.dimension; ++i) p[i] = unit(rng);
    return dilate(g, s, p);
  };
  for (int k = 0; k < samples; ++k) {
    Point x = draw();
    Point y = draw();
    pairs.emplace_back(x, y);
  }
  return estimate_quasi_constant(g, std::span<const std::pair<Point, Point>>(pairs));
}

namespace detail {

// Half-length of the column {x_last : gauge(x', x_last) < R} above the point x'.
inline double column_half_length(const GroupDescriptor& g, const double* xp, double R) {
  const std::size_t last = g.dimension - 1;
  switch (g.gauge) {
    case GaugeKind::euclidean: {
      double rem = R * R;
      for (std::size_t i = 0; i < last; ++i) rem -= xp[i] * xp[i];
      return rem > 0.0 ? std::sqrt(rem) : 0.0;
    }
    case GaugeKind::koranyi: {
      const double r2 = xp[0] * xp[0] + xp[1] * xp[1];
      const double rem = R * R * R * R - r2 * r2;
      return rem > 0.0 ? 0.25 * std::sqrt(rem) : 0.0;
    }
    case GaugeKind::anisotropic: {
      const double two_m = 2.0 * g.max_weight();
      double rem = std::pow(R, two_m);
      for (std::size_t i = 0; i < last; ++i) rem -= std::pow(std::abs(xp[i]), two_m / g.weights[i]);
      return rem > 0.0 ? std::pow(rem, g.weights[last] / two_m) : 0.0;
    }
  }
  return 0.0;
}

inline constexpr double kBallVolumeNodeBudget = 5e7;

}  // namespace detail

/// Lebesgue (= Haar) measure of the quasi-ball of radius R.
///
/// The last coordinate is integrated exactly along each column; the remaining
/// coordinates use the midpoint lattice of the quadrature spec.
inline double ball_volume(const GroupDescriptor& g, double R, const QuadratureSpec& quad) {
  if (!(R > 0.0)) throw DomainError("ball_volume: R must be positive");
  const std::size_t m = g.dimension - 1;
  if (m == 0) return 2.0 * detail::column_half_length(g, nullptr, R);
  const double h = quad.effective_h();
  std::array<double, kMaxDim> step{};
  std::array<std::int64_t, kMaxDim> count{};
  double total_nodes = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    step[i] = std::pow(h, g.weights[i]);
    count[i] = 2 * static_cast<std::int64_t>(std::ceil(std::pow(R, g.weights[i]) / step[i]));
    total_nodes *= static_cast<double>(count[i]);
  }
  if (total_nodes > detail::kBallVolumeNodeBudget) {
    QuadratureSpec coarse = quad;
    coarse.lattice_h = quad.lattice_h * 2.0;
    const double estimate = coarse.R_max > coarse.lattice_h ? ball_volume(g, R, coarse) : 0.0;
    throw AccuracyError("ball_volume: node budget exhausted", estimate);
  }
  double cell = 1.0;
  for (std::size_t i = 0; i < m; ++i) cell *= step[i];
  std::array<std::int64_t, kMaxDim> idx{};
  double xp[kMaxDim] = {};
  double sum = 0.0;
  for (;;) {
    for (std::size_t i = 0; i < m; ++i)
      xp[i] = (static_cast<double>(idx[i] - count[i] / 2) + 0.5) * step[i];
    sum += 2.0 * detail::column_half_length(g, xp, R);
    std::size_t d = 0;
    while (d < m && ++idx[d] == count[d]) idx[d++] = 0;
    if (d == m) break;
  }
  return sum * cell;
}

/// Measure of the unit quasi-sphere, sigma = Q |B(0,1)|, forced by the polar formula.
inline double sphere_measure(const GroupDescriptor& g, const QuadratureSpec& quad) {
  return g.Q * ball_volume(g, 1.0, quad);
}

/// Spec used wherever the library needs the unit-ball volume as a constant.
inline QuadratureSpec fine_volume_spec() {
  QuadratureSpec s;
  s.lattice_h = 1.0 / 256.0;
  return s;
}

/// Integral of a radial profile over the truncated group via polar coordinates:
/// sigma * int_0^{R_max} f(r) r^{Q-1} dr.
inline double polar_integrate(const GroupDescriptor& g, const std::function<double(double)>& f_radial,
                              const QuadratureSpec& quad) {
  const double R = quad.R_max;
  const double eps = 1e-7 * R;
  const double f1 = f_radial(eps), f2 = f_radial(0.5 * eps);
  if (!std::isfinite(f1) || !std::isfinite(f2))
    throw DomainError("polar_integrate: integrand not finite near the origin");
  if (f1 != 0.0 && f2 != 0.0) {
    const double local_exponent = std::log2(std::abs(f1) / std::abs(f2));
    if (local_exponent <= -g.Q + 1e-6)
      throw DomainError("polar_integrate: radial integrand not integrable at the origin");
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto integrand = [&](double r) { return f_radial(r) * std::pow(r, g.Q - 1.0); };
  double total = 0.0;
  int quiet = 0;
  double hi = R;
  for (int k = 0; k < 400 && quiet < 4; ++k) {
    const double lo = 0.5 * hi;
    const double part = GK::integrate(integrand, lo, hi, 12, 1e-13);
    total += part;
    quiet = (k > 8 && std::abs(part) <= 1e-16 * std::abs(total)) ? quiet + 1 : 0;
    hi = lo;
  }
  return sphere_measure(g, fine_volume_spec()) * total;
}

}  // namespace morrey
