#pragma once

// Global and local Morrey norm estimators over a discretized (center, radius) grid.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/group.hpp"
#include "morrey_lab/operators.hpp"
#include "morrey_lab/quadrature.hpp"
#include "morrey_lab/test_function.hpp"

namespace morrey {

struct MorreyParams {
  double p = 2.0;
  double lambda = 0.0;
  std::vector<Point> centers;
  std::vector<double> radii;

  void validate(const GroupDescriptor& g) const {
    if (!(p > 1.0)) throw DomainError("MorreyParams: p must exceed 1");
    if (!(lambda >= 0.0 && lambda <= g.Q)) throw DomainError("MorreyParams: lambda must lie in [0, Q]");
    if (centers.empty()) throw DomainError("MorreyParams: no centers");
    for (const auto& c : centers) check_shape(g, c);
    check_radii(radii);
  }
};

struct MorreyEstimate {
  double value = 0.0;
  Point argmax_center;
  double argmax_radius = 0.0;
  bool truncation_note = false;
};

/// Identity plus the dilation-covariant family D_s(+-e_i / gauge(e_i)) with
/// s = 2^{k/2} between 2h and R_max/2; at most `max_points` points in total.
inline std::vector<Point> default_centers(const GroupDescriptor& g, double R_max, double h,
                                          std::size_t max_points = 125) {
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < g.dimension; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Point e(g.dimension);
      e[i] = sgn;
      const double r = gauge(g, e);
      dirs.push_back(dilate(g, 1.0 / r, e));
    }
  }
  std::vector<double> scales = geometric_radii(2.0 * h, 0.5 * R_max, 2);
  while (1 + dirs.size() * scales.size() > max_points && scales.size() > 1) {
    std::vector<double> thinned;
    for (std::size_t k = 0; k < scales.size(); k += 2) thinned.push_back(scales[k]);
    scales.swap(thinned);
  }
  std::vector<Point> out{identity(g)};
  for (double s : scales)
    for (const auto& d : dirs) out.push_back(dilate(g, s, d));
  return out;
}

/// Per-node masses |F|^p gauge^w dx for node values F of a field with
/// |F| ~ gauge^{origin_power} at the identity.  Cells near the identity integrate
/// the combined power exactly; nodes outside the truncated domain get mass 0.
inline std::vector<double> weighted_masses(const Lattice& lat, std::span<const double> values, double p,
                                           double weight_exponent = 0.0, double origin_power = 0.0) {
  if (values.size() != static_cast<std::size_t>(lat.size())) throw ShapeError("weighted_masses: size mismatch");
  const auto& g = lat.group();
  const double e = weight_exponent + p * origin_power;
  if (e <= -g.Q) throw DomainError("weighted_masses: weight not locally integrable at the identity");
  PowerWeight pw(lat, e);
  std::vector<double> m(values.size(), 0.0);
  double x[kMaxDim];
  for (std::int64_t k = 0; k < lat.size(); ++k) {
    const double v = std::abs(values[static_cast<std::size_t>(k)]);
    if (v == 0.0) continue;
    lat.node_coords(k, x);
    const double r = detail::gauge_raw(g, x);
    if (r > lat.radius()) continue;
    double mass = std::pow(v, p);
    if (origin_power != 0.0) mass *= std::pow(r, -p * origin_power);
    if (e != 0.0) mass *= pw.cell_average(k, x);
    m[static_cast<std::size_t>(k)] = mass * lat.cell_volume();
  }
  return m;
}

/// Samples u on the lattice (nodes outside the domain hold 0).
inline std::vector<double> sample_values(const Lattice& lat, const TestFunction& u) {
  return lat.sample([&](const Point& x) { return u(x); });
}

/// max over centers and radii of (r^{-lambda} int_{B(c,r)} mass)^{1/p}.
inline MorreyEstimate morrey_sup(const BallIntegrator& bi, double p, double lambda, std::span<const Point> centers,
                                 std::span<const double> radii) {
  check_radii(radii);
  if (centers.empty()) throw DomainError("morrey_sup: no centers");
  MorreyEstimate est;
  est.argmax_center = centers.front();
  est.argmax_radius = radii.front();
  double best = 0.0;
  if (bi.total_mass() == 0.0) return est;
  for (const auto& c : centers) {
    for (double r : radii) {
      const double v = bi.integrate(c, r) * std::pow(r, -lambda);
      if (v > best) {
        best = v;
        est.argmax_center = c;
        est.argmax_radius = r;
      }
    }
  }
  est.value = std::pow(best, 1.0 / p);
  est.truncation_note = best > 0.0 && est.argmax_radius == radii.back();
  return est;
}

/// Share of the total mass carried by nodes within 4 lattice steps of the truncation boundary.
inline double outer_mass_fraction(const Lattice& lat, std::span<const double> masses) {
  const auto& g = lat.group();
  double hmax = 0.0;
  for (std::size_t i = 0; i < g.dimension; ++i) hmax = std::max(hmax, lat.step(i));
  const double from = lat.radius() - 4.0 * hmax;
  double x[kMaxDim], outer = 0.0, total = 0.0;
  for (std::int64_t k = 0; k < lat.size(); ++k) {
    const double m = masses[static_cast<std::size_t>(k)];
    if (m == 0.0) continue;
    total += m;
    lat.node_coords(k, x);
    if (detail::gauge_raw(g, x) >= from) outer += m;
  }
  return total == 0.0 ? 0.0 : outer / total;
}

/// Morrey norm of a weighted lattice field.  The truncation note is also set when
/// the maximizing ball reaches the domain boundary while the field has mass there.
inline MorreyEstimate field_morrey_norm(const Lattice& lat, std::span<const double> values, double p, double lambda,
                                        std::span<const Point> centers, std::span<const double> radii,
                                        double weight_exponent = 0.0, double origin_power = 0.0) {
  const auto masses = weighted_masses(lat, values, p, weight_exponent, origin_power);
  BallIntegrator bi(lat, masses);
  auto est = morrey_sup(bi, p, lambda, centers, radii);
  if (!est.truncation_note && est.value > 0.0 &&
      gauge(lat.group(), est.argmax_center) + est.argmax_radius >= lat.radius() &&
      outer_mass_fraction(lat, masses) > 1e-6)
    est.truncation_note = true;
  return est;
}

/// Global Morrey norm sup_x sup_r (r^{-lambda} int_{B(x,r)} |u|^p)^{1/p} over the grid;
/// a lower bound of the true norm.
inline MorreyEstimate morrey_norm(const GroupDescriptor& g, const MorreyParams& params, const TestFunction& u,
                                  const QuadratureSpec& spec) {
  params.validate(g);
  spec.validate();
  Lattice lat(g, spec.R_max, spec.effective_h());
  const auto values = sample_values(lat, u);
  return field_morrey_norm(lat, values, params.p, params.lambda, params.centers, params.radii, 0.0,
                           u.origin_power());
}

/// Default-grid convenience overload.
inline MorreyEstimate morrey_norm(const GroupDescriptor& g, double p, double lambda, const TestFunction& u,
                                  const QuadratureSpec& spec) {
  MorreyParams params{p, lambda, default_centers(g, spec.R_max, spec.effective_h()),
                      default_radii(spec, u.decay_radius())};
  return morrey_norm(g, params, u, spec);
}

/// Local Morrey norm: the same estimator with the identity as the only center.
inline MorreyEstimate local_morrey_norm(const GroupDescriptor& g, double p, double lambda, const TestFunction& u,
                                        std::span<const double> radii, const QuadratureSpec& spec) {
  MorreyParams params{p, lambda, {identity(g)}, std::vector<double>(radii.begin(), radii.end())};
  return morrey_norm(g, params, u, spec);
}

struct EmbeddingResult {
  double local = 0.0;
  double global = 0.0;
  bool ok = true;
};

/// Local versus global norm on identical radius grids; local <= global holds by construction.
inline EmbeddingResult embedding_check(const GroupDescriptor& g, double p, double lambda, const TestFunction& u,
                                       std::span<const double> radii, const QuadratureSpec& spec,
                                       std::vector<Point> centers = {}) {
  if (centers.empty()) centers = default_centers(g, spec.R_max, spec.effective_h());
  if (std::find(centers.begin(), centers.end(), identity(g)) == centers.end()) centers.push_back(identity(g));
  Lattice lat(g, spec.R_max, spec.effective_h());
  const auto values = sample_values(lat, u);
  BallIntegrator bi(lat, weighted_masses(lat, values, p, 0.0, u.origin_power()));
  const std::vector<Point> origin{identity(g)};
  EmbeddingResult r;
  r.local = morrey_sup(bi, p, lambda, origin, radii).value;
  r.global = morrey_sup(bi, p, lambda, centers, radii).value;
  r.ok = r.local <= r.global * (1.0 + 1e-12);
  return r;
}

}  // namespace morrey
