// Prints a dilation sweep for an admissible Stein-Weiss config and for the same
// config with q shifted, next to the predicted slopes.

#include <cstdio>

#include "morrey_lab/harness/sides.hpp"

using namespace morrey;

int main() {
  const auto g = GroupDescriptor::euclidean(1);
  QuadratureSpec spec;
  spec.R_max = 24.0;
  spec.lattice_h = 1.0 / 16;
  const auto cfg = admissible(PartialConfig{Theorem::stein_weiss_adams, 1.0, 2.0, 0.1, 0.5, 0.2, -0.1});
  if (!cfg.accepted()) {
    std::printf("rejected: %s\n", cfg.violated.c_str());
    return 1;
  }
  const auto u = TestFunction::gauss_tensor(g, 1.0);
  const std::vector<double> ts{0.25, 0.5, 1.0, 2.0, 4.0};
  const auto grid = make_sweep_grid(g, spec, 4.0 * u.decay_radius());
  std::printf("q = %.6g\n", cfg.config->q);
  for (double shift : {0.0, 0.3}) {
    const auto rec = dilation_sweep(g, perturb_q(*cfg.config, shift), u, ts, grid);
    std::printf("\nshift of 1/q = %.2f\n%8s %14s\n", shift, "t", "lhs/rhs");
    for (std::size_t i = 0; i < ts.size(); ++i) std::printf("%8.3g %14.6g\n", rec.t_values[i], rec.ratios[i]);
    std::printf("fitted slope %.4f, predicted %.4f\n", rec.fitted_slope, rec.predicted_mismatch);
  }
  return 0;
}
