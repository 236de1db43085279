#pragma once

#include <cmath>
#include <cstdint>

#include "morrey_lab/errors.hpp"

namespace morrey {

/// Discretization controls shared by every integration engine.
///
/// `lattice_h` is the spacing along weight-1 coordinates; a coordinate of
/// dilation weight v is sampled with spacing h^v so that dilations map the
/// lattice family onto itself.  Each refinement level halves h.
struct QuadratureSpec {
  double R_max = 8.0;
  double lattice_h = 1.0 / 16.0;
  double shell_ratio = 0.5;
  double inner_cutoff = 1.0;
  int refinement_level = 0;

  double effective_h() const { return lattice_h / std::ldexp(1.0, refinement_level); }

  QuadratureSpec refined(int extra = 1) const {
    QuadratureSpec s = *this;
    s.refinement_level += extra;
    return s;
  }

  void validate() const {
    if (!(lattice_h > 0.0) || !(R_max > lattice_h))
      throw DomainError("QuadratureSpec: require R_max > lattice_h > 0");
    if (!(shell_ratio > 0.0 && shell_ratio < 1.0))
      throw DomainError("QuadratureSpec: shell_ratio must lie in (0,1)");
    if (!(inner_cutoff > 0.0 && inner_cutoff <= 1.0))
      throw DomainError("QuadratureSpec: inner_cutoff must lie in (0,1]");
    if (refinement_level < 0) throw DomainError("QuadratureSpec: negative refinement_level");
  }
};

/// Value of an integral together with a refinement-difference error estimate.
struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t nodes_used = 0;
};

}  // namespace morrey
