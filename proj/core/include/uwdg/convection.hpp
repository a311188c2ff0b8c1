#pragma once

#include "uwdg/interp.hpp"
#include "uwdg/state_ops.hpp"

namespace uwdg {

/// x-directional convection f(u)_x with the global Lax-Friedrichs flux
/// f^(a, b) = (f(a) + f(b)) / 2 - alpha (b - a) on one-sided traces a = u^-, b = u^+,
/// where f(u) is replaced by its Hermite interpolant.
class Convection {
 public:
  Convection(SpacePtr space, int interp_degree, ScalarFunction flux);

  const InterpOperator& interp() const { return interp_; }
  /// max |f'(u)| over the interpolation points.
  double wave_speed(const HierState& u) const;
  /// Galerkin increments: integral of I[f(u)] v_x plus interface sum of f^ [v], [v] = v^+ - v^-.
  Eigen::VectorXd apply(const HierState& u, double alpha) const;

 private:
  InterpOperator interp_;
  ScalarFunction flux_;
  SparseMatrix volume_flux_;
  SparseMatrix dissipation_;
};

/// Galerkin increments of a source term: the L2 projection of s(., t).
Eigen::VectorXd source_increment(const Field& source, SpacePtr space);

}  // namespace uwdg
