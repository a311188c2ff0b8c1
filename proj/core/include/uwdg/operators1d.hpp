#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uwdg/basis1d.hpp"

namespace uwdg {

/// Dense 1D Galerkin matrices. Rows index test functions, columns index trial functions.
/// Entries below `kPruneRelative` times the largest magnitude are set to exactly zero.
inline constexpr double kPruneRelative = 1e-14;

/// M[v, u] = integral over [0,1] of u^(trial_order) * v^(test_order).
Eigen::MatrixXd volume_matrix(const Basis1D& test, const Basis1D& trial, int test_order, int trial_order = 0);

/// M[v, u] = sum over breakpoints p of v (periodic) of u^(trial_order)(p^trial_side) * (v^(test_order)(p+) - v^(test_order)(p-)).
/// Points where v is smooth contribute nothing, so the sum is independent of the mesh.
Eigen::MatrixXd jump_matrix(const Basis1D& test, const Basis1D& trial, int trial_order, Side trial_side, int test_order);

/// Periodic one-sided evaluation: 0^- is read as 1^- and 1^+ as 0^+.
double eval_periodic(const PiecewisePoly& f, double x, Side side, int order);

/// Block sparsity of a 1D matrix at the granularity of basis units.
struct UnitPattern {
  int row_units = 0;
  int col_units = 0;
  /// cols[r] lists the column units with a nonzero block in row unit r, ascending.
  std::vector<std::vector<int>> cols;
  /// Dense flag matrix row_units x col_units.
  std::vector<char> nonzero;

  bool has(int r, int c) const { return nonzero[static_cast<size_t>(r) * static_cast<size_t>(col_units) + static_cast<size_t>(c)] != 0; }
};

UnitPattern unit_pattern(const Eigen::MatrixXd& m, int row_per_unit, int col_per_unit);
UnitPattern merge_patterns(const std::vector<const UnitPattern*>& patterns);

}  // namespace uwdg
