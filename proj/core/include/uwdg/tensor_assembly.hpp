#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "uwdg/space.hpp"

namespace uwdg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// One separable term scale * X (x) Y of a 2D operator, or scale * X in 1D.
/// X and Y are dense 1D matrices over all units of the 1D families (rows test, cols trial).
/// A null Y stands for the identity (same family in rows and columns).
struct TensorTerm {
  const Eigen::MatrixXd* x = nullptr;
  const Eigen::MatrixXd* y = nullptr;
  double scale = 1.0;
};

/// Restrict sum_t X_t (x) Y_t to an active unit set. Rows use `row_per_unit` functions per
/// unit in each dimension, columns `col_per_unit`; both share the unit set of `space`.
SparseMatrix assemble_tensor(const ActiveSpace& space, int row_per_unit, int col_per_unit,
                             const std::vector<TensorTerm>& terms);

}  // namespace uwdg
