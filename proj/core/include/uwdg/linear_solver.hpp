#pragma once

#include <Eigen/Dense>
#include <memory>

#include "uwdg/tensor_assembly.hpp"

namespace uwdg {

/// An assembled linear operator over an active space (space may be null for plain matrices).
struct LinearOperator {
  SpacePtr space;
  SparseMatrix matrix;

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return matrix * v; }
  int size() const { return static_cast<int>(matrix.rows()); }
};

enum class SolverMethod {
  Direct,   ///< sparse LU factorization
  Krylov,   ///< GMRES with an incomplete LU preconditioner
  Fourier,  ///< block-circulant diagonalization by FFT (uniform nodal periodic grids only)
  Auto,     ///< Fourier on nodal layouts; diagonally preconditioned GMRES when shift * ||L||_inf is
            ///< moderate (falling back to LU if it stalls); LU otherwise
};


/// Solves (I - shift * L) x = b. The factorization (or preconditioner) is built once.
class ShiftedSolver {
 public:
  /// Throws std::invalid_argument for shift < 0 or Fourier on a non-nodal space,
  /// std::runtime_error when the factorization fails.
  ShiftedSolver(const LinearOperator& op, double shift, SolverMethod method, double tolerance = 1e-10);
  ~ShiftedSolver();
  ShiftedSolver(ShiftedSolver&&) noexcept;
  ShiftedSolver& operator=(ShiftedSolver&&) noexcept;

  double shift() const { return shift_; }
  /// The method in use (Auto is resolved at construction).
  SolverMethod method() const { return method_; }
  /// True when solutions are exact up to rounding (factorizations), false for iterative ones.
  bool exact() const;
  /// Throws std::runtime_error when the residual contract ||(I - shift L) x - b|| <= tol ||b|| cannot be met.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double shift_;
  SolverMethod method_;
};

}  // namespace uwdg
