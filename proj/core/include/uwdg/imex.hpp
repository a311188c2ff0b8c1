#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>

#include "uwdg/linear_solver.hpp"

namespace uwdg {

/// Additive Runge-Kutta pair: implicit part (diagonally implicit) and explicit part.
struct ImexTableau {
  Eigen::MatrixXd a_im;
  Eigen::MatrixXd a_ex;
  Eigen::VectorXd b_im;
  Eigen::VectorXd b_ex;
  Eigen::VectorXd c_im;
  Eigen::VectorXd c_ex;

  int stages() const { return static_cast<int>(b_im.size()); }
  /// Third-order, four implicit / three explicit stage SSP scheme with an L-stable implicit part.
  static ImexTableau ssp3_433();
  /// Stability function of the implicit part: 1 + z b^T (I - z A)^{-1} 1.
  double implicit_stability(double z) const;
};

/// Explicit right-hand side N(y, t); an empty function means N = 0.
using ExplicitRhs = std::function<Eigen::VectorXd(const Eigen::VectorXd& y, double t)>;

/// One IMEX step for u' = L u + N(u, t) with identity mass matrix.
/// Shifted solves (I - a_ii dt L) are factorized once per (dt, a_ii) and reused.
class ImexStepper {
 public:
  ImexStepper(LinearOperator op, ImexTableau tableau, SolverMethod method);

  const LinearOperator& op() const { return op_; }
  Eigen::VectorXd step(const Eigen::VectorXd& u, double t, double dt, const ExplicitRhs& rhs);

 private:
  const ShiftedSolver& solver_for(double shift);

  LinearOperator op_;
  ImexTableau tab_;
  SolverMethod method_;
  std::map<double, std::unique_ptr<ShiftedSolver>> solvers_;
  std::vector<bool> explicit_needed_;
};

}  // namespace uwdg
