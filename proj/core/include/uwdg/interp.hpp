#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "uwdg/tensor_assembly.hpp"

namespace uwdg {

/// A smooth scalar function given through its derivatives: derivative(u, n) = g^(n)(u).
struct ScalarFunction {
  std::function<double(double u, int n)> derivative;

  double operator()(double u) const { return derivative(u, 0); }
};

/// Hierarchical Hermite interpolation of g(u_h) on the active set of a DG space.
/// Per 1D unit the interpolant carries values and derivatives up to order (M-1)/2 at two
/// one-sided points; surpluses are computed coarse to fine along ancestor chains.
class InterpOperator {
 public:
  /// Throws std::invalid_argument unless degree is odd and at least space degree + 1.
  InterpOperator(SpacePtr space, int degree);

  int degree() const { return degree_; }
  const ActiveSpace& space() const { return *space_; }
  const Basis1D& interp_basis() const { return *interp_; }
  int block_size() const { return space_->dim() == 2 ? per_unit_ * per_unit_ : per_unit_; }
  int size() const { return space_->blocks() * block_size(); }

  /// Surpluses of the interpolant of g(u) in the interpolation basis, blocks ordered like the space.
  Eigen::VectorXd surpluses(const HierState& u, const ScalarFunction& g) const;
  /// Values of u at every interpolation point.
  std::vector<double> point_values(const HierState& u) const;
  /// L2 projection of an interpolant (given by surpluses) onto the DG space.
  HierState to_state(const Eigen::VectorXd& surpluses) const;
  /// Interpolate g(u) and project back onto the DG space.
  HierState compose(const HierState& u, const ScalarFunction& g) const;
  /// Point value of an interpolant with the given surpluses (periodic, one-sided).
  double eval_interpolant(const Eigen::VectorXd& surpluses, double x, double y = 0.0, Side sx = Side::Plus,
                          Side sy = Side::Plus) const;

 private:
  struct ChainEntry {
    int unit;
    Eigen::MatrixXd values;  // (derivative order) x (function in unit)
  };
  struct PointData {
    std::vector<ChainEntry> dg_chain;
  };
  struct Ancestor {
    int unit;
    Eigen::MatrixXd weights;  // rows: functionals of the unit, cols: functions of the ancestor
  };

  // jets[a * P1 + b] = d^a/dx^a d^b/dy^b u at the product point
  void jet_at(const HierState& u, const PointData& px, const PointData* py, double* jets) const;
  void compose_jet(const double* jets, const ScalarFunction& g, double* out) const;

  SpacePtr space_;
  std::shared_ptr<const Basis1D> interp_;
  int degree_;
  int orders_;    // (M+1)/2 derivative orders per point
  int per_unit_;  // M+1
  std::vector<std::array<PointData, 2>> points_;  // per 1D unit
  std::vector<std::vector<Ancestor>> ancestors_;  // per 1D unit, strict ancestors
  SparseMatrix projection_;
};

}  // namespace uwdg
