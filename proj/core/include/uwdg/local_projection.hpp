#pragma once

#include <Eigen/Dense>

#include "uwdg/dispersion.hpp"
#include "uwdg/state_ops.hpp"

namespace uwdg {

/// Q^k polynomial on a rectangle in reference monomials xi^a eta^b (index a * (k+1) + b),
/// xi, eta in [-1, 1].
struct CellPolynomial {
  int degree = 0;
  CellBox cell{};
  Eigen::VectorXd coeffs;

  /// d^ox/dx d^oy/dy at a physical point (extended polynomially outside the cell).
  double eval(double x, double y, int ox = 0, int oy = 0) const;
};

/// Condition matrix of the tensor-cell projection on the reference cell (rows: interior moments,
/// bottom-edge y-derivative moments, top-edge moments, left-edge moments, top-left corner value,
/// bottom-right corner y-derivative). Cached per degree; throws for degree < 1.
const Eigen::MatrixXd& star_condition_matrix(int degree);
/// 2-norm condition number of star_condition_matrix(degree).
double star_condition_number(int degree);

/// The tensor-cell local projection of u (with y-derivative u_y) onto Q^k of the cell.
/// Integrals use `points` Gauss nodes per direction (default degree + 10).
/// Throws std::runtime_error if the local system is singular.
CellPolynomial project_star(const Field& u, const Field& u_y, const CellBox& cell, int degree, int points = 0);

enum class RadauSide { Left, Right };

/// 1D Gauss-Radau projection onto P^k on [a, b]: moments against P^{k-1} plus the endpoint value
/// (right: u(b), left: u(a)). Coefficients in powers of the reference coordinate xi.
Eigen::VectorXd gauss_radau_1d(const std::function<double(double)>& u, double a, double b, RadauSide side, int degree,
                               int points = 0);

enum class InitialProjection { L2, Star };

/// Cellwise projection of u0 on the finest level of the space, transferred to the space.
/// Star needs u0_y (2D only).
HierState project_initial(const Field& u0, const Field& u0_y, SpacePtr space, InitialProjection method);

/// Per-cell orthonormal Legendre coefficients of a cell polynomial (block layout of NodalField).
Eigen::VectorXd legendre_block(const CellPolynomial& p);

}  // namespace uwdg
