#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>

#include "uwdg/space.hpp"

namespace uwdg {

/// Scalar field on [0,1]^d; y is ignored in 1D.
using Field = std::function<double(double x, double y)>;

/// Per-cell orthonormal Legendre coefficients on the uniform grid of one level.
/// Cells are ordered with the x index slowest; inside a cell the x degree varies slowest.
struct NodalField {
  int dim = 1;
  int degree = 0;
  int level = 0;
  Eigen::VectorXd data;

  int cells_1d() const { return 1 << level; }
  int block_size() const { return dim == 2 ? (degree + 1) * (degree + 1) : degree + 1; }
};

/// Dense change of basis: Legendre cells of `level` (rows) against Alpert functions up to `max_level` (cols).
const Eigen::MatrixXd& alpert_to_legendre(int degree, int max_level, int level);

/// Finest level of any active block (the space level for nodal layouts).
int finest_level(const ActiveSpace& space);

/// Exact change of basis to per-cell Legendre coefficients on level n.
/// Throws std::domain_error when n is coarser than the finest active level.
NodalField to_nodal(const HierState& state, int level);
/// Orthogonal projection of a nodal field onto the active space (inverse of to_nodal on the space).
HierState from_nodal(const NodalField& field, SpacePtr space);

/// Cellwise Gauss quadrature L2 projection with `points` nodes per direction (default degree + 3).
NodalField project_nodal(const Field& f, int dim, int degree, int level, int points = 0);
/// L2 projection onto the active space via the finest active level.
HierState project_L2(const Field& f, SpacePtr space);

/// Evaluate the solution or one of its derivatives with one-sided limits (periodic at the domain ends).
double eval_state(const HierState& state, double x, double y = 0.0, int order_x = 0, int order_y = 0,
                  Side side_x = Side::Plus, Side side_y = Side::Plus);

/// Evaluate a nodal field at a point inside cell (cx, cy) given reference coordinates.
double eval_nodal_cell(const NodalField& field, int cx, int cy, double xi, double eta);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// L1 and L2 by Gauss quadrature (degree + 3 points per finest cell), L-infinity by sampling
/// `samples` equispaced points per finest cell and direction.
ErrorNorms compute_errors(const HierState& state, const Field& exact, int samples = 8);

/// Writes "x [y] u" lines on a uniform grid of `resolution` points per direction (cell midpoints).
void write_samples(std::ostream& out, const HierState& state, int resolution);

}  // namespace uwdg
