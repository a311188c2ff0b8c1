#pragma once

#include <functional>

#include "uwdg/tensor_assembly.hpp"

namespace uwdg {

/// Alternating flux family. In 1D, Main is (u^-, u_x^+, u_xx^+) and Alt is (u^+, u_x^+, u_xx^-).
/// In 2D, Main and Alt select the two interface/vertex flux sets of the ZK scheme.
enum class FluxVariant { Main, Alt };

enum class Dispersion {
  KdV,           ///< u_xxx in 1D
  ZK,            ///< u_xxx + u_xyy in 2D
  ZKSimplified,  ///< u_xyy only in 2D
};

/// Minimum degree the operator needs: 2 when u_xxx is present, 1 otherwise.
int min_degree(Dispersion kind);

/// Matrix L with du/dt = scale * L u for the linear dispersive part of the UWDG weak form,
/// restricted to the active space (hierarchical or nodal), periodic in every direction.
/// Throws std::invalid_argument for a degree below min_degree or a dimension mismatch.
SparseMatrix assemble_dispersion(const ActiveSpace& space, Dispersion kind, FluxVariant variant, double scale = 1.0);

/// The same operator assembled geometrically on a nodal space: loops over cells, vertical and
/// horizontal edges and vertices with explicit traces, vertex terms written with the corner
/// jump `vertex_jump`. Used to cross-check the tensor path. 2D only.
SparseMatrix assemble_zk_edge_form(const ActiveSpace& nodal_space, Dispersion kind, FluxVariant variant);

/// One-sided access to a piecewise smooth function: d^ox/dx d^oy/dy at (x, y) from sides (sx, sy).
using TraceFn = std::function<double(double x, double y, int ox, int oy, Side sx, Side sy)>;

struct CellBox {
  double x0, x1, y0, y1;
};

/// Cellwise bilinear form of the simplified equation u_t + u_xyy = 0 (main fluxes): volume term,
/// four edge integrals and eight corner terms. Integrals use `points` Gauss nodes per direction.
double bilinear_hij(const TraceFn& u, const TraceFn& v, const CellBox& cell, int points);

/// Corner jump at p: -v(-,-) - v(+,+) + v(-,+) + v(+,-), signs giving the x and y sides.
double vertex_jump(const TraceFn& v, double xp, double yp, int ox = 0, int oy = 0);

/// Squared-jump dissipation of a state: 1/2 sum over interfaces of [u_x]^2 in 1D,
/// 1/2 integral over vertical edges of [u_x]^2 + [u_y]^2 in 2D.
double jump_dissipation(const HierState& state);

}  // namespace uwdg
