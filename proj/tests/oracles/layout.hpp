#pragma once

#include <random>

#include <Eigen/Dense>

#include "uwdg/dispersion.hpp"
#include "uwdg/polynomial.hpp"
#include "uwdg/state_ops.hpp"

namespace oracle {

using namespace uwdg;

inline Eigen::MatrixXd dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

inline double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

// Oracle matrices use cell order (cx * nc + cy); map to the library nodal block order.
inline Eigen::MatrixXd to_library_order(const Eigen::MatrixXd& m, const ActiveSpace& space) {
  const int bs = space.block_size();
  const int nc = space.units_1d();
  Eigen::VectorXi perm(m.rows());
  for (int cx = 0; cx < nc; ++cx)
    for (int cy = 0; cy < (space.dim() == 2 ? nc : 1); ++cy) {
      const int src = space.dim() == 2 ? cx * nc + cy : cx;
      const int dst = space.dim() == 2 ? space.find(cx, cy) : space.find(cx);
      for (int r = 0; r < bs; ++r) perm[src * bs + r] = dst * bs + r;
    }
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(perm[i], perm[j]) = m(i, j);
  return out;
}

// Columns: nodal coefficients of each hierarchical basis vector.
inline Eigen::MatrixXd transform(const SpacePtr& hier, int level) {
  Eigen::MatrixXd t;
  for (int c = 0; c < hier->dof(); ++c) {
    HierState s(hier);
    s.coeffs[c] = 1.0;
    const NodalField f = to_nodal(s, level);
    if (t.size() == 0) t.resize(f.data.size(), hier->dof());
    t.col(c) = f.data;
  }
  return t;
}

inline TraceFn trace_of(const HierState& s) {
  return [&s](double x, double y, int ox, int oy, uwdg::Side sx, uwdg::Side sy) { return eval_state(s, x, y, ox, oy, sx, sy); };
}

inline HierState random_state(SpacePtr space, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  HierState s(space);
  for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = nd(rng);
  return s;
}

// Composite Gauss rule on the finest cells, independent of the assembly code paths.
inline double fine_integral(const std::function<double(double)>& f, int level, int points) {
  const GaussRule& g = gauss_legendre(points);
  const double h = std::ldexp(1.0, -level);
  double acc = 0.0;
  for (int c = 0; c < (1 << level); ++c)
    for (size_t q = 0; q < g.nodes.size(); ++q) acc += 0.5 * h * g.weights[q] * f(h * (c + 0.5 * (g.nodes[q] + 1.0)));
  return acc;
}

}  // namespace oracle
