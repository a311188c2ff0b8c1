#include "uwdg/local_projection.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "uwdg/polynomial.hpp"

namespace uwdg {

namespace {

double pow_int(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// d^o/dt^o t^p at t
double mono_deriv(int p, int o, double t) {
  if (o > p) return 0.0;
  double f = 1.0;
  for (int r = 0; r < o; ++r) f *= (p - r);
  return f * pow_int(t, p - o);
}

// integral over [-1, 1] of t^p P_m(t)
double mono_moment(int p, int m) { return integrate_product(Poly::monomial(p), Poly::legendre(m)); }

Eigen::MatrixXd build_condition_matrix(int k) {
  const int k1 = k + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k1 * k1, k1 * k1);
  int row = 0;
  auto col = [k1](int p, int q) { return p * k1 + q; };
  for (int ma = 0; ma <= k - 1; ++ma)
    for (int mb = 0; mb <= k - 2; ++mb, ++row)
      for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q) a(row, col(p, q)) = mono_moment(p, ma) * mono_moment(q, mb);
  for (int ma = 0; ma <= k - 1; ++ma, ++row)
    for (int p = 0; p <= k; ++p)
      for (int q = 0; q <= k; ++q) a(row, col(p, q)) = mono_moment(p, ma) * mono_deriv(q, 1, -1.0);
  for (int ma = 0; ma <= k - 1; ++ma, ++row)
    for (int p = 0; p <= k; ++p)
      for (int q = 0; q <= k; ++q) a(row, col(p, q)) = mono_moment(p, ma);
  for (int mb = 0; mb <= k - 2; ++mb, ++row)
    for (int p = 0; p <= k; ++p)
      for (int q = 0; q <= k; ++q) a(row, col(p, q)) = pow_int(-1.0, p) * mono_moment(q, mb);
  for (int p = 0; p <= k; ++p)
    for (int q = 0; q <= k; ++q) a(row, col(p, q)) = pow_int(-1.0, p);
  ++row;
  for (int p = 0; p <= k; ++p)
    for (int q = 0; q <= k; ++q) a(row, col(p, q)) = mono_deriv(q, 1, -1.0);
  ++row;
  if (row != k1 * k1) throw std::logic_error("star_condition_matrix: condition count mismatch");
  return a;
}

struct StarCache {
  Eigen::MatrixXd matrix;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double cond = 0.0;
};

const StarCache& star_cache(int k) {
  if (k < 1) throw std::invalid_argument("star projection: degree must be >= 1");
  static std::mutex mutex;
  static std::map<int, StarCache> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) {
    StarCache c;
    c.matrix = build_condition_matrix(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c.matrix);
    const auto& sv = svd.singularValues();
    c.cond = sv[0] / sv[sv.size() - 1];
    if (!(sv[sv.size() - 1] > 1e-13 * sv[0]))
      throw std::runtime_error("star projection: singular local system for degree " + std::to_string(k));
    c.lu.compute(c.matrix);
    it = cache.emplace(k, std::move(c)).first;
  }
  return it->second;
}

}  // namespace

double CellPolynomial::eval(double x, double y, int ox, int oy) const {
  const double hx = cell.x1 - cell.x0, hy = cell.y1 - cell.y0;
  const double xi = 2.0 * (x - cell.x0) / hx - 1.0, eta = 2.0 * (y - cell.y0) / hy - 1.0;
  const int k1 = degree + 1;
  double acc = 0.0;
  for (int p = 0; p <= degree; ++p) {
    const double fx = mono_deriv(p, ox, xi);
    if (fx == 0.0) continue;
    for (int q = 0; q <= degree; ++q) acc += coeffs[p * k1 + q] * fx * mono_deriv(q, oy, eta);
  }
  return acc * pow_int(2.0 / hx, ox) * pow_int(2.0 / hy, oy);
}

const Eigen::MatrixXd& star_condition_matrix(int degree) { return star_cache(degree).matrix; }
double star_condition_number(int degree) { return star_cache(degree).cond; }

CellPolynomial project_star(const Field& u, const Field& u_y, const CellBox& cell, int k, int points) {
  const StarCache& sc = star_cache(k);
  const GaussRule& g = gauss_legendre(points > 0 ? points : k + 10);
  const double hx = cell.x1 - cell.x0, hy = cell.y1 - cell.y0;
  auto xof = [&](double xi) { return cell.x0 + 0.5 * (xi + 1.0) * hx; };
  auto yof = [&](double eta) { return cell.y0 + 0.5 * (eta + 1.0) * hy; };
  const size_t nq = g.nodes.size();
  std::vector<std::vector<double>> leg(static_cast<size_t>(k + 1), std::vector<double>(nq));
  for (int m = 0; m <= k; ++m) {
    const Poly p = Poly::legendre(m);
    for (size_t i = 0; i < nq; ++i) leg[static_cast<size_t>(m)][i] = p(g.nodes[i]);
  }
  Eigen::VectorXd rhs((k + 1) * (k + 1));
  int row = 0;
  for (int ma = 0; ma <= k - 1; ++ma)
    for (int mb = 0; mb <= k - 2; ++mb, ++row) {
      double acc = 0.0;
      for (size_t i = 0; i < nq; ++i)
        for (size_t j = 0; j < nq; ++j)
          acc += g.weights[i] * g.weights[j] * u(xof(g.nodes[i]), yof(g.nodes[j])) * leg[static_cast<size_t>(ma)][i] *
                 leg[static_cast<size_t>(mb)][j];
      rhs[row] = acc;
    }
  for (int ma = 0; ma <= k - 1; ++ma, ++row) {
    double acc = 0.0;
    for (size_t i = 0; i < nq; ++i) acc += g.weights[i] * 0.5 * hy * u_y(xof(g.nodes[i]), cell.y0) * leg[static_cast<size_t>(ma)][i];
    rhs[row] = acc;
  }
  for (int ma = 0; ma <= k - 1; ++ma, ++row) {
    double acc = 0.0;
    for (size_t i = 0; i < nq; ++i) acc += g.weights[i] * u(xof(g.nodes[i]), cell.y1) * leg[static_cast<size_t>(ma)][i];
    rhs[row] = acc;
  }
  for (int mb = 0; mb <= k - 2; ++mb, ++row) {
    double acc = 0.0;
    for (size_t j = 0; j < nq; ++j) acc += g.weights[j] * u(cell.x0, yof(g.nodes[j])) * leg[static_cast<size_t>(mb)][j];
    rhs[row] = acc;
  }
  rhs[row++] = u(cell.x0, cell.y1);
  rhs[row++] = 0.5 * hy * u_y(cell.x1, cell.y0);
  return CellPolynomial{k, cell, sc.lu.solve(rhs)};
}

Eigen::VectorXd gauss_radau_1d(const std::function<double(double)>& u, double a, double b, RadauSide side, int k, int points) {
  const GaussRule& g = gauss_legendre(points > 0 ? points : k + 10);
  const int k1 = k + 1;
  Eigen::MatrixXd m(k1, k1);
  Eigen::VectorXd rhs(k1);
  for (int r = 0; r < k; ++r) {
    const Poly lr = Poly::legendre(r);
    for (int p = 0; p <= k; ++p) m(r, p) = mono_moment(p, r);
    double acc = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * u(a + 0.5 * (g.nodes[i] + 1.0) * (b - a)) * lr(g.nodes[i]);
    rhs[r] = acc;
  }
  const double end = side == RadauSide::Right ? 1.0 : -1.0;
  for (int p = 0; p <= k; ++p) m(k, p) = pow_int(end, p);
  rhs[k] = u(side == RadauSide::Right ? b : a);
  return m.partialPivLu().solve(rhs);
}

Eigen::VectorXd legendre_block(const CellPolynomial& p) {
  const int k = p.degree, k1 = k + 1;
  const double hx = p.cell.x1 - p.cell.x0, hy = p.cell.y1 - p.cell.y0;
  // reference moments: integral of xi^a P_m(xi)
  Eigen::MatrixXd mom(k1, k1);
  for (int m = 0; m <= k; ++m)
    for (int a = 0; a <= k; ++a) mom(m, a) = mono_moment(a, m);
  Eigen::VectorXd out(k1 * k1);
  for (int m1 = 0; m1 <= k; ++m1)
    for (int m2 = 0; m2 <= k; ++m2) {
      double acc = 0.0;
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) acc += p.coeffs[a * k1 + b] * mom(m1, a) * mom(m2, b);
      const double norm = std::sqrt((2.0 * m1 + 1.0) / hx) * std::sqrt((2.0 * m2 + 1.0) / hy) * 0.25 * hx * hy;
      out[m1 * k1 + m2] = norm * acc;
    }
  return out;
}

HierState project_initial(const Field& u0, const Field& u0_y, SpacePtr space, InitialProjection method) {
  if (method == InitialProjection::L2) return project_L2(u0, space);
  if (space->dim() != 2) throw std::invalid_argument("project_initial: the tensor-cell projection is two-dimensional");
  if (!u0_y) throw std::invalid_argument("project_initial: the tensor-cell projection needs the y-derivative");
  const int n = finest_level(*space);
  const int nc = 1 << n, k = space->degree(), bs = (k + 1) * (k + 1);
  const double h = std::ldexp(1.0, -n);
  NodalField f{2, k, n, Eigen::VectorXd(static_cast<Eigen::Index>(nc) * nc * bs)};
  for (int cx = 0; cx < nc; ++cx)
    for (int cy = 0; cy < nc; ++cy) {
      const CellPolynomial p = project_star(u0, u0_y, {cx * h, (cx + 1) * h, cy * h, (cy + 1) * h}, k);
      f.data.segment(static_cast<Eigen::Index>(cx * nc + cy) * bs, bs) = legendre_block(p);
    }
  return from_nodal(f, space);
}

}  // namespace uwdg
