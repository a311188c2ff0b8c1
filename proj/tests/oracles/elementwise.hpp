#pragma once

// Brute-force cellwise assembly of the printed per-cell UWDG forms on a uniform periodic grid,
// in a per-cell orthonormal Legendre basis. Self-contained: its own polynomials, its own
// quadrature (Golub-Welsch), its own trace bookkeeping.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

namespace oracle {

enum class Side { Minus, Plus };

struct Quadrature {
  std::vector<double> x, w;
};

inline Quadrature golub_welsch(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    j(i, i - 1) = j(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Quadrature q;
  for (int i = 0; i < n; ++i) {
    q.x.push_back(es.eigenvalues()(i));
    q.w.push_back(2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
  }
  return q;
}

// Coefficients of P_m in powers of xi.
inline std::vector<double> legendre_coeffs(int m) {
  std::vector<double> p0{1.0}, p1{0.0, 1.0};
  if (m == 0) return p0;
  for (int n = 1; n < m; ++n) {
    std::vector<double> p2(n + 2, 0.0);
    for (int i = 0; i <= n; ++i) p2[i + 1] += (2.0 * n + 1.0) * p1[i] / (n + 1.0);
    for (int i = 0; i < n; ++i) p2[i] -= n * p0[i] / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline double legendre_deriv(int m, int d, double xi) {
  const std::vector<double> c = legendre_coeffs(m);
  double acc = 0.0;
  for (int i = d; i < static_cast<int>(c.size()); ++i) {
    double f = 1.0;
    for (int r = 0; r < d; ++r) f *= (i - r);
    acc += c[i] * f * std::pow(xi, i - d);
  }
  return acc;
}

// Uniform periodic grid of nc cells per direction on [0,1]^dim with degree-k Legendre per cell.
class Grid {
 public:
  Grid(int dim, int k, int level) : dim_(dim), k_(k), nc_(1 << level), h_(1.0 / (1 << level)) {}

  int k1() const { return k_ + 1; }
  int bs() const { return dim_ == 2 ? k1() * k1() : k1(); }
  int nc() const { return nc_; }
  double h() const { return h_; }
  int dof() const { return (dim_ == 2 ? nc_ * nc_ : nc_) * bs(); }

  // 1D: cell owning the one-sided limit at x, and the coordinate relative to that cell's left end.
  std::pair<int, double> locate(double x, Side s) const {
    const double t = x * nc_;
    long c = s == Side::Plus ? static_cast<long>(std::floor(t + 1e-12)) : static_cast<long>(std::ceil(t - 1e-12)) - 1;
    const double local = x - c * h_;
    c = ((c % nc_) + nc_) % nc_;
    return {static_cast<int>(c), local};
  }
  double phi(int m, double local, int d) const {
    const double xi = 2.0 * local / h_ - 1.0;
    return std::sqrt((2.0 * m + 1.0) / h_) * std::pow(2.0 / h_, d) * legendre_deriv(m, d, xi);
  }

  // Row vector over all dofs: trial trace d^ox/dx d^oy/dy u at (x,y) from sides (sx,sy).
  Eigen::VectorXd trace(double x, double y, int ox, int oy, Side sx, Side sy) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(dof());
    const auto [cx, lx] = locate(x, sx);
    if (dim_ == 1) {
      for (int m = 0; m < k1(); ++m) r[cx * k1() + m] = phi(m, lx, ox);
      return r;
    }
    const auto [cy, ly] = locate(y, sy);
    const int base = (cx * nc_ + cy) * bs();
    for (int m1 = 0; m1 < k1(); ++m1)
      for (int m2 = 0; m2 < k1(); ++m2) r[base + m1 * k1() + m2] = phi(m1, lx, ox) * phi(m2, ly, oy);
    return r;
  }

 private:
  int dim_, k_, nc_;
  double h_;
};

// KdV dispersive part, per cell: int u v_xxx - (u^ v_xx) + (u~_x v_x) - (u_xx^ v) at both ends.
// variant 0: (u^-, u_x^+, u_xx^+); variant 1: (u^+, u_x^+, u_xx^-).
inline Eigen::MatrixXd kdv_matrix(int k, int level, int variant) {
  Grid g(1, k, level);
  const Quadrature q = golub_welsch(k + 3);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.dof(), g.dof());
  const Side hat = variant == 0 ? Side::Minus : Side::Plus;
  const Side check = variant == 0 ? Side::Plus : Side::Minus;
  const int k1 = k + 1;
  for (int c = 0; c < g.nc(); ++c) {
    const double x0 = c * g.h(), x1 = (c + 1) * g.h();
    for (int m = 0; m < k1; ++m) {
      const int row = c * k1 + m;
      for (size_t a = 0; a < q.x.size(); ++a) {
        const double x = x0 + 0.5 * (q.x[a] + 1.0) * g.h();
        L.row(row) += 0.5 * g.h() * q.w[a] * g.phi(m, x - x0, 3) * g.trace(x, 0, 0, 0, Side::Plus, Side::Plus).transpose();
      }
      auto vr = [&](int d) { return g.phi(m, g.h(), d); };
      auto vl = [&](int d) { return g.phi(m, 0.0, d); };
      L.row(row) -= vr(2) * g.trace(x1, 0, 0, 0, hat, Side::Plus).transpose() - vl(2) * g.trace(x0, 0, 0, 0, hat, Side::Plus).transpose();
      L.row(row) += vr(1) * g.trace(x1, 0, 1, 0, Side::Plus, Side::Plus).transpose() -
                    vl(1) * g.trace(x0, 0, 1, 0, Side::Plus, Side::Plus).transpose();
      L.row(row) -= vr(0) * g.trace(x1, 0, 2, 0, check, Side::Plus).transpose() -
                    vl(0) * g.trace(x0, 0, 2, 0, check, Side::Plus).transpose();
    }
  }
  return L;
}

// ZK dispersive part, per cell, following the printed elementwise scheme term by term.
// variant 0: main fluxes; variant 1: alternative fluxes. `third` includes the u_xxx terms.
inline Eigen::MatrixXd zk_matrix(int k, int level, int variant, bool third) {
  Grid g(2, k, level);
  const Quadrature q = golub_welsch(k + 3);
  const int k1 = k + 1, nc = g.nc();
  const double h = g.h();
  const Side P = Side::Plus, M = Side::Minus;
  // flux sides
  const Side xx_s = variant == 0 ? P : M;          // u_xx on vertical edges
  const Side hat_x = variant == 0 ? M : P;         // u on vertical edges against v_xx
  const Side chk_y = variant == 0 ? P : M;         // u_y on horizontal edges
  const Side hat_y = variant == 0 ? M : P;         // u on horizontal edges against v_xy
  const Side vtx_uy_y = variant == 0 ? P : M;      // corner u_y: (x^-, y^vtx)
  const Side vtx_u_y = variant == 0 ? M : P;       // corner u: (x^+, y^vtx)
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.dof(), g.dof());
  for (int cx = 0; cx < nc; ++cx)
    for (int cy = 0; cy < nc; ++cy) {
      const double x0 = cx * h, x1 = (cx + 1) * h, y0 = cy * h, y1 = (cy + 1) * h;
      for (int m1 = 0; m1 < k1; ++m1)
        for (int m2 = 0; m2 < k1; ++m2) {
          const int row = (cx * nc + cy) * g.bs() + m1 * k1 + m2;
          // test function in this cell; (lx, ly) relative to the cell's lower-left corner
          auto v = [&](double lx, double ly, int ox, int oy) { return g.phi(m1, lx, ox) * g.phi(m2, ly, oy); };
          auto tr = [&](double x, double y, int ox, int oy, Side sx, Side sy) {
            return Eigen::RowVectorXd(g.trace(x, y, ox, oy, sx, sy).transpose());
          };
          Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(g.dof());
          for (size_t a = 0; a < q.x.size(); ++a)
            for (size_t b = 0; b < q.x.size(); ++b) {
              const double lx = 0.5 * (q.x[a] + 1.0) * h, ly = 0.5 * (q.x[b] + 1.0) * h;
              const double w = 0.25 * h * h * q.w[a] * q.w[b];
              double test = v(lx, ly, 1, 2);
              if (third) test += v(lx, ly, 3, 0);
              acc += w * test * tr(x0 + lx, y0 + ly, 0, 0, P, P);
            }
          for (size_t b = 0; b < q.x.size(); ++b) {
            const double ly = 0.5 * (q.x[b] + 1.0) * h, y = y0 + ly, w = 0.5 * h * q.w[b];
            if (third) {
              acc -= w * (v(h, ly, 0, 0) * tr(x1, y, 2, 0, xx_s, P) - v(0, ly, 0, 0) * tr(x0, y, 2, 0, xx_s, P));
              acc += w * (v(h, ly, 1, 0) * tr(x1, y, 1, 0, P, P) - v(0, ly, 1, 0) * tr(x0, y, 1, 0, P, P));
              acc -= w * (v(h, ly, 2, 0) * tr(x1, y, 0, 0, hat_x, P) - v(0, ly, 2, 0) * tr(x0, y, 0, 0, hat_x, P));
            }
            acc -= w * (v(h, ly, 0, 2) * tr(x1, y, 0, 0, P, P) - v(0, ly, 0, 2) * tr(x0, y, 0, 0, P, P));
          }
          for (size_t a = 0; a < q.x.size(); ++a) {
            const double lx = 0.5 * (q.x[a] + 1.0) * h, x = x0 + lx, w = 0.5 * h * q.w[a];
            acc += w * (v(lx, h, 1, 0) * tr(x, y1, 0, 1, P, chk_y) - v(lx, 0, 1, 0) * tr(x, y0, 0, 1, P, chk_y));
            acc -= w * (v(lx, h, 1, 1) * tr(x, y1, 0, 0, P, hat_y) - v(lx, 0, 1, 1) * tr(x, y0, 0, 0, P, hat_y));
          }
          // corner fluxes at each vertex (xp, yp)
          auto uy_c = [&](double xp, double yp) { return tr(xp, yp, 0, 1, M, vtx_uy_y); };
          auto u_c = [&](double xp, double yp) { return tr(xp, yp, 0, 0, P, vtx_u_y); };
          acc += -v(h, h, 0, 0) * uy_c(x1, y1) + v(0, h, 0, 0) * uy_c(x0, y1);
          acc += v(h, 0, 0, 0) * uy_c(x1, y0) - v(0, 0, 0, 0) * uy_c(x0, y0);
          acc += v(h, h, 0, 1) * u_c(x1, y1) - v(h, 0, 0, 1) * u_c(x1, y0);
          acc += -v(0, h, 0, 1) * u_c(x0, y1) + v(0, 0, 0, 1) * u_c(x0, y0);
          L.row(row) += acc;
        }
    }
  return L;
}

}  // namespace oracle
