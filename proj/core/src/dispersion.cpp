#include "uwdg/dispersion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uwdg/matrix_cache.hpp"
#include "uwdg/state_ops.hpp"

namespace uwdg {

int min_degree(Dispersion kind) { return kind == Dispersion::ZKSimplified ? 1 : 2; }

namespace {

struct FluxSides {
  Side xx_value;      // second-derivative trace on vertical interfaces
  Side value;         // value trace against [v_xx]
  Side y_deriv;       // u_y trace on horizontal edges
  Side y_value;       // value trace against [v_xy] on horizontal edges
  Side vertex_value;  // y side of the corner value (x side is +)
  Side vertex_deriv;  // y side of the corner u_y (x side is -)
};

FluxSides sides_of(FluxVariant v) {
  if (v == FluxVariant::Main) return {Side::Plus, Side::Minus, Side::Plus, Side::Minus, Side::Minus, Side::Plus};
  return {Side::Minus, Side::Plus, Side::Minus, Side::Plus, Side::Plus, Side::Minus};
}

const char* variant_tag(FluxVariant v) { return v == FluxVariant::Main ? "m" : "a"; }

// 1D third-derivative factor: V3 + J(2,s,0) - J(1,+,1) + J(0,s',2).
const Eigen::MatrixXd& third_factor(const Basis1D& b, FluxVariant variant) {
  const FluxSides s = sides_of(variant);
  return cached_matrix("X3:" + family_tag(b) + variant_tag(variant), [&] {
    Eigen::MatrixXd m = volume_cached(b, b, 3);
    m += jump_cached(b, b, 2, s.xx_value, 0);
    m -= jump_cached(b, b, 1, Side::Plus, 1);
    m += jump_cached(b, b, 0, s.value, 2);
    return m;
  });
}

struct MixedFactors {
  const Eigen::MatrixXd* vol_x;     // V1
  const Eigen::MatrixXd* vol_y;     // V2 - J(1,sy,0) + J(0,sh,1)
  const Eigen::MatrixXd* edge_x;    // J(0,+,0)
  const Eigen::MatrixXd* edge_y;    // V2 + J(0,wy,1)
  const Eigen::MatrixXd* corner_x;  // J(0,-,0)
  const Eigen::MatrixXd* corner_y;  // -J(1,vy,0)
};

MixedFactors mixed_factors(const Basis1D& b, FluxVariant variant) {
  const FluxSides s = sides_of(variant);
  const std::string tag = family_tag(b) + variant_tag(variant);
  MixedFactors f{};
  f.vol_x = &volume_cached(b, b, 1);
  f.vol_y = &cached_matrix("XY2:" + tag, [&] {
    Eigen::MatrixXd m = volume_cached(b, b, 2);
    m -= jump_cached(b, b, 1, s.y_deriv, 0);
    m += jump_cached(b, b, 0, s.y_value, 1);
    return m;
  });
  f.edge_x = &jump_cached(b, b, 0, Side::Plus, 0);
  f.edge_y = &cached_matrix("EY:" + tag, [&] {
    Eigen::MatrixXd m = volume_cached(b, b, 2);
    m += jump_cached(b, b, 0, s.vertex_value, 1);
    return m;
  });
  f.corner_x = &jump_cached(b, b, 0, Side::Minus, 0);
  f.corner_y = &cached_matrix("CY:" + tag, [&] { return Eigen::MatrixXd(-jump_cached(b, b, 1, s.vertex_deriv, 0)); });
  return f;
}

void check_inputs(const ActiveSpace& space, Dispersion kind) {
  const int want_dim = kind == Dispersion::KdV ? 1 : 2;
  if (space.dim() != want_dim) throw std::invalid_argument("assemble_dispersion: dimension does not match the equation");
  if (space.degree() < min_degree(kind))
    throw std::invalid_argument("assemble_dispersion: degree " + std::to_string(space.degree()) + " is below the minimum " +
                                std::to_string(min_degree(kind)));
}

}  // namespace

SparseMatrix assemble_dispersion(const ActiveSpace& space, Dispersion kind, FluxVariant variant, double scale) {
  check_inputs(space, kind);
  const Basis1D& b = space.basis();
  const int k1 = space.degree() + 1;
  std::vector<TensorTerm> terms;
  if (kind != Dispersion::ZKSimplified) terms.push_back({&third_factor(b, variant), nullptr, scale});
  if (kind != Dispersion::KdV) {
    const MixedFactors f = mixed_factors(b, variant);
    terms.push_back({f.vol_x, f.vol_y, scale});
    terms.push_back({f.edge_x, f.edge_y, scale});
    terms.push_back({f.corner_x, f.corner_y, scale});
  }
  return assemble_tensor(space, k1, k1, terms);
}

namespace {

// Geometric assembly helpers for the nodal edge form.
class NodalGeometry {
 public:
  explicit NodalGeometry(const ActiveSpace& space)
      : space_(space), basis_(space.basis()), k1_(space.degree() + 1), nc_(1 << space.max_level()),
        h_(std::ldexp(1.0, -space.max_level())) {}

  int k1() const { return k1_; }
  int bs() const { return k1_ * k1_; }
  int nc() const { return nc_; }
  double h() const { return h_; }
  int wrap(int c) const { return (c % nc_ + nc_) % nc_; }

  // 1D cell function m of cell c at x in the cell closure.
  double f1(int c, int m, double x, int order) const {
    const double mid = (c + 0.5) * h_;
    return basis_.fn(c * k1_ + m).eval(x, x < mid ? Side::Plus : Side::Minus, order);
  }
  // Local index r = m1 * k1 + m2 of cell (cx, cy) evaluated at (x, y).
  double f2(int cx, int cy, int r, double x, double y, int ox, int oy) const {
    return f1(cx, r / k1_, x, ox) * f1(cy, r % k1_, y, oy);
  }
  int global(int cx, int cy, int r) const { return space_.find(cx, cy) * bs() + r; }

 private:
  const ActiveSpace& space_;
  const Basis1D& basis_;
  int k1_;
  int nc_;
  double h_;
};

struct Corner {
  int cx, cy;
  double x, y;
};

}  // namespace

SparseMatrix assemble_zk_edge_form(const ActiveSpace& space, Dispersion kind, FluxVariant variant) {
  check_inputs(space, kind);
  if (space.layout() != Layout::Nodal || kind == Dispersion::KdV)
    throw std::invalid_argument("assemble_zk_edge_form: needs a 2D nodal space");
  const NodalGeometry g(space);
  const FluxSides s = sides_of(variant);
  const bool third = kind == Dispersion::ZK;
  const int nc = g.nc(), bs = g.bs();
  const double h = g.h();
  const GaussRule& rule = gauss_legendre(space.degree() + 3);
  std::vector<Eigen::Triplet<double>> trip;
  auto add = [&](int row, int col, double v) {
    if (v != 0.0) trip.emplace_back(row, col, v);
  };

  // cells: volume terms
  for (int cx = 0; cx < nc; ++cx)
    for (int cy = 0; cy < nc; ++cy)
      for (size_t a = 0; a < rule.nodes.size(); ++a)
        for (size_t c = 0; c < rule.nodes.size(); ++c) {
          const double x = (cx + 0.5 * (rule.nodes[a] + 1.0)) * h;
          const double y = (cy + 0.5 * (rule.nodes[c] + 1.0)) * h;
          const double w = rule.weights[a] * rule.weights[c] * 0.25 * h * h;
          for (int rv = 0; rv < bs; ++rv) {
            double test = g.f2(cx, cy, rv, x, y, 1, 2);
            if (third) test += g.f2(cx, cy, rv, x, y, 3, 0);
            for (int ru = 0; ru < bs; ++ru) add(g.global(cx, cy, rv), g.global(cx, cy, ru), w * g.f2(cx, cy, ru, x, y, 0, 0) * test);
          }
        }

  // vertical edges x = e h: traces from the left cell (-) and the right cell (+)
  for (int e = 0; e < nc; ++e)
    for (int cy = 0; cy < nc; ++cy) {
      const Corner minus{g.wrap(e - 1), cy, e == 0 ? 1.0 : e * h, 0.0};
      const Corner plus{e, cy, e * h, 0.0};
      auto pick = [&](Side sd) { return sd == Side::Minus ? minus : plus; };
      for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double y = (cy + 0.5 * (rule.nodes[q] + 1.0)) * h;
        const double w = rule.weights[q] * 0.5 * h;
        // jump [v^(ox,oy)] = v(+) - v(-); trial trace u^(ox,oy) from side sd, times coefficient
        auto term = [&](int uox, int uoy, Side sd, int vox, int voy, double coef) {
          const Corner cu = pick(sd);
          for (int t = 0; t < 2; ++t) {
            const Corner& cv = t == 0 ? minus : plus;
            const double sign = t == 0 ? -1.0 : 1.0;
            for (int rv = 0; rv < bs; ++rv) {
              const double jv = sign * g.f2(cv.cx, cv.cy, rv, cv.x, y, vox, voy);
              if (jv == 0.0) continue;
              for (int ru = 0; ru < bs; ++ru)
                add(g.global(cv.cx, cv.cy, rv), g.global(cu.cx, cu.cy, ru),
                    coef * w * jv * g.f2(cu.cx, cu.cy, ru, cu.x, y, uox, uoy));
            }
          }
        };
        if (third) {
          term(2, 0, s.xx_value, 0, 0, 1.0);
          term(1, 0, Side::Plus, 1, 0, -1.0);
          term(0, 0, s.value, 2, 0, 1.0);
        }
        term(0, 0, Side::Plus, 0, 2, 1.0);
      }
    }

  // horizontal edges y = e h: traces from the lower cell (-) and the upper cell (+)
  for (int e = 0; e < nc; ++e)
    for (int cx = 0; cx < nc; ++cx) {
      const Corner minus{cx, g.wrap(e - 1), 0.0, e == 0 ? 1.0 : e * h};
      const Corner plus{cx, e, 0.0, e * h};
      auto pick = [&](Side sd) { return sd == Side::Minus ? minus : plus; };
      for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = (cx + 0.5 * (rule.nodes[q] + 1.0)) * h;
        const double w = rule.weights[q] * 0.5 * h;
        auto term = [&](int uox, int uoy, Side sd, int vox, int voy, double coef) {
          const Corner cu = pick(sd);
          for (int t = 0; t < 2; ++t) {
            const Corner& cv = t == 0 ? minus : plus;
            const double sign = t == 0 ? -1.0 : 1.0;
            for (int rv = 0; rv < bs; ++rv) {
              const double jv = sign * g.f2(cv.cx, cv.cy, rv, x, cv.y, vox, voy);
              if (jv == 0.0) continue;
              for (int ru = 0; ru < bs; ++ru)
                add(g.global(cv.cx, cv.cy, rv), g.global(cu.cx, cu.cy, ru),
                    coef * w * jv * g.f2(cu.cx, cu.cy, ru, x, cu.y, uox, uoy));
            }
          }
        };
        term(0, 1, s.y_deriv, 1, 0, -1.0);
        term(0, 0, s.y_value, 1, 1, 1.0);
      }
    }

  // vertices: u_y {[v]} - u {[v_y]}
  for (int ex = 0; ex < nc; ++ex)
    for (int ey = 0; ey < nc; ++ey) {
      const double xm = ex == 0 ? 1.0 : ex * h, ym = ey == 0 ? 1.0 : ey * h;
      const double xp = ex * h, yp = ey * h;
      const int cxm = g.wrap(ex - 1), cym = g.wrap(ey - 1);
      auto corner = [&](Side sx, Side sy) {
        return Corner{sx == Side::Minus ? cxm : ex, sy == Side::Minus ? cym : ey, sx == Side::Minus ? xm : xp,
                      sy == Side::Minus ? ym : yp};
      };
      struct Weighted {
        Corner c;
        double sign;
      };
      const Weighted jump[4] = {{corner(Side::Minus, Side::Minus), -1.0},
                                {corner(Side::Plus, Side::Plus), -1.0},
                                {corner(Side::Minus, Side::Plus), 1.0},
                                {corner(Side::Plus, Side::Minus), 1.0}};
      auto term = [&](const Corner& cu, int uoy, int voy, double coef) {
        for (const Weighted& wv : jump)
          for (int rv = 0; rv < bs; ++rv) {
            const double jv = wv.sign * g.f2(wv.c.cx, wv.c.cy, rv, wv.c.x, wv.c.y, 0, voy);
            if (jv == 0.0) continue;
            for (int ru = 0; ru < bs; ++ru)
              add(g.global(wv.c.cx, wv.c.cy, rv), g.global(cu.cx, cu.cy, ru),
                  coef * jv * g.f2(cu.cx, cu.cy, ru, cu.x, cu.y, 0, uoy));
          }
      };
      term(corner(Side::Minus, s.vertex_deriv), 1, 0, 1.0);
      term(corner(Side::Plus, s.vertex_value), 0, 1, -1.0);
    }

  SparseMatrix out(space.dof(), space.dof());
  out.setFromTriplets(trip.begin(), trip.end());
  out.prune(1e-14, 1.0);
  return out;
}

double vertex_jump(const TraceFn& v, double xp, double yp, int ox, int oy) {
  return -v(xp, yp, ox, oy, Side::Minus, Side::Minus) - v(xp, yp, ox, oy, Side::Plus, Side::Plus) +
         v(xp, yp, ox, oy, Side::Minus, Side::Plus) + v(xp, yp, ox, oy, Side::Plus, Side::Minus);
}

double bilinear_hij(const TraceFn& u, const TraceFn& v, const CellBox& k, int points) {
  const GaussRule& rule = gauss_legendre(points);
  const Side P = Side::Plus, M = Side::Minus;
  const double hx = k.x1 - k.x0, hy = k.y1 - k.y0;
  auto xq = [&](size_t a) { return k.x0 + 0.5 * (rule.nodes[a] + 1.0) * hx; };
  auto yq = [&](size_t a) { return k.y0 + 0.5 * (rule.nodes[a] + 1.0) * hy; };
  double acc = 0.0;
  for (size_t a = 0; a < rule.nodes.size(); ++a)
    for (size_t c = 0; c < rule.nodes.size(); ++c)
      acc += 0.25 * hx * hy * rule.weights[a] * rule.weights[c] * u(xq(a), yq(c), 0, 0, P, P) *
             v(xq(a), yq(c), 1, 2, P, P);
  for (size_t a = 0; a < rule.nodes.size(); ++a) {
    const double x = xq(a), wx = 0.5 * hx * rule.weights[a];
    acc += wx * (u(x, k.y1, 0, 1, P, P) * v(x, k.y1, 1, 0, P, M) - u(x, k.y0, 0, 1, P, P) * v(x, k.y0, 1, 0, P, P));
    acc -= wx * (u(x, k.y1, 0, 0, P, M) * v(x, k.y1, 1, 1, P, M) - u(x, k.y0, 0, 0, P, M) * v(x, k.y0, 1, 1, P, P));
  }
  for (size_t c = 0; c < rule.nodes.size(); ++c) {
    const double y = yq(c), wy = 0.5 * hy * rule.weights[c];
    acc -= wy * (u(k.x1, y, 0, 0, P, P) * v(k.x1, y, 0, 2, M, P) - u(k.x0, y, 0, 0, P, P) * v(k.x0, y, 0, 2, P, P));
  }
  acc += -u(k.x1, k.y1, 0, 1, M, P) * v(k.x1, k.y1, 0, 0, M, M) + u(k.x0, k.y1, 0, 1, M, P) * v(k.x0, k.y1, 0, 0, P, M);
  acc += u(k.x1, k.y0, 0, 1, M, P) * v(k.x1, k.y0, 0, 0, M, P) - u(k.x0, k.y0, 0, 1, M, P) * v(k.x0, k.y0, 0, 0, P, P);
  acc += u(k.x1, k.y1, 0, 0, P, M) * v(k.x1, k.y1, 0, 1, M, M) - u(k.x1, k.y0, 0, 0, P, M) * v(k.x1, k.y0, 0, 1, M, P);
  acc += -u(k.x0, k.y1, 0, 0, P, M) * v(k.x0, k.y1, 0, 1, P, M) + u(k.x0, k.y0, 0, 0, P, M) * v(k.x0, k.y0, 0, 1, P, P);
  return acc;
}

double jump_dissipation(const HierState& state) {
  const ActiveSpace& space = *state.space;
  const int n = finest_level(space);
  const int nc = 1 << n;
  const double h = std::ldexp(1.0, -n);
  auto jump = [&](double x, double y, int ox, int oy) {
    return eval_state(state, x, y, ox, oy, Side::Plus) - eval_state(state, x, y, ox, oy, Side::Minus);
  };
  double acc = 0.0;
  if (space.dim() == 1) {
    for (int e = 0; e < nc; ++e) acc += std::pow(jump(e * h, 0.0, 1, 0), 2);
    return 0.5 * acc;
  }
  const GaussRule& rule = gauss_legendre(space.degree() + 3);
  for (int e = 0; e < nc; ++e)
    for (int cy = 0; cy < nc; ++cy)
      for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double y = (cy + 0.5 * (rule.nodes[q] + 1.0)) * h;
        const double w = 0.5 * h * rule.weights[q];
        acc += w * (std::pow(jump(e * h, y, 1, 0), 2) + std::pow(jump(e * h, y, 0, 1), 2));
      }
  return 0.5 * acc;
}

}  // namespace uwdg
