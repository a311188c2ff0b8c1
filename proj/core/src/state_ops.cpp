#include "uwdg/state_ops.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "uwdg/operators1d.hpp"
#include "uwdg/polynomial.hpp"

namespace uwdg {

const Eigen::MatrixXd& alpert_to_legendre(int degree, int max_level, int level) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, Eigen::MatrixXd> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(degree, max_level, level);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto legendre = Basis1D::legendre(degree, level);
    auto alpert = Basis1D::alpert(degree, max_level);
    it = cache.emplace(key, volume_matrix(*legendre, *alpert, 0, 0)).first;
  }
  return it->second;
}

int finest_level(const ActiveSpace& space) {
  if (space.layout() == Layout::Nodal) return space.max_level();
  int n = 0;
  for (const ElemKey& k : space.keys()) n = std::max(n, k.level_max());
  return n;
}

namespace {

// Cells of `level` touched by the Alpert unit at key position `pos`.
std::pair<int, int> cell_range(int pos, int level) {
  const auto [l, j] = key_from_position(pos);
  if (l == 0) return {0, 1 << level};
  const int span = 1 << (level - l + 1);
  return {j * span, (j + 1) * span};
}

}  // namespace

NodalField to_nodal(const HierState& state, int level) {
  const ActiveSpace& space = *state.space;
  const int k1 = space.degree() + 1;
  NodalField out{space.dim(), space.degree(), level, {}};
  if (space.layout() == Layout::Nodal) {
    if (level != space.max_level()) throw std::domain_error("to_nodal: nodal state can only be read at its own level");
    out.data = state.coeffs;
    return out;
  }
  if (level < finest_level(space) || level > kMaxLevelCap) throw std::domain_error("to_nodal: target level too coarse");
  const Eigen::MatrixXd& T = alpert_to_legendre(space.degree(), space.max_level(), level);
  const int n = 1 << level;
  const int bs = out.block_size();
  out.data = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * (space.dim() == 2 ? n : 1) * bs);
  if (space.dim() == 1) {
    for (int b = 0; b < space.blocks(); ++b) {
      const int a = space.units()[static_cast<size_t>(b)][0];
      const auto [c0, c1] = cell_range(a, level);
      for (int c = c0; c < c1; ++c)
        out.data.segment(c * k1, k1) += T.block(c * k1, a * k1, k1, k1) * state.block(b);
    }
    return out;
  }
  // Group blocks by their x unit, contract y first, then x.
  std::map<int, std::vector<int>> by_x;
  for (int b = 0; b < space.blocks(); ++b) by_x[space.units()[static_cast<size_t>(b)][0]].push_back(b);
  Eigen::MatrixXd z(static_cast<Eigen::Index>(n) * k1, k1);  // rows (c2, m2), cols i1
  for (const auto& [a1, blocks] : by_x) {
    z.setZero();
    int lo2 = n, hi2 = 0;
    for (int b : blocks) {
      const int a2 = space.units()[static_cast<size_t>(b)][1];
      const auto [c0, c1] = cell_range(a2, level);
      lo2 = std::min(lo2, c0);
      hi2 = std::max(hi2, c1);
      const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> C(
          state.coeffs.data() + static_cast<Eigen::Index>(b) * k1 * k1, k1, k1);  // C(i1, i2)
      for (int c2 = c0; c2 < c1; ++c2) z.block(c2 * k1, 0, k1, k1) += T.block(c2 * k1, a2 * k1, k1, k1) * C.transpose();
    }
    const auto [x0, x1] = cell_range(a1, level);
    for (int c1 = x0; c1 < x1; ++c1) {
      const Eigen::MatrixXd tx = T.block(c1 * k1, a1 * k1, k1, k1);  // (m1, i1)
      for (int c2 = lo2; c2 < hi2; ++c2) {
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> out_block(
            out.data.data() + (static_cast<Eigen::Index>(c1) * n + c2) * bs, k1, k1);  // (m1, m2)
        out_block.noalias() += tx * z.block(c2 * k1, 0, k1, k1).transpose();
      }
    }
  }
  return out;
}

HierState from_nodal(const NodalField& field, SpacePtr space_ptr) {
  const ActiveSpace& space = *space_ptr;
  if (field.dim != space.dim() || field.degree != space.degree()) throw std::invalid_argument("from_nodal: shape mismatch");
  HierState out(space_ptr);
  if (space.layout() == Layout::Nodal) {
    if (field.level != space.max_level()) throw std::domain_error("from_nodal: level mismatch");
    out.coeffs = field.data;
    return out;
  }
  if (field.level < finest_level(space)) throw std::domain_error("from_nodal: field level too coarse");
  const int k1 = space.degree() + 1;
  const int level = field.level;
  const Eigen::MatrixXd& T = alpert_to_legendre(space.degree(), space.max_level(), level);
  const int n = 1 << level;
  if (space.dim() == 1) {
    for (int b = 0; b < space.blocks(); ++b) {
      const int a = space.units()[static_cast<size_t>(b)][0];
      const auto [c0, c1] = cell_range(a, level);
      for (int c = c0; c < c1; ++c)
        out.block(b) += T.block(c * k1, a * k1, k1, k1).transpose() * field.data.segment(c * k1, k1);
    }
    return out;
  }
  const int bs = k1 * k1;
  std::map<int, std::vector<int>> by_x;
  for (int b = 0; b < space.blocks(); ++b) by_x[space.units()[static_cast<size_t>(b)][0]].push_back(b);
  Eigen::MatrixXd w(static_cast<Eigen::Index>(n) * k1, k1);  // rows (c2, m2), cols i1
  for (const auto& [a1, blocks] : by_x) {
    w.setZero();
    const auto [x0, x1] = cell_range(a1, level);
    for (int c1 = x0; c1 < x1; ++c1) {
      const Eigen::MatrixXd tx = T.block(c1 * k1, a1 * k1, k1, k1);  // (m1, i1)
      for (int c2 = 0; c2 < n; ++c2) {
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(
            field.data.data() + (static_cast<Eigen::Index>(c1) * n + c2) * bs, k1, k1);  // (m1, m2)
        w.block(c2 * k1, 0, k1, k1).noalias() += F.transpose() * tx;
      }
    }
    for (int b : blocks) {
      const int a2 = space.units()[static_cast<size_t>(b)][1];
      const auto [c0, c1] = cell_range(a2, level);
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> C = Eigen::MatrixXd::Zero(k1, k1);  // (i1, i2)
      for (int c2 = c0; c2 < c1; ++c2) C.noalias() += w.block(c2 * k1, 0, k1, k1).transpose() * T.block(c2 * k1, a2 * k1, k1, k1);
      out.coeffs.segment(static_cast<Eigen::Index>(b) * bs, bs) = Eigen::Map<const Eigen::VectorXd>(C.data(), bs);
    }
  }
  return out;
}

namespace {

// values[q][m] = normalized Legendre m at reference node q, without the cell scaling.
Eigen::MatrixXd legendre_table(const std::vector<double>& nodes, int degree) {
  Eigen::MatrixXd t(static_cast<Eigen::Index>(nodes.size()), degree + 1);
  for (int m = 0; m <= degree; ++m) {
    const Poly p = Poly::legendre(m);
    for (size_t q = 0; q < nodes.size(); ++q) t(static_cast<Eigen::Index>(q), m) = std::sqrt(2.0 * m + 1.0) * p(nodes[q]);
  }
  return t;
}

void legendre_values(double t, int degree, double* out) {
  out[0] = 1.0;
  if (degree >= 1) out[1] = t;
  for (int m = 1; m < degree; ++m) out[m + 1] = ((2.0 * m + 1.0) * t * out[m] - m * out[m - 1]) / (m + 1.0);
}

}  // namespace

NodalField project_nodal(const Field& f, int dim, int degree, int level, int points) {
  if (points <= 0) points = degree + 3;
  const GaussRule& rule = gauss_legendre(points);
  const Eigen::MatrixXd P = legendre_table(rule.nodes, degree);
  const int n = 1 << level;
  const double h = std::ldexp(1.0, -level);
  NodalField out{dim, degree, level, {}};
  const int k1 = degree + 1;
  const int bs = out.block_size();
  out.data = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * (dim == 2 ? n : 1) * bs);
  // Cell basis is 2^(level/2) per direction times normalized Legendre; weights carry h/2.
  const double scale1 = std::sqrt(h) * 0.5;
  const int nq = points;
  if (dim == 1) {
    for (int c = 0; c < n; ++c)
      for (int q = 0; q < nq; ++q) {
        const double x = h * (c + 0.5 * (rule.nodes[static_cast<size_t>(q)] + 1.0));
        const double fw = f(x, 0.0) * rule.weights[static_cast<size_t>(q)] * scale1;
        for (int m = 0; m < k1; ++m) out.data[c * k1 + m] += fw * P(q, m);
      }
    return out;
  }
  Eigen::MatrixXd values(nq, nq);
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2) {
      for (int q1 = 0; q1 < nq; ++q1)
        for (int q2 = 0; q2 < nq; ++q2) {
          const double x = h * (c1 + 0.5 * (rule.nodes[static_cast<size_t>(q1)] + 1.0));
          const double y = h * (c2 + 0.5 * (rule.nodes[static_cast<size_t>(q2)] + 1.0));
          values(q1, q2) = f(x, y) * rule.weights[static_cast<size_t>(q1)] * rule.weights[static_cast<size_t>(q2)];
        }
      const Eigen::MatrixXd m = P.transpose() * values * P * (scale1 * scale1);  // (m1, m2)
      double* dst = out.data.data() + (static_cast<Eigen::Index>(c1) * n + c2) * bs;
      for (int m1 = 0; m1 < k1; ++m1)
        for (int m2 = 0; m2 < k1; ++m2) dst[m1 * k1 + m2] = m(m1, m2);
    }
  return out;
}

HierState project_L2(const Field& f, SpacePtr space) {
  const int level = finest_level(*space);
  return from_nodal(project_nodal(f, space->dim(), space->degree(), level), space);
}

namespace {

struct ChainEntry {
  int unit;
  double values[8];
};

// Units of the 1D basis that are nonzero at x from `side`, with their function values.
int chain_at(const ActiveSpace& space, double x, Side side, int order, ChainEntry* out) {
  const Basis1D& basis = space.basis();
  const int k1 = space.degree() + 1;
  int count = 0;
  auto push = [&](int unit) {
    ChainEntry& e = out[count++];
    e.unit = unit;
    for (int i = 0; i < k1; ++i) e.values[i] = basis.fn(unit * k1 + i).eval(x, side, order);
  };
  auto cell_of = [&](int level) -> long {
    const double t = std::ldexp(x, level);
    const long c = side == Side::Plus ? static_cast<long>(std::floor(t)) : static_cast<long>(std::ceil(t)) - 1;
    return c;
  };
  if (space.layout() == Layout::Nodal) {
    const long c = cell_of(space.max_level());
    if (c >= 0 && c < (1L << space.max_level())) push(static_cast<int>(c));
    return count;
  }
  push(0);
  for (int l = 1; l <= space.max_level(); ++l) {
    const long c = cell_of(l - 1);
    if (c >= 0 && c < (1L << (l - 1))) push(key_position(l, static_cast<int>(c)));
  }
  return count;
}

}  // namespace

double eval_state(const HierState& state, double x, double y, int order_x, int order_y, Side side_x, Side side_y) {
  const ActiveSpace& space = *state.space;
  const int k1 = space.degree() + 1;
  // periodic wrap of one-sided limits at the domain ends
  auto wrap = [](double& t, Side s) {
    if (t <= 0.0 && s == Side::Minus) t = 1.0;
    else if (t >= 1.0 && s == Side::Plus) t = 0.0;
  };
  wrap(x, side_x);
  wrap(y, side_y);
  ChainEntry cx[kMaxLevelCap + 2];
  ChainEntry cy[kMaxLevelCap + 2];
  const int nx = chain_at(space, x, side_x, order_x, cx);
  double acc = 0.0;
  if (space.dim() == 1) {
    for (int a = 0; a < nx; ++a) {
      const int b = space.find(cx[a].unit);
      if (b < 0) continue;
      for (int i = 0; i < k1; ++i) acc += state.coeffs[b * k1 + i] * cx[a].values[i];
    }
    return acc;
  }
  const int ny = chain_at(space, y, side_y, order_y, cy);
  const int bs = k1 * k1;
  for (int a = 0; a < nx; ++a)
    for (int c = 0; c < ny; ++c) {
      const int b = space.find(cx[a].unit, cy[c].unit);
      if (b < 0) continue;
      const double* coef = state.coeffs.data() + static_cast<Eigen::Index>(b) * bs;
      for (int i1 = 0; i1 < k1; ++i1) {
        double row = 0.0;
        for (int i2 = 0; i2 < k1; ++i2) row += coef[i1 * k1 + i2] * cy[c].values[i2];
        acc += row * cx[a].values[i1];
      }
    }
  return acc;
}

double eval_nodal_cell(const NodalField& field, int cx, int cy, double xi, double eta) {
  const int k1 = field.degree + 1;
  const double s = std::pow(2.0, 0.5 * field.level);
  double px[8];
  double py[8];
  legendre_values(xi, field.degree, px);
  legendre_values(eta, field.degree, py);
  for (int m = 0; m < k1; ++m) {
    px[m] *= s * std::sqrt(2.0 * m + 1.0);
    py[m] *= s * std::sqrt(2.0 * m + 1.0);
  }
  if (field.dim == 1) {
    double acc = 0.0;
    for (int m = 0; m < k1; ++m) acc += field.data[cx * k1 + m] * px[m];
    return acc;
  }
  const double* c = field.data.data() + (static_cast<Eigen::Index>(cx) * field.cells_1d() + cy) * k1 * k1;
  double acc = 0.0;
  for (int m1 = 0; m1 < k1; ++m1)
    for (int m2 = 0; m2 < k1; ++m2) acc += c[m1 * k1 + m2] * px[m1] * py[m2];
  return acc;
}

ErrorNorms compute_errors(const HierState& state, const Field& exact, int samples) {
  const ActiveSpace& space = *state.space;
  const int level = finest_level(space);
  const NodalField field = to_nodal(state, level);
  const int k1 = space.degree() + 1;
  const int n = 1 << level;
  const double h = std::ldexp(1.0, -level);
  const GaussRule& rule = gauss_legendre(space.degree() + 3);
  const Eigen::MatrixXd Pq = legendre_table(rule.nodes, space.degree()) * std::pow(2.0, 0.5 * level);
  std::vector<double> sample_nodes(static_cast<size_t>(samples));
  for (int s = 0; s < samples; ++s) sample_nodes[static_cast<size_t>(s)] = -1.0 + (2.0 * s + 1.0) / samples;
  const Eigen::MatrixXd Ps = legendre_table(sample_nodes, space.degree()) * std::pow(2.0, 0.5 * level);
  const int nq = static_cast<int>(rule.nodes.size());
  ErrorNorms e;
  auto coord = [&](int c, double r) { return h * (c + 0.5 * (r + 1.0)); };
  if (space.dim() == 1) {
    for (int c = 0; c < n; ++c) {
      const Eigen::VectorXd coef = field.data.segment(c * k1, k1);
      const Eigen::VectorXd uq = Pq * coef;
      for (int q = 0; q < nq; ++q) {
        const double d = std::abs(uq[q] - exact(coord(c, rule.nodes[static_cast<size_t>(q)]), 0.0));
        const double w = 0.5 * h * rule.weights[static_cast<size_t>(q)];
        e.l1 += w * d;
        e.l2 += w * d * d;
      }
      const Eigen::VectorXd us = Ps * coef;
      for (int s = 0; s < samples; ++s)
        e.linf = std::max(e.linf, std::abs(us[s] - exact(coord(c, sample_nodes[static_cast<size_t>(s)]), 0.0)));
    }
    e.l2 = std::sqrt(e.l2);
    return e;
  }
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2) {
      const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> C(
          field.data.data() + (static_cast<Eigen::Index>(c1) * n + c2) * k1 * k1, k1, k1);
      const Eigen::MatrixXd uq = Pq * C * Pq.transpose();
      for (int q1 = 0; q1 < nq; ++q1)
        for (int q2 = 0; q2 < nq; ++q2) {
          const double d = std::abs(uq(q1, q2) - exact(coord(c1, rule.nodes[static_cast<size_t>(q1)]),
                                                      coord(c2, rule.nodes[static_cast<size_t>(q2)])));
          const double w = 0.25 * h * h * rule.weights[static_cast<size_t>(q1)] * rule.weights[static_cast<size_t>(q2)];
          e.l1 += w * d;
          e.l2 += w * d * d;
        }
      const Eigen::MatrixXd us = Ps * C * Ps.transpose();
      for (int s1 = 0; s1 < samples; ++s1)
        for (int s2 = 0; s2 < samples; ++s2)
          e.linf = std::max(e.linf, std::abs(us(s1, s2) - exact(coord(c1, sample_nodes[static_cast<size_t>(s1)]),
                                                                 coord(c2, sample_nodes[static_cast<size_t>(s2)]))));
    }
  e.l2 = std::sqrt(e.l2);
  return e;
}

void write_samples(std::ostream& out, const HierState& state, int resolution) {
  const ActiveSpace& space = *state.space;
  const int level = finest_level(space);
  const NodalField field = to_nodal(state, level);
  const int n = 1 << level;
  auto locate = [&](double x, int& cell, double& xi) {
    cell = std::min(n - 1, static_cast<int>(std::floor(x * n)));
    xi = 2.0 * (x * n - cell) - 1.0;
  };
  for (int i = 0; i < resolution; ++i) {
    const double x = (i + 0.5) / resolution;
    int cx = 0;
    double xi = 0.0;
    locate(x, cx, xi);
    if (space.dim() == 1) {
      out << x << ' ' << eval_nodal_cell(field, cx, 0, xi, 0.0) << '\n';
      continue;
    }
    for (int j = 0; j < resolution; ++j) {
      const double y = (j + 0.5) / resolution;
      int cy = 0;
      double eta = 0.0;
      locate(y, cy, eta);
      out << x << ' ' << y << ' ' << eval_nodal_cell(field, cx, cy, xi, eta) << '\n';
    }
    out << '\n';
  }
}

}  // namespace uwdg
