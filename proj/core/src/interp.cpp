#include "uwdg/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uwdg/matrix_cache.hpp"

namespace uwdg {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Units of a 1D family whose functions can be nonzero at x from `side`.
std::vector<int> units_at(const Basis1D& basis, double x, Side side) {
  if (x <= 0.0 && side == Side::Minus) x = 1.0;
  if (x >= 1.0 && side == Side::Plus) x = 0.0;
  auto cell_of = [&](int level) {
    const double t = std::ldexp(x, level);
    long c = side == Side::Plus ? static_cast<long>(std::floor(t)) : static_cast<long>(std::ceil(t)) - 1;
    return std::clamp(c, 0L, (1L << level) - 1);
  };
  std::vector<int> out;
  if (!basis.hierarchical()) {
    out.push_back(static_cast<int>(cell_of(basis.max_level())));
    return out;
  }
  out.push_back(0);
  for (int l = 1; l <= basis.max_level(); ++l) out.push_back(key_position(l, static_cast<int>(cell_of(l - 1))));
  return out;
}

}  // namespace

InterpOperator::InterpOperator(SpacePtr space, int degree) : space_(std::move(space)), degree_(degree) {
  const int k = space_->degree();
  if (degree_ < k + 1 || degree_ % 2 == 0 || degree_ > 7)
    throw std::invalid_argument("InterpOperator: interpolation degree " + std::to_string(degree_) +
                                " must be odd, at most 7 and at least " + std::to_string(k + 1));
  const bool nodal = space_->layout() == Layout::Nodal;
  interp_ = nodal ? Basis1D::hermite(degree_, space_->max_level()) : Basis1D::interp(degree_, space_->max_level());
  orders_ = (degree_ + 1) / 2;
  per_unit_ = degree_ + 1;
  const Basis1D& dg = space_->basis();
  const int k1 = k + 1;
  const int units = interp_->units();
  points_.resize(static_cast<size_t>(units));
  ancestors_.resize(static_cast<size_t>(units));
  for (int u = 0; u < units; ++u) {
    for (int e = 0; e < 2; ++e) {
      const PointFunctional& pf = interp_->functional(u * per_unit_ + e * orders_);
      PointData& pd = points_[static_cast<size_t>(u)][static_cast<size_t>(e)];
      for (int w : units_at(dg, pf.x, pf.side)) {
        ChainEntry ce{w, Eigen::MatrixXd(orders_, k1)};
        for (int a = 0; a < orders_; ++a)
          for (int i = 0; i < k1; ++i) ce.values(a, i) = dg.fn(w * k1 + i).eval(pf.x, pf.side, a);
        pd.dg_chain.push_back(std::move(ce));
      }
    }
    if (nodal || u == 0) continue;
    auto [level, index] = key_from_position(u);
    while (level > 0) {
      --level;
      index = level == 0 ? 0 : index / 2;
      const int a = key_position(level, index);
      Ancestor anc{a, Eigen::MatrixXd(per_unit_, per_unit_)};
      for (int i = 0; i < per_unit_; ++i) {
        const PointFunctional& pf = interp_->functional(u * per_unit_ + i);
        for (int m = 0; m < per_unit_; ++m) anc.weights(i, m) = interp_->fn(a * per_unit_ + m).eval(pf.x, pf.side, pf.order);
      }
      ancestors_[static_cast<size_t>(u)].push_back(std::move(anc));
    }
  }
  const Eigen::MatrixXd& v00 = volume_cached(dg, *interp_, 0, 0);
  projection_ = assemble_tensor(*space_, k1, per_unit_, {TensorTerm{&v00, space_->dim() == 2 ? &v00 : nullptr, 1.0}});
}

void InterpOperator::jet_at(const HierState& u, const PointData& px, const PointData* py, double* jets) const {
  const int k1 = space_->degree() + 1;
  const int ny = py ? orders_ : 1;
  std::fill(jets, jets + orders_ * ny, 0.0);
  if (!py) {
    for (const ChainEntry& cx : px.dg_chain) {
      const int b = space_->find(cx.unit);
      if (b < 0) continue;
      const Eigen::VectorXd c = u.block(b);
      for (int a = 0; a < orders_; ++a) jets[a] += cx.values.row(a).dot(c);
    }
    return;
  }
  Eigen::MatrixXd tmp(k1, orders_);
  for (const ChainEntry& cx : px.dg_chain) {
    tmp.setZero();
    bool any = false;
    for (const ChainEntry& cy : py->dg_chain) {
      const int b = space_->find(cx.unit, cy.unit);
      if (b < 0) continue;
      any = true;
      const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(
          u.coeffs.data() + static_cast<Eigen::Index>(b) * k1 * k1, k1, k1);
      tmp.noalias() += c * cy.values.transpose();
    }
    if (!any) continue;
    const Eigen::MatrixXd j = cx.values * tmp;  // orders x orders
    for (int a = 0; a < orders_; ++a)
      for (int bb = 0; bb < orders_; ++bb) jets[a * orders_ + bb] += j(a, bb);
  }
}

void InterpOperator::compose_jet(const double* jets, const ScalarFunction& g, double* out) const {
  const bool two = space_->dim() == 2;
  const int ny = two ? orders_ : 1;
  const int n = orders_ * ny;
  // Taylor coefficients of u around the point, constant term removed
  double delta[16];
  double power[16];
  double next[16];
  double result[16];
  for (int a = 0; a < orders_; ++a)
    for (int b = 0; b < ny; ++b) delta[a * ny + b] = jets[a * ny + b] / (factorial(a) * factorial(b));
  const double u0 = delta[0];
  delta[0] = 0.0;
  std::fill(result, result + n, 0.0);
  std::fill(power, power + n, 0.0);
  power[0] = 1.0;
  result[0] = g.derivative(u0, 0);
  const int max_power = (orders_ - 1) * (two ? 2 : 1);
  for (int p = 1; p <= max_power; ++p) {
    std::fill(next, next + n, 0.0);
    for (int a1 = 0; a1 < orders_; ++a1)
      for (int b1 = 0; b1 < ny; ++b1) {
        const double x = power[a1 * ny + b1];
        if (x == 0.0) continue;
        for (int a2 = 0; a1 + a2 < orders_; ++a2)
          for (int b2 = 0; b1 + b2 < ny; ++b2) next[(a1 + a2) * ny + b1 + b2] += x * delta[a2 * ny + b2];
      }
    std::copy(next, next + n, power);
    const double c = g.derivative(u0, p) / factorial(p);
    for (int i = 0; i < n; ++i) result[i] += c * power[i];
  }
  for (int a = 0; a < orders_; ++a)
    for (int b = 0; b < ny; ++b) out[a * ny + b] = result[a * ny + b] * factorial(a) * factorial(b);
}

Eigen::VectorXd InterpOperator::surpluses(const HierState& u, const ScalarFunction& g) const {
  const ActiveSpace& sp = *space_;
  const int bs = block_size();
  Eigen::VectorXd s(size());
  double jets[16];
  double vals[16];
  if (sp.dim() == 1) {
    for (int b = 0; b < sp.blocks(); ++b) {
      const int u1 = sp.units()[static_cast<size_t>(b)][0];
      auto blk = s.segment(static_cast<Eigen::Index>(b) * bs, bs);
      for (int e = 0; e < 2; ++e) {
        jet_at(u, points_[static_cast<size_t>(u1)][static_cast<size_t>(e)], nullptr, jets);
        compose_jet(jets, g, vals);
        for (int a = 0; a < orders_; ++a) blk[e * orders_ + a] = vals[a];
      }
      for (const Ancestor& anc : ancestors_[static_cast<size_t>(u1)]) {
        const int ab = sp.find(anc.unit);
        if (ab >= 0) blk -= anc.weights * s.segment(static_cast<Eigen::Index>(ab) * bs, bs);
      }
    }
    return s;
  }
  const int m1 = per_unit_;
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  static const Eigen::MatrixXd empty;
  for (int b = 0; b < sp.blocks(); ++b) {
    const auto [u1, u2] = sp.units()[static_cast<size_t>(b)];
    Eigen::Map<RowMat> blk(s.data() + static_cast<Eigen::Index>(b) * bs, m1, m1);
    for (int e1 = 0; e1 < 2; ++e1)
      for (int e2 = 0; e2 < 2; ++e2) {
        jet_at(u, points_[static_cast<size_t>(u1)][static_cast<size_t>(e1)], &points_[static_cast<size_t>(u2)][static_cast<size_t>(e2)],
               jets);
        compose_jet(jets, g, vals);
        for (int a = 0; a < orders_; ++a)
          for (int c = 0; c < orders_; ++c) blk(e1 * orders_ + a, e2 * orders_ + c) = vals[a * orders_ + c];
      }
    // subtract every ancestor pair other than the block itself
    const auto& anc1 = ancestors_[static_cast<size_t>(u1)];
    const auto& anc2 = ancestors_[static_cast<size_t>(u2)];
    for (int i = -1; i < static_cast<int>(anc1.size()); ++i)
      for (int j = -1; j < static_cast<int>(anc2.size()); ++j) {
        if (i < 0 && j < 0) continue;
        const int a1 = i < 0 ? u1 : anc1[static_cast<size_t>(i)].unit;
        const int a2 = j < 0 ? u2 : anc2[static_cast<size_t>(j)].unit;
        const int ab = sp.find(a1, a2);
        if (ab < 0) continue;
        const Eigen::Map<const RowMat> sa(s.data() + static_cast<Eigen::Index>(ab) * bs, m1, m1);
        if (i < 0)
          blk.noalias() -= sa * anc2[static_cast<size_t>(j)].weights.transpose();
        else if (j < 0)
          blk.noalias() -= anc1[static_cast<size_t>(i)].weights * sa;
        else
          blk.noalias() -= anc1[static_cast<size_t>(i)].weights * sa * anc2[static_cast<size_t>(j)].weights.transpose();
      }
  }
  return s;
}

std::vector<double> InterpOperator::point_values(const HierState& u) const {
  const ActiveSpace& sp = *space_;
  std::vector<double> out;
  out.reserve(static_cast<size_t>(sp.blocks()) * (sp.dim() == 2 ? 4 : 2));
  double jets[16];
  for (int b = 0; b < sp.blocks(); ++b) {
    const auto [u1, u2] = sp.units()[static_cast<size_t>(b)];
    for (int e1 = 0; e1 < 2; ++e1) {
      if (sp.dim() == 1) {
        jet_at(u, points_[static_cast<size_t>(u1)][static_cast<size_t>(e1)], nullptr, jets);
        out.push_back(jets[0]);
        continue;
      }
      for (int e2 = 0; e2 < 2; ++e2) {
        jet_at(u, points_[static_cast<size_t>(u1)][static_cast<size_t>(e1)], &points_[static_cast<size_t>(u2)][static_cast<size_t>(e2)],
               jets);
        out.push_back(jets[0]);
      }
    }
  }
  return out;
}

HierState InterpOperator::to_state(const Eigen::VectorXd& surpluses) const {
  return HierState(space_, projection_ * surpluses);
}

HierState InterpOperator::compose(const HierState& u, const ScalarFunction& g) const { return to_state(surpluses(u, g)); }

double InterpOperator::eval_interpolant(const Eigen::VectorXd& s, double x, double y, Side sx, Side sy) const {
  const ActiveSpace& sp = *space_;
  const int m1 = per_unit_;
  auto values = [&](int unit, double t, Side side) {
    if (t <= 0.0 && side == Side::Minus) t = 1.0;
    if (t >= 1.0 && side == Side::Plus) t = 0.0;
    Eigen::VectorXd v(m1);
    for (int m = 0; m < m1; ++m) v[m] = interp_->fn(unit * m1 + m).eval(t, side, 0);
    return v;
  };
  double acc = 0.0;
  const std::vector<int> cx = units_at(*interp_, x, sx);
  if (sp.dim() == 1) {
    for (int a : cx)
      if (int b = sp.find(a); b >= 0) acc += values(a, x, sx).dot(s.segment(static_cast<Eigen::Index>(b) * m1, m1));
    return acc;
  }
  const std::vector<int> cy = units_at(*interp_, y, sy);
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (int a : cx)
    for (int c : cy) {
      const int b = sp.find(a, c);
      if (b < 0) continue;
      const Eigen::Map<const RowMat> blk(s.data() + static_cast<Eigen::Index>(b) * m1 * m1, m1, m1);
      acc += values(a, x, sx).dot(blk * values(c, y, sy));
    }
  return acc;
}

}  // namespace uwdg
