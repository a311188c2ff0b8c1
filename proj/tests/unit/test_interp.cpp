#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "uwdg/interp.hpp"
#include "uwdg/state_ops.hpp"

using namespace uwdg;

namespace {

const double kPi = std::numbers::pi;

ScalarFunction identity_fn() {
  return {[](double u, int n) { return n == 0 ? u : (n == 1 ? 1.0 : 0.0); }};
}
ScalarFunction half_square() {
  return {[](double u, int n) { return n == 0 ? 0.5 * u * u : (n == 1 ? u : (n == 2 ? 1.0 : 0.0)); }};
}
ScalarFunction sine() {
  return {[](double u, int n) { return std::sin(u + 0.5 * kPi * n); }};
}
ScalarFunction power_fn(int m) {
  return {[m](double u, int n) {
    if (n > m) return 0.0;
    double c = 1.0;
    for (int r = 0; r < n; ++r) c *= (m - r);
    return c * std::pow(u, m - n);
  }};
}

HierState random_state(SpacePtr space, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  HierState s(space);
  for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = nd(rng);
  return s;
}

}  // namespace

TEST_CASE("identity is reproduced on full, sparse, adaptive and nodal spaces") {
  std::vector<SpacePtr> spaces = {
      ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 4, {}}),
      ActiveSpace::from_spec({SpaceKind::Full, 2, 2, 3, {}}),
      ActiveSpace::from_spec({SpaceKind::Sparse, 2, 3, 4, {}}),
      ActiveSpace::from_spec({SpaceKind::Adaptive, 2, 2, 4, {ElemKey::make2(3, 1, 2, 0), ElemKey::make2(0, 4, 0, 5)}}),
      ActiveSpace::nodal(2, 2, 3),
      ActiveSpace::nodal(1, 3, 3),
  };
  for (const SpacePtr& s : spaces) {
    const int m = s->degree() + 1 + (s->degree() % 2 == 0 ? 0 : 1);
    InterpOperator op(s, m);
    const HierState u = random_state(s, 3);
    CHECK((op.compose(u, identity_fn()).coeffs - u.coeffs).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("constant state composes to a constant") {
  auto s = ActiveSpace::from_spec({SpaceKind::Sparse, 2, 2, 3, {}});
  InterpOperator op(s, 3);
  const HierState u = project_L2([](double, double) { return 1.5; }, s);
  const HierState r = op.compose(u, half_square());
  const HierState want = project_L2([](double, double) { return 1.125; }, s);
  CHECK((r.coeffs - want.coeffs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("degree validation") {
  auto s = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 3, {}});
  CHECK_THROWS_AS(InterpOperator(s, 1), std::invalid_argument);
  CHECK_THROWS_AS(InterpOperator(s, 4), std::invalid_argument);
  CHECK_NOTHROW(InterpOperator(s, 3));
}

TEST_CASE("linear in the composed function") {
  auto s = ActiveSpace::from_spec({SpaceKind::Sparse, 2, 2, 4, {}});
  InterpOperator op(s, 3);
  const HierState u = project_L2([](double x, double y) { return std::sin(2 * kPi * x) * std::cos(2 * kPi * y); }, s);
  const ScalarFunction g1 = sine(), g2 = half_square();
  const ScalarFunction mix{[&](double v, int n) { return 2.0 * g1.derivative(v, n) - 0.5 * g2.derivative(v, n); }};
  const Eigen::VectorXd lhs = op.compose(u, mix).coeffs;
  const Eigen::VectorXd rhs = 2.0 * op.compose(u, g1).coeffs - 0.5 * op.compose(u, g2).coeffs;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("exact on tensor polynomials of degree M per direction") {
  for (int m : {3, 5}) {
    auto s1 = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 3, {}});
    InterpOperator op1(s1, m);
    const HierState u1 = project_L2([](double x, double) { return x; }, s1);
    const Eigen::VectorXd c1 = op1.surpluses(u1, power_fn(m));
    auto s2 = ActiveSpace::from_spec({SpaceKind::Sparse, 2, 1, 3, {}});
    InterpOperator op2(s2, m);
    const HierState u2 = project_L2([](double x, double y) { return x * y; }, s2);
    const Eigen::VectorXd c2 = op2.surpluses(u2, power_fn(m));
    double worst = 0.0;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
      const double x = uni(rng), y = uni(rng);
      worst = std::max(worst, std::abs(op1.eval_interpolant(c1, x) - std::pow(x, m)));
      worst = std::max(worst, std::abs(op2.eval_interpolant(c2, x, y) - std::pow(x * y, m)));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("interpolation error decays with order M+1") {
  std::vector<double> err;
  for (int n = 3; n <= 6; ++n) {
    auto s = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, n, {}});
    InterpOperator op(s, 3);
    const HierState u = project_L2([](double x, double) { return 2.0 * std::cos(2 * kPi * x); }, s);
    const Eigen::VectorXd c = op.surpluses(u, sine());
    double worst = 0.0;
    const int samples = 64 << n;
    for (int i = 0; i < samples; ++i) {
      const double x = (i + 0.5) / samples;
      worst = std::max(worst, std::abs(op.eval_interpolant(c, x) - std::sin(eval_state(u, x))));
    }
    err.push_back(worst);
  }
  const double slope = std::log2(err[2] / err[3]);
  MESSAGE("sup-norm slope " << slope);
  CHECK(slope == doctest::Approx(4.0).epsilon(0.3 / 4.0));
}

TEST_CASE("value on a cell only depends on its ancestor blocks") {
  auto s = ActiveSpace::from_spec({SpaceKind::Full, 2, 2, 3, {}});
  InterpOperator op(s, 3);
  const HierState u = random_state(s, 9);
  const Eigen::VectorXd full = op.surpluses(u, sine());
  // cell (5, 2) at level 3; blocks whose support contains it
  const double x0 = 5.0 / 8, y0 = 2.0 / 8;
  HierState cut = u;
  for (int b = 0; b < s->blocks(); ++b) {
    const ElemKey& key = s->keys()[static_cast<size_t>(b)];
    const Interval ix = key_support(key.level[0], key.index[0]);
    const Interval iy = key_support(key.level[1], key.index[1]);
    const bool covers = ix.lo <= x0 && x0 + 0.125 <= ix.hi && iy.lo <= y0 && y0 + 0.125 <= iy.hi;
    if (!covers) cut.block(b).setZero();
  }
  const Eigen::VectorXd part = op.surpluses(cut, sine());
  double worst = 0.0, scale = 1.0;
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j) {
      const double x = x0 + 0.125 * i / 6, y = y0 + 0.125 * j / 6;
      const Side sx = i == 6 ? Side::Minus : Side::Plus, sy = j == 6 ? Side::Minus : Side::Plus;
      const double a = op.eval_interpolant(full, x, y, sx, sy);
      scale = std::max(scale, std::abs(a));
      worst = std::max(worst, std::abs(a - op.eval_interpolant(part, x, y, sx, sy)));
    }
  MESSAGE("locality deviation " << worst << " at magnitude " << scale);
  CHECK(worst < 1e-12 * scale);
}

TEST_CASE("hierarchical and nodal layouts give the same interpolant") {
  auto hier = ActiveSpace::from_spec({SpaceKind::Full, 2, 2, 3, {}});
  auto nodal = ActiveSpace::nodal(2, 2, 3);
  const Field f = [](double x, double y) { return std::sin(2 * kPi * x) + std::cos(2 * kPi * (x + 2 * y)); };
  const HierState uh = project_L2(f, hier);
  const HierState un = project_L2(f, nodal);
  const HierState rh = InterpOperator(hier, 3).compose(uh, sine());
  const HierState rn = InterpOperator(nodal, 3).compose(un, sine());
  CHECK((to_nodal(rh, 3).data - rn.coeffs).cwiseAbs().maxCoeff() < 1e-12);
}
