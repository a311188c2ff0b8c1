#include <cmath>
#include <numbers>

#include "doctest.h"
#include "uwdg/convection.hpp"

using namespace uwdg;

namespace {

const double kPi = std::numbers::pi;

ScalarFunction burgers() {
  return {[](double u, int n) { return n == 0 ? 0.5 * u * u : (n == 1 ? u : (n == 2 ? 1.0 : 0.0)); }};
}
ScalarFunction zero_flux() {
  return {[](double, int) { return 0.0; }};
}

// Direct quadrature of the convection form on the finest uniform grid, using the interpolant's
// point values and the state's one-sided traces.
Eigen::VectorXd quadrature_oracle(const Convection& conv, const HierState& u, const ScalarFunction& f, double alpha) {
  const ActiveSpace& sp = *u.space;
  const InterpOperator& ip = conv.interp();
  const Eigen::VectorXd s = ip.surpluses(u, f);
  const int n = sp.max_level();
  const int nc = 1 << n;
  const double h = 1.0 / nc;
  const GaussRule& g = gauss_legendre(6);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sp.dof());
  for (int row = 0; row < sp.dof(); ++row) {
    HierState v(u.space);
    v.coeffs[row] = 1.0;
    double acc = 0.0;
    if (sp.dim() == 1) {
      for (int c = 0; c < nc; ++c)
        for (size_t q = 0; q < g.nodes.size(); ++q) {
          const double x = (c + 0.5 * (g.nodes[q] + 1.0)) * h;
          acc += 0.5 * h * g.weights[q] * ip.eval_interpolant(s, x) * eval_state(v, x, 0, 1);
        }
      for (int e = 0; e < nc; ++e) {
        const double x = e * h;
        const double fh = 0.5 * (ip.eval_interpolant(s, x, 0, Side::Plus) + ip.eval_interpolant(s, x, 0, Side::Minus)) -
                          alpha * (eval_state(u, x, 0, 0, 0, Side::Plus) - eval_state(u, x, 0, 0, 0, Side::Minus));
        acc += fh * (eval_state(v, x, 0, 0, 0, Side::Plus) - eval_state(v, x, 0, 0, 0, Side::Minus));
      }
    } else {
      for (int cx = 0; cx < nc; ++cx)
        for (int cy = 0; cy < nc; ++cy)
          for (size_t a = 0; a < g.nodes.size(); ++a)
            for (size_t b = 0; b < g.nodes.size(); ++b) {
              const double x = (cx + 0.5 * (g.nodes[a] + 1.0)) * h, y = (cy + 0.5 * (g.nodes[b] + 1.0)) * h;
              acc += 0.25 * h * h * g.weights[a] * g.weights[b] * ip.eval_interpolant(s, x, y) * eval_state(v, x, y, 1, 0);
            }
      for (int e = 0; e < nc; ++e)
        for (int cy = 0; cy < nc; ++cy)
          for (size_t b = 0; b < g.nodes.size(); ++b) {
            const double x = e * h, y = (cy + 0.5 * (g.nodes[b] + 1.0)) * h;
            const double fh =
                0.5 * (ip.eval_interpolant(s, x, y, Side::Plus) + ip.eval_interpolant(s, x, y, Side::Minus)) -
                alpha * (eval_state(u, x, y, 0, 0, Side::Plus) - eval_state(u, x, y, 0, 0, Side::Minus));
            acc += 0.5 * h * g.weights[b] * fh * (eval_state(v, x, y, 0, 0, Side::Plus) - eval_state(v, x, y, 0, 0, Side::Minus));
          }
    }
    out[row] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("convection increments match direct quadrature") {
  {
    auto s = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 3, {}});
    Convection conv(s, 3, burgers());
    const HierState u = project_L2([](double x, double) { return std::sin(2 * kPi * x); }, s);
    const double alpha = conv.wave_speed(u);
    CHECK(alpha == doctest::Approx(1.0).epsilon(0.05));
    const Eigen::VectorXd ref = quadrature_oracle(conv, u, burgers(), alpha);
    CHECK((conv.apply(u, alpha) - ref).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
  }
  for (auto kind : {SpaceKind::Full, SpaceKind::Sparse}) {
    auto s = ActiveSpace::from_spec({kind, 2, 2, 2, {}});
    Convection conv(s, 3, burgers());
    const HierState u = project_L2([](double x, double y) { return std::sin(2 * kPi * (x + y)); }, s);
    const Eigen::VectorXd ref = quadrature_oracle(conv, u, burgers(), 0.7);
    CHECK((conv.apply(u, 0.7) - ref).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("zero flux and constant states give zero increments") {
  auto s = ActiveSpace::from_spec({SpaceKind::Sparse, 2, 2, 4, {}});
  const HierState u = project_L2([](double x, double y) { return std::cos(2 * kPi * x * y); }, s);
  CHECK(Convection(s, 3, zero_flux()).apply(u, 0.0).norm() == 0.0);
  const HierState c = project_L2([](double, double) { return 0.8; }, s);
  Convection conv(s, 3, burgers());
  CHECK(conv.apply(c, conv.wave_speed(c)).norm() < 1e-12);
  auto s1 = ActiveSpace::from_spec({SpaceKind::Full, 1, 3, 4, {}});
  const HierState c1 = project_L2([](double, double) { return -2.0; }, s1);
  Convection conv1(s1, 5, burgers());
  CHECK(conv1.apply(c1, conv1.wave_speed(c1)).norm() < 1e-12);
}

TEST_CASE("convection is dissipative for burgers flux") {
  auto s = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 5, {}});
  Convection conv(s, 3, burgers());
  const HierState u = project_L2([](double x, double) { return 0.5 + std::sin(2 * kPi * x) + 0.3 * (x > 0.4 && x < 0.6); }, s);
  // semi-discrete energy rate of the convection part alone
  CHECK(u.coeffs.dot(conv.apply(u, conv.wave_speed(u))) < 1e-10);
}

TEST_CASE("source increment is the projection") {
  auto s = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 4, {}});
  const double t = 0.0;
  const Field src = [t](double x, double) {
    const double a = 2 * kPi * (x - t);
    return 2 * kPi * std::cos(a) * (-4 * kPi * kPi - 1 + std::sin(a));
  };
  const HierState p(s, source_increment(src, s));
  double worst = 0.0;
  const GaussRule& g = gauss_legendre(5);
  for (int c = 0; c < 16; ++c)
    for (double xi : g.nodes) {
      const double x = (c + 0.5 * (xi + 1.0)) / 16.0;
      worst = std::max(worst, std::abs(eval_state(p, x) - src(x, 0.0)) / (8 * kPi * kPi * kPi));
    }
  CHECK(worst < 1e-3);
  Field zero = [](double, double) { return 0.0; };
  CHECK(source_increment(zero, s).norm() == 0.0);
}
