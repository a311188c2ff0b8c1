#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles/layout.hpp"
#include "uwdg/basis1d.hpp"
#include "uwdg/polynomial.hpp"
#include "uwdg/state_ops.hpp"

using namespace uwdg;

using oracle::fine_integral;

TEST_CASE("alpert point values") {
  auto b = Basis1D::alpert(2, 3);
  CHECK(b->fn(0).eval(0.3, Side::Plus) == doctest::Approx(1.0));
  CHECK(b->fn(1).eval(1.0, Side::Minus) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("orthonormality and vanishing moments") {
  for (int k = 1; k <= 3; ++k) {
    const int levels = 4;
    auto b = Basis1D::alpert(k, levels);
    const int n = b->size();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = fine_integral([&](double x) { return b->fn(i).eval(x, Side::Plus) * b->fn(j).eval(x, Side::Plus); },
                                       levels, k + 3);
        worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-12);
    double moment = 0.0;
    for (int i = k + 1; i < n; ++i)
      for (int m = 0; m <= k; ++m)
        moment = std::max(moment, std::abs(fine_integral(
                                      [&](double x) { return b->fn(i).eval(x, Side::Plus) * std::pow(x, m); }, levels, k + 3)));
    CHECK(moment < 1e-12);
  }
}

TEST_CASE("hermite reference interpolates its data") {
  for (int M : {1, 3, 5}) {
    const int p = (M - 1) / 2;
    const auto& h = hermite_reference(M);
    for (int e = 0; e < 2; ++e)
      for (int d = 0; d <= p; ++d) {
        const Poly& f = h[static_cast<size_t>(e * (p + 1) + d)];
        for (int e2 = 0; e2 < 2; ++e2)
          for (int d2 = 0; d2 <= p; ++d2) {
            const double expect = (e == e2 && d == d2) ? 1.0 : 0.0;
            CHECK(f.derivative(e2 == 0 ? -1.0 : 1.0, d2) == doctest::Approx(expect).epsilon(1e-12));
          }
      }
  }
}

TEST_CASE("interp family matches its functionals") {
  auto b = Basis1D::interp(3, 3);
  for (int i = 0; i < b->size(); ++i) {
    const auto& f = b->functional(i);
    CHECK(b->fn(i).eval(f.x, f.side, f.order) == doctest::Approx(1.0));
  }
}

TEST_CASE("transforms and Parseval") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int dim = 1; dim <= 2; ++dim)
    for (int k = 1; k <= 3; ++k) {
      auto space = ActiveSpace::from_spec(SpaceSpec{SpaceKind::Full, dim, k, 3, {}});
      HierState s(space);
      for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = U(rng);
      const NodalField nf = to_nodal(s, 3);
      CHECK(std::abs(nf.data.squaredNorm() - s.energy()) < 1e-12 * s.energy());
      const HierState back = from_nodal(nf, space);
      CHECK((back.coeffs - s.coeffs).cwiseAbs().maxCoeff() < 1e-12);
      const NodalField finer = to_nodal(s, 4);
      CHECK((from_nodal(finer, space).coeffs - s.coeffs).cwiseAbs().maxCoeff() < 1e-12);
    }
}
