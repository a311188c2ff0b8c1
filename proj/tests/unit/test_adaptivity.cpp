#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "uwdg/adaptivity.hpp"

using namespace uwdg;

namespace {

const double kPi = std::numbers::pi;

bool contains_all(const std::vector<ElemKey>& big, const std::vector<ElemKey>& small) {
  for (const ElemKey& k : small)
    if (std::find(big.begin(), big.end(), k) == big.end()) return false;
  return true;
}

HierState random_adaptive(int dim, int k, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto full = ActiveSpace::from_spec({SpaceKind::Full, dim, k, n, {}});
  std::vector<ElemKey> seedkeys;
  for (const ElemKey& key : full->keys())
    if (dist(rng) > 0.3) seedkeys.push_back(key);
  auto sp = ActiveSpace::from_spec({SpaceKind::Adaptive, dim, k, n, seedkeys});
  HierState u(sp);
  // decaying magnitudes so that both thresholds are crossed
  for (int b = 0; b < sp->blocks(); ++b) {
    const double scale = std::pow(4.0, -sp->keys()[static_cast<size_t>(b)].level_sum());
    for (int i = 0; i < sp->block_size(); ++i) u.block(b)[i] = scale * dist(rng);
  }
  return u;
}

}  // namespace

TEST_CASE("refine activates children of large blocks") {
  const AdaptConfig cfg{1e-2, 0.0, 4};
  auto root = ActiveSpace::hierarchical(1, 2, 4, SpaceKind::Adaptive, {ElemKey::root(1)});
  HierState u(root);
  u.coeffs[0] = 0.5;
  const HierState r = refine(u, cfg);
  REQUIRE(r.space->keys().size() == 2);
  CHECK(r.space->keys()[1] == ElemKey::make1(1, 0));
  CHECK(r.coeffs.segment(3, 3).isZero());
  CHECK(r.coeffs[0] == 0.5);

  HierState small(root);
  small.coeffs[0] = 1e-3;
  CHECK(refine(small, cfg).space == root);
}

TEST_CASE("coarsen removes small leaves down to the root") {
  const AdaptConfig cfg{1e-2, 0.0, 4};
  auto sp = ActiveSpace::from_spec({SpaceKind::Full, 2, 2, 3, {}});
  HierState u(sp);
  u.block(0)[0] = 1.0;
  u.block(3)[1] = 1e-4;
  const HierState c = coarsen(u, cfg);
  CHECK(c.space->keys().size() == 1);
  CHECK(c.coeffs[0] == 1.0);
}

TEST_CASE("refine then coarsen is the identity when every block is large") {
  const AdaptConfig cfg{1e-2, 0.0, 3};
  auto sp = ActiveSpace::from_spec({SpaceKind::Full, 1, 2, 3, {}});
  HierState u(sp);
  u.coeffs.setConstant(1.0);
  const HierState r = refine(u, cfg);
  CHECK(r.space == sp);
  const HierState c = coarsen(r, cfg);
  CHECK(c.space == sp);
  CHECK(c.coeffs == u.coeffs);
}

TEST_CASE("adaptation preserves closure and is monotone") {
  for (int dim = 1; dim <= 2; ++dim)
    for (unsigned seed = 1; seed <= 20; ++seed) {
      const HierState u = random_adaptive(dim, 2, dim == 1 ? 6 : 4, seed);
      const AdaptConfig cfg{0.05, 0.0, dim == 1 ? 7 : 5};
      const HierState r = refine(u, cfg);
      CHECK(is_downward_closed(r.space->keys()));
      CHECK(contains_all(r.space->keys(), u.space->keys()));
      // retained coefficients unchanged
      for (int b = 0; b < u.space->blocks(); ++b) {
        const int rb = r.space->find_key(u.space->keys()[static_cast<size_t>(b)]);
        CHECK((r.block(rb) - u.block(b)).norm() == 0.0);
      }
      const HierState c = coarsen(u, cfg);
      CHECK(is_downward_closed(c.space->keys()));
      CHECK(contains_all(u.space->keys(), c.space->keys()));
      for (int b = 0; b < u.space->blocks(); ++b) {
        const ElemKey& key = u.space->keys()[static_cast<size_t>(b)];
        if (c.space->find_key(key) < 0) CHECK(u.block_norm(b) < cfg.eta());
      }
      // fixed point: no removable leaf remains
      CHECK(coarsen(c, cfg).space == c.space);
    }
}

TEST_CASE("initial adaptation") {
  const AdaptConfig cfg{1e-2, 0.0, 8};
  const HierState one = adapt_initial([](double, double) { return 2.0; }, 2, 2, cfg);
  CHECK(one.space->keys().size() == 1);

  const HierState s = adapt_initial([](double x, double) { return std::sin(2 * kPi * x); }, 1, 2, cfg);
  CHECK(s.space->dof() == 24);
  CHECK(is_downward_closed(s.space->keys()));
  const HierState s3 = adapt_initial([](double x, double) { return std::sin(2 * kPi * x); }, 1, 2, {1e-3, 0.0, 8});
  MESSAGE("sin(2 pi x) DoF at 1e-2: " << s.space->dof() << ", at 1e-3: " << s3.space->dof());

  // a narrow pulse refines only near its center
  const double c = 0.3, sigma = 5e-4, kappa = 0.5 * std::sqrt(c / sigma);
  const HierState p = adapt_initial(
      [&](double x, double) { return 3 * c / std::pow(std::cosh(kappa * (x - 0.5)), 2); }, 1, 2, {1e-4, 0.0, 8});
  int fine = 0;
  for (const ElemKey& k : p.space->keys())
    if (k.level[0] >= 6) {
      ++fine;
      const Interval iv = key_support(k.level[0], k.index[0]);
      CHECK(std::abs(0.5 * (iv.lo + iv.hi) - 0.5) < 0.2);
    }
  CHECK(fine > 0);

  CHECK_THROWS_AS(adapt_initial([](double, double) { return 0.0; }, 1, 2, {-1.0, 0.0, 8}), std::invalid_argument);
  CHECK_THROWS_AS(adapt_initial([](double, double) { return 0.0; }, 1, 2, {1e-2, 1e-1, 8}), std::invalid_argument);
}
