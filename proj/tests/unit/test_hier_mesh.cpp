#include <set>
#include <sstream>

#include "doctest.h"
#include "uwdg/hier_mesh.hpp"

using namespace uwdg;

TEST_CASE("cell intervals") {
  auto a = cell_interval(0, 0);
  CHECK(a.lo == 0.0);
  CHECK(a.hi == 1.0);
  auto b = cell_interval(3, 5);
  CHECK(b.lo == doctest::Approx(0.625));
  CHECK(b.hi == doctest::Approx(0.75));
  auto c = cell_interval(2, 3);
  CHECK(c.lo == doctest::Approx(0.75));
  CHECK(c.hi == 1.0);
  CHECK_THROWS_AS(cell_interval(2, 4), std::domain_error);
  CHECK_THROWS_AS(cell_interval(2, -1), std::domain_error);
}

TEST_CASE("children and parents") {
  auto c0 = children(ElemKey::make1(0, 0), 0, 5);
  REQUIRE(c0);
  REQUIRE(c0->size() == 1);
  CHECK((*c0)[0] == ElemKey::make1(1, 0));
  auto c2 = children(ElemKey::make1(2, 1), 0, 5);
  REQUIRE(c2);
  REQUIRE(c2->size() == 2);
  CHECK((*c2)[0] == ElemKey::make1(3, 2));
  CHECK((*c2)[1] == ElemKey::make1(3, 3));
  auto c3 = children(ElemKey::make2(1, 0, 0, 0), 1, 5);
  REQUIRE(c3);
  REQUIRE(c3->size() == 1);
  CHECK((*c3)[0] == ElemKey::make2(1, 1, 0, 0));
  CHECK_FALSE(children(ElemKey::make1(3, 0), 0, 3));

  // parent(child) == key for every generated child.
  for (int d = 1; d <= 2; ++d) {
    const auto keys = enumerate_space(SpaceSpec{SpaceKind::Full, d, 1, 4, {}});
    for (const ElemKey& k : keys)
      for (int m = 0; m < d; ++m)
        if (auto ch = children(k, m, 5))
          for (const ElemKey& c : *ch) {
            auto p = parent(c, m);
            REQUIRE(p);
            CHECK(*p == k);
          }
  }
}

namespace {

size_t brute_count(int n, bool sparse) {
  size_t count = 0;
  for (int l1 = 0; l1 <= n; ++l1)
    for (int l2 = 0; l2 <= n; ++l2) {
      if (sparse && l1 + l2 > n) continue;
      const size_t t1 = l1 == 0 ? 1 : (size_t{1} << (l1 - 1));
      const size_t t2 = l2 == 0 ? 1 : (size_t{1} << (l2 - 1));
      count += t1 * t2;
    }
  return count;
}

}  // namespace

TEST_CASE("space enumeration") {
  const auto full1 = enumerate_space(SpaceSpec{SpaceKind::Full, 1, 2, 3, {}});
  CHECK(full1.size() * 3 == 24);

  const auto sparse1 = enumerate_space(SpaceSpec{SpaceKind::Sparse, 2, 2, 1, {}});
  REQUIRE(sparse1.size() == 3);
  std::set<std::pair<int, int>> levels;
  for (const auto& k : sparse1) levels.insert({k.level[0], k.level[1]});
  CHECK(levels == std::set<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}});

  const auto full2 = enumerate_space(SpaceSpec{SpaceKind::Full, 2, 1, 2, {}});
  CHECK(full2.size() * 4 == 64);

  for (int n = 1; n <= 7; ++n) {
    const auto s = enumerate_space(SpaceSpec{SpaceKind::Sparse, 2, 1, n, {}});
    const auto f = enumerate_space(SpaceSpec{SpaceKind::Full, 2, 1, n, {}});
    CHECK(s.size() == brute_count(n, true));
    CHECK(f.size() == brute_count(n, false));
    CHECK(s.size() < f.size());
    for (const auto& k : s) CHECK(k.level_sum() <= n);
    for (const auto& k : f) CHECK(k.level_max() <= n);
    CHECK(is_downward_closed(s));
    CHECK(std::is_sorted(s.begin(), s.end(), key_less));
  }
}

TEST_CASE("adaptive closure and key dump") {
  SpaceSpec spec{SpaceKind::Adaptive, 2, 2, 4, {ElemKey::make2(3, 2, 2, 1)}};
  const auto keys = enumerate_space(spec);
  CHECK(is_downward_closed(keys));
  CHECK(keys.front() == ElemKey::root(2));
  std::ostringstream out;
  write_keys(out, keys);
  std::istringstream in(out.str());
  const auto back = read_keys(in, 2);
  CHECK(back == keys);
  std::ostringstream one;
  write_keys(one, std::vector<ElemKey>{ElemKey::make2(3, 2, 2, 1)});
  CHECK(one.str() == "3 2 2 1\n");
}
