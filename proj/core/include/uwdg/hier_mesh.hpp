#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace uwdg {

/// Hard cap on the dyadic level in any direction.
inline constexpr int kMaxLevelCap = 12;

/// Multilevel wavelet block identifier: level vector l and translation vector j.
/// Translation j_m ranges over [0, max(2^(l_m - 1) - 1, 0)].
struct ElemKey {
  int dim = 1;
  std::array<int, 2> level{0, 0};
  std::array<int, 2> index{0, 0};

  static ElemKey root(int dim) { return ElemKey{dim, {0, 0}, {0, 0}}; }
  static ElemKey make1(int l, int j) { return ElemKey{1, {l, 0}, {j, 0}}; }
  static ElemKey make2(int l1, int l2, int j1, int j2) { return ElemKey{2, {l1, l2}, {j1, j2}}; }

  int level_sum() const { return level[0] + (dim == 2 ? level[1] : 0); }
  int level_max() const { return dim == 2 ? std::max(level[0], level[1]) : level[0]; }
  bool valid(int max_level) const;

  friend bool operator==(const ElemKey&, const ElemKey&) = default;
};

/// Deterministic order: (|l|_1, l, j) lexicographic.
bool key_less(const ElemKey& a, const ElemKey& b);

/// Number of translations at a 1D level: 1 for l = 0, 2^(l-1) otherwise.
constexpr int translations_at(int level) { return level == 0 ? 1 : (1 << (level - 1)); }

/// Dense 1D position of (l, j) among all keys of levels <= N (0 for the root, 2^(l-1) + j otherwise).
constexpr int key_position(int level, int index) { return level == 0 ? 0 : (1 << (level - 1)) + index; }

/// Inverse of key_position.
std::pair<int, int> key_from_position(int position);

/// Half-open-at-the-left dyadic interval (lo, hi].
struct Interval {
  double lo;
  double hi;
};

/// Cell I_n^j = (2^-n j, 2^-n (j+1)]. Throws std::domain_error when j is out of range.
Interval cell_interval(int n, long j);

/// Support of a 1D wavelet block: the cell (l-1, j) for l >= 1, [0,1] for the root.
Interval key_support(int level, int index);

/// Children of a key in one dimension. Returns nullopt when refining would exceed max_level.
std::optional<std::vector<ElemKey>> children(const ElemKey& key, int dim, int max_level);

/// Parent of a key in one dimension, nullopt for level 0 in that dimension.
std::optional<ElemKey> parent(const ElemKey& key, int dim);

enum class SpaceKind { Full, Sparse, Adaptive };

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Full;
  int dim = 1;
  int degree = 2;
  int max_level = 3;
  /// Seed keys for adaptive spaces; downward closure is added on construction.
  std::vector<ElemKey> seed;

  int block_size() const { return dim == 2 ? (degree + 1) * (degree + 1) : degree + 1; }
};

/// All keys of the space, ordered by key_less. Adaptive spaces return the
/// downward closure of the seed (the root is always included).
std::vector<ElemKey> enumerate_space(const SpaceSpec& spec);

/// Adds every missing ancestor so the set is downward closed; result sorted by key_less.
std::vector<ElemKey> downward_closure(std::span<const ElemKey> keys);

bool is_downward_closed(std::span<const ElemKey> keys);

/// Writes one line per key: "l1 [l2] j1 [j2]".
void write_keys(std::ostream& out, std::span<const ElemKey> keys);
std::vector<ElemKey> read_keys(std::istream& in, int dim);

std::string to_string(const ElemKey& key);

}  // namespace uwdg
