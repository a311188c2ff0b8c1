#include "uwdg/hier_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace uwdg {

bool ElemKey::valid(int max_level) const {
  if (dim != 1 && dim != 2) return false;
  for (int m = 0; m < dim; ++m) {
    if (level[m] < 0 || level[m] > max_level) return false;
    if (index[m] < 0 || index[m] >= translations_at(level[m])) return false;
  }
  return true;
}

bool key_less(const ElemKey& a, const ElemKey& b) {
  return std::make_tuple(a.level_sum(), a.level, a.index) < std::make_tuple(b.level_sum(), b.level, b.index);
}

std::pair<int, int> key_from_position(int position) {
  if (position <= 0) return {0, 0};
  int level = 1;
  while ((1 << level) <= position) ++level;
  return {level, position - (1 << (level - 1))};
}

Interval cell_interval(int n, long j) {
  if (n < 0 || n > 62) throw std::domain_error("cell_interval: level out of range");
  const long count = 1L << n;
  if (j < 0 || j >= count) throw std::domain_error("cell_interval: index out of range");
  const double h = std::ldexp(1.0, -n);
  return {h * static_cast<double>(j), h * static_cast<double>(j + 1)};
}

Interval key_support(int level, int index) {
  if (level == 0) return {0.0, 1.0};
  return cell_interval(level - 1, index);
}

std::optional<std::vector<ElemKey>> children(const ElemKey& key, int dim, int max_level) {
  if (dim < 0 || dim >= key.dim) throw std::invalid_argument("children: bad dimension");
  const int l = key.level[dim];
  if (l + 1 > max_level) return std::nullopt;
  std::vector<ElemKey> out;
  ElemKey child = key;
  child.level[dim] = l + 1;
  if (l == 0) {
    child.index[dim] = 0;
    out.push_back(child);
  } else {
    child.index[dim] = 2 * key.index[dim];
    out.push_back(child);
    child.index[dim] = 2 * key.index[dim] + 1;
    out.push_back(child);
  }
  return out;
}

std::optional<ElemKey> parent(const ElemKey& key, int dim) {
  if (dim < 0 || dim >= key.dim) throw std::invalid_argument("parent: bad dimension");
  if (key.level[dim] == 0) return std::nullopt;
  ElemKey p = key;
  p.level[dim] -= 1;
  p.index[dim] = p.level[dim] == 0 ? 0 : key.index[dim] / 2;
  return p;
}

namespace {

struct KeyOrder {
  bool operator()(const ElemKey& a, const ElemKey& b) const { return key_less(a, b); }
};

}  // namespace

std::vector<ElemKey> downward_closure(std::span<const ElemKey> keys) {
  std::set<ElemKey, KeyOrder> all;
  std::vector<ElemKey> stack(keys.begin(), keys.end());
  while (!stack.empty()) {
    ElemKey key = stack.back();
    stack.pop_back();
    if (!all.insert(key).second) continue;
    for (int m = 0; m < key.dim; ++m)
      if (auto p = parent(key, m)) stack.push_back(*p);
  }
  return {all.begin(), all.end()};
}

bool is_downward_closed(std::span<const ElemKey> keys) {
  std::set<ElemKey, KeyOrder> all(keys.begin(), keys.end());
  for (const ElemKey& key : keys)
    for (int m = 0; m < key.dim; ++m)
      if (auto p = parent(key, m); p && !all.contains(*p)) return false;
  return true;
}

std::vector<ElemKey> enumerate_space(const SpaceSpec& spec) {
  if (spec.dim != 1 && spec.dim != 2) throw std::invalid_argument("enumerate_space: dim must be 1 or 2");
  if (spec.max_level < 0 || spec.max_level > kMaxLevelCap)
    throw std::invalid_argument("enumerate_space: max level out of range");
  std::vector<ElemKey> keys;
  const int n = spec.max_level;
  if (spec.kind == SpaceKind::Adaptive) {
    std::vector<ElemKey> seed = spec.seed;
    seed.push_back(ElemKey::root(spec.dim));
    for (const ElemKey& k : seed)
      if (k.dim != spec.dim || !k.valid(n)) throw std::invalid_argument("enumerate_space: invalid seed key " + to_string(k));
    return downward_closure(seed);
  }
  if (spec.dim == 1) {
    for (int l = 0; l <= n; ++l)
      for (int j = 0; j < translations_at(l); ++j) keys.push_back(ElemKey::make1(l, j));
  } else {
    for (int l1 = 0; l1 <= n; ++l1)
      for (int l2 = 0; l2 <= n; ++l2) {
        if (spec.kind == SpaceKind::Sparse && l1 + l2 > n) continue;
        for (int j1 = 0; j1 < translations_at(l1); ++j1)
          for (int j2 = 0; j2 < translations_at(l2); ++j2) keys.push_back(ElemKey::make2(l1, l2, j1, j2));
      }
  }
  std::sort(keys.begin(), keys.end(), key_less);
  return keys;
}

void write_keys(std::ostream& out, std::span<const ElemKey> keys) {
  for (const ElemKey& k : keys) {
    if (k.dim == 1)
      out << k.level[0] << ' ' << k.index[0] << '\n';
    else
      out << k.level[0] << ' ' << k.level[1] << ' ' << k.index[0] << ' ' << k.index[1] << '\n';
  }
}

std::vector<ElemKey> read_keys(std::istream& in, int dim) {
  std::vector<ElemKey> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ElemKey k;
    k.dim = dim;
    if (dim == 1) {
      if (!(ls >> k.level[0] >> k.index[0])) throw std::runtime_error("read_keys: malformed line: " + line);
    } else if (!(ls >> k.level[0] >> k.level[1] >> k.index[0] >> k.index[1])) {
      throw std::runtime_error("read_keys: malformed line: " + line);
    }
    keys.push_back(k);
  }
  return keys;
}

std::string to_string(const ElemKey& key) {
  std::ostringstream s;
  if (key.dim == 1)
    s << "(l=" << key.level[0] << ", j=" << key.index[0] << ")";
  else
    s << "(l=(" << key.level[0] << "," << key.level[1] << "), j=(" << key.index[0] << "," << key.index[1] << "))";
  return s.str();
}

}  // namespace uwdg
