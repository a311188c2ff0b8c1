#include "uwdg/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace uwdg {

std::shared_ptr<const ActiveSpace> ActiveSpace::hierarchical(int dim, int degree, int max_level, SpaceKind kind,
                                                             std::vector<ElemKey> keys) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("ActiveSpace: dim must be 1 or 2");
  if (degree < 0 || degree > 4) throw std::invalid_argument("ActiveSpace: degree out of range");
  for (const ElemKey& k : keys)
    if (k.dim != dim || !k.valid(max_level)) throw std::invalid_argument("ActiveSpace: invalid key " + to_string(k));
  std::sort(keys.begin(), keys.end(), key_less);
  if (!is_downward_closed(keys)) throw std::invalid_argument("ActiveSpace: key set is not downward closed");
  auto s = std::shared_ptr<ActiveSpace>(new ActiveSpace());
  s->dim_ = dim;
  s->degree_ = degree;
  s->max_level_ = max_level;
  s->kind_ = kind;
  s->layout_ = Layout::Hierarchical;
  s->basis_ = Basis1D::alpert(degree, max_level);
  s->keys_ = std::move(keys);
  for (const ElemKey& k : s->keys_)
    s->units_.push_back({key_position(k.level[0], k.index[0]), dim == 2 ? key_position(k.level[1], k.index[1]) : 0});
  s->build_lookup();
  return s;
}

std::shared_ptr<const ActiveSpace> ActiveSpace::from_spec(const SpaceSpec& spec) {
  return hierarchical(spec.dim, spec.degree, spec.max_level, spec.kind, enumerate_space(spec));
}

std::shared_ptr<const ActiveSpace> ActiveSpace::nodal(int dim, int degree, int level) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("ActiveSpace: dim must be 1 or 2");
  auto s = std::shared_ptr<ActiveSpace>(new ActiveSpace());
  s->dim_ = dim;
  s->degree_ = degree;
  s->max_level_ = level;
  s->kind_ = SpaceKind::Full;
  s->layout_ = Layout::Nodal;
  s->basis_ = Basis1D::legendre(degree, level);
  s->keys_ = enumerate_space(SpaceSpec{SpaceKind::Full, dim, degree, level, {}});
  const int n = 1 << level;
  if (dim == 1) {
    for (int c = 0; c < n; ++c) s->units_.push_back({c, 0});
  } else {
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = 0; c2 < n; ++c2) s->units_.push_back({c1, c2});
  }
  s->build_lookup();
  return s;
}

void ActiveSpace::build_lookup() {
  const size_t n = static_cast<size_t>(units_1d());
  lookup_.assign(dim_ == 2 ? n * n : n, -1);
  for (size_t b = 0; b < units_.size(); ++b) {
    const size_t at = dim_ == 2 ? static_cast<size_t>(units_[b][0]) * n + static_cast<size_t>(units_[b][1])
                                : static_cast<size_t>(units_[b][0]);
    lookup_[at] = static_cast<int>(b);
  }
}

int ActiveSpace::find_key(const ElemKey& key) const {
  if (layout_ != Layout::Hierarchical) throw std::logic_error("find_key: nodal layout has no keys");
  if (!key.valid(max_level_)) return -1;
  return find(key_position(key.level[0], key.index[0]), dim_ == 2 ? key_position(key.level[1], key.index[1]) : 0);
}

HierState remap(const HierState& state, SpacePtr target) {
  const ActiveSpace& from = *state.space;
  if (from.layout() != Layout::Hierarchical || target->layout() != Layout::Hierarchical)
    throw std::invalid_argument("remap: hierarchical layouts only");
  if (from.dim() != target->dim() || from.degree() != target->degree())
    throw std::invalid_argument("remap: incompatible spaces");
  HierState out(target);
  for (int b = 0; b < target->blocks(); ++b) {
    const int src = from.find_key(target->keys()[static_cast<size_t>(b)]);
    if (src >= 0) out.block(b) = state.block(src);
  }
  return out;
}

}  // namespace uwdg
