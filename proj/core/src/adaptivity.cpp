#include "uwdg/adaptivity.hpp"

#include <set>
#include <stdexcept>

namespace uwdg {

namespace {

struct KeyLess {
  bool operator()(const ElemKey& a, const ElemKey& b) const { return key_less(a, b); }
};

using KeySet = std::set<ElemKey, KeyLess>;

SpacePtr space_from(const ActiveSpace& like, std::vector<ElemKey> keys, int max_level) {
  return ActiveSpace::hierarchical(like.dim(), like.degree(), max_level, SpaceKind::Adaptive, std::move(keys));
}

}  // namespace

void AdaptConfig::validate() const {
  if (!(refine_threshold > 0.0)) throw std::invalid_argument("adapt: refine threshold must be positive");
  if (!(eta() > 0.0) || !(eta() < refine_threshold))
    throw std::invalid_argument("adapt: coarsen threshold must lie in (0, refine threshold)");
  if (max_level < 1 || max_level > kMaxLevelCap) throw std::invalid_argument("adapt: max level out of range");
}

std::vector<ElemKey> refined_keys(const HierState& state, const AdaptConfig& cfg) {
  const ActiveSpace& sp = *state.space;
  if (sp.layout() != Layout::Hierarchical) throw std::invalid_argument("adapt: hierarchical layouts only");
  std::vector<ElemKey> keys = sp.keys();
  const size_t n = keys.size();
  for (size_t b = 0; b < n; ++b) {
    if (!(state.block_norm(static_cast<int>(b)) > cfg.refine_threshold)) continue;
    for (int d = 0; d < sp.dim(); ++d)
      if (auto ch = children(sp.keys()[b], d, cfg.max_level)) keys.insert(keys.end(), ch->begin(), ch->end());
  }
  return downward_closure(keys);
}

HierState refine(const HierState& state, const AdaptConfig& cfg) {
  std::vector<ElemKey> keys = refined_keys(state, cfg);
  if (keys.size() == state.space->keys().size()) return state;
  return remap(state, space_from(*state.space, std::move(keys), std::max(cfg.max_level, state.space->max_level())));
}

HierState coarsen(const HierState& state, const AdaptConfig& cfg) {
  const ActiveSpace& sp = *state.space;
  if (sp.layout() != Layout::Hierarchical) throw std::invalid_argument("adapt: hierarchical layouts only");
  KeySet active(sp.keys().begin(), sp.keys().end());
  const double eta = cfg.eta();
  bool changed = true;
  while (changed) {
    changed = false;
    // count active children per key
    KeySet has_child;
    for (const ElemKey& k : active)
      for (int d = 0; d < sp.dim(); ++d)
        if (auto p = parent(k, d)) has_child.insert(*p);
    for (auto it = active.begin(); it != active.end();) {
      const ElemKey& k = *it;
      if (k.level_sum() == 0 || has_child.count(k)) {
        ++it;
        continue;
      }
      const int b = sp.find_key(k);
      if (state.block_norm(b) < eta) {
        it = active.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  if (active.size() == sp.keys().size()) return state;
  return remap(state, space_from(sp, std::vector<ElemKey>(active.begin(), active.end()), sp.max_level()));
}

HierState adapt_initial(const Field& u0, int dim, int degree, const AdaptConfig& cfg, const Projector& project) {
  cfg.validate();
  const Projector proj = project ? project : Projector([](const Field& f, SpacePtr s) { return project_L2(f, s); });
  SpacePtr space = ActiveSpace::hierarchical(dim, degree, cfg.max_level, SpaceKind::Adaptive, {ElemKey::root(dim)});
  HierState u = proj(u0, space);
  for (;;) {
    std::vector<ElemKey> keys = refined_keys(u, cfg);
    if (keys.size() == u.space->keys().size()) return coarsen(u, cfg);
    space = space_from(*u.space, std::move(keys), cfg.max_level);
    u = proj(u0, space);
  }
}

}  // namespace uwdg
