#pragma once

#include <functional>

#include "uwdg/state_ops.hpp"

namespace uwdg {

struct AdaptConfig {
  double refine_threshold = 1e-4;
  /// Coarsening threshold; non-positive means refine_threshold / 10.
  double coarsen_threshold = 0.0;
  int max_level = 8;

  double eta() const { return coarsen_threshold > 0.0 ? coarsen_threshold : refine_threshold / 10.0; }
  /// Throws std::invalid_argument on non-positive thresholds, eta >= epsilon or a level outside [1, cap].
  void validate() const;
};

/// Key set after activating the children (every dimension, levels capped) of each key whose block
/// norm exceeds the refine threshold; downward closed.
std::vector<ElemKey> refined_keys(const HierState& state, const AdaptConfig& cfg);

/// Refinement with new blocks set to zero. Returns the input space object when nothing changes.
HierState refine(const HierState& state, const AdaptConfig& cfg);

/// Removes leaf keys with block norm below eta until nothing changes; the root stays.
HierState coarsen(const HierState& state, const AdaptConfig& cfg);

using Projector = std::function<HierState(const Field&, SpacePtr)>;

/// Project-refine iteration from the root space until the key set stops changing, then one coarsening.
HierState adapt_initial(const Field& u0, int dim, int degree, const AdaptConfig& cfg, const Projector& project = {});

}  // namespace uwdg
