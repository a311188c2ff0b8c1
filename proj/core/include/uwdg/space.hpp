#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <vector>

#include "uwdg/basis1d.hpp"
#include "uwdg/hier_mesh.hpp"

namespace uwdg {

/// How coefficients are laid out: by wavelet key (Alpert) or by finest cell (per-cell Legendre).
/// Both describe the same function on a full grid; sparse and adaptive spaces are hierarchical only.
enum class Layout { Hierarchical, Nodal };

/// An active set of 1D-unit tuples together with the 1D bases they index.
/// Blocks are ordered as `units`; inside a block the x index varies slowest.
class ActiveSpace {
 public:
  /// Hierarchical space over a key set (must be downward closed).
  static std::shared_ptr<const ActiveSpace> hierarchical(int dim, int degree, int max_level, SpaceKind kind,
                                                         std::vector<ElemKey> keys);
  static std::shared_ptr<const ActiveSpace> from_spec(const SpaceSpec& spec);
  /// Full grid at level n in the per-cell Legendre layout.
  static std::shared_ptr<const ActiveSpace> nodal(int dim, int degree, int level);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int max_level() const { return max_level_; }
  SpaceKind kind() const { return kind_; }
  Layout layout() const { return layout_; }
  int block_size() const { return dim_ == 2 ? (degree_ + 1) * (degree_ + 1) : degree_ + 1; }
  int blocks() const { return static_cast<int>(units_.size()); }
  int dof() const { return blocks() * block_size(); }

  const std::vector<std::array<int, 2>>& units() const { return units_; }
  /// Wavelet keys of the space (for the nodal layout: the keys of the equivalent full grid).
  const std::vector<ElemKey>& keys() const { return keys_; }
  const Basis1D& basis() const { return *basis_; }
  std::shared_ptr<const Basis1D> basis_ptr() const { return basis_; }
  /// Number of 1D units per dimension.
  int units_1d() const { return basis_->units(); }
  /// Block index of a unit tuple, or -1.
  int find(int u1, int u2 = 0) const {
    return lookup_[static_cast<size_t>(u1) * static_cast<size_t>(dim_ == 2 ? units_1d() : 1) + static_cast<size_t>(u2)];
  }
  int find_key(const ElemKey& key) const;

 private:
  ActiveSpace() = default;
  void build_lookup();

  int dim_ = 1;
  int degree_ = 0;
  int max_level_ = 0;
  SpaceKind kind_ = SpaceKind::Full;
  Layout layout_ = Layout::Hierarchical;
  std::vector<ElemKey> keys_;
  std::vector<std::array<int, 2>> units_;
  std::shared_ptr<const Basis1D> basis_;
  std::vector<int> lookup_;
};

using SpacePtr = std::shared_ptr<const ActiveSpace>;

/// The discrete solution: coefficients over an active space.
struct HierState {
  SpacePtr space;
  Eigen::VectorXd coeffs;

  HierState() = default;
  explicit HierState(SpacePtr s) : space(std::move(s)), coeffs(Eigen::VectorXd::Zero(space->dof())) {}
  HierState(SpacePtr s, Eigen::VectorXd c) : space(std::move(s)), coeffs(std::move(c)) {}

  auto block(int b) { return coeffs.segment(static_cast<Eigen::Index>(b) * space->block_size(), space->block_size()); }
  auto block(int b) const { return coeffs.segment(static_cast<Eigen::Index>(b) * space->block_size(), space->block_size()); }
  /// L2 norm of one block; equals the L2 norm of its part of the function.
  double block_norm(int b) const { return block(b).norm(); }
  /// Squared L2 norm of the function (orthonormal bases).
  double energy() const { return coeffs.squaredNorm(); }
};

/// Re-index coefficients onto another hierarchical space; keys missing from the target are dropped,
/// new keys start at zero.
HierState remap(const HierState& state, SpacePtr target);

}  // namespace uwdg
