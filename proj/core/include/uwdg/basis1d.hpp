#pragma once

#include <array>
#include <memory>
#include <vector>

#include "uwdg/polynomial.hpp"

namespace uwdg {

/// Selects a one-sided limit at a point: x^- (from the left) or x^+ (from the right).
enum class Side { Minus, Plus };

inline Side opposite(Side s) { return s == Side::Minus ? Side::Plus : Side::Minus; }

/// A function that is polynomial on each of a run of consecutive dyadic cells
/// of one level and zero elsewhere. Pieces use the local coordinate xi in [-1, 1].
struct PiecewisePoly {
  int level = 0;
  long first = 0;
  double scale = 1.0;
  std::vector<Poly> pieces;

  long end() const { return first + static_cast<long>(pieces.size()); }
  int degree() const;
  /// order-th derivative at x, one-sided by `side`; zero outside the closed support.
  double eval(double x, Side side, int order = 0) const;
  /// Physical support [lo, hi].
  double lo() const;
  double hi() const;
};

enum class Family {
  Alpert,    ///< hierarchical orthonormal multiwavelets of degree k
  Legendre,  ///< orthonormal Legendre polynomials on each cell of one level
  Interp,    ///< hierarchical Hermite interpolatory multiwavelets of degree M
  Hermite,   ///< Hermite interpolation basis on each cell of one level
};

/// An interpolation functional: order-th derivative at x from `side`.
struct PointFunctional {
  double x;
  Side side;
  int order;
};

/// Dyadic 1D unit: a wavelet key (hierarchical families) or a cell (nodal families).
struct Unit1D {
  int level;
  int index;
};

/// One of the four 1D function families on [0, 1]. Hierarchical families are
/// indexed by key position (see key_position) times functions per unit;
/// nodal families by cell index times functions per unit.
class Basis1D {
 public:
  static std::shared_ptr<const Basis1D> alpert(int degree, int max_level);
  static std::shared_ptr<const Basis1D> legendre(int degree, int level);
  static std::shared_ptr<const Basis1D> interp(int degree, int max_level);
  static std::shared_ptr<const Basis1D> hermite(int degree, int level);

  Family family() const { return family_; }
  bool hierarchical() const { return family_ == Family::Alpert || family_ == Family::Interp; }
  bool orthonormal() const { return family_ == Family::Alpert || family_ == Family::Legendre; }
  int degree() const { return degree_; }
  int max_level() const { return max_level_; }
  int per_unit() const { return per_unit_; }
  int units() const { return static_cast<int>(units_.size()); }
  int size() const { return static_cast<int>(fns_.size()); }

  const PiecewisePoly& fn(int i) const { return fns_[static_cast<size_t>(i)]; }
  const Unit1D& unit(int u) const { return units_[static_cast<size_t>(u)]; }
  /// Finest cell level on which fn(i) is a single polynomial.
  int piece_level(int i) const { return fns_[static_cast<size_t>(i)].level; }
  /// For Alpert functions: true when the function has vanishing moments (level >= 1).
  bool is_wavelet(int i) const;
  /// Interpolation functional dual to fn(i) (Interp and Hermite families only).
  const PointFunctional& functional(int i) const { return functionals_[static_cast<size_t>(i)]; }

  /// Unit index holding (level, index) or -1.
  int unit_of(int level, int index) const;

 private:
  Basis1D() = default;

  Family family_ = Family::Alpert;
  int degree_ = 0;
  int max_level_ = 0;
  int per_unit_ = 0;
  std::vector<Unit1D> units_;
  std::vector<PiecewisePoly> fns_;
  std::vector<PointFunctional> functionals_;
};

/// The k+1 Alpert mother wavelets on [0, 1]: each is a pair (left half, right half)
/// of polynomials in the local coordinate of that half.
const std::vector<std::array<Poly, 2>>& alpert_mother(int degree);

/// Reference Hermite basis on [-1, 1] of odd degree M = 2p + 1: entry [e * (p+1) + d]
/// has unit d-th xi-derivative at xi = -1 (e = 0) or xi = +1 (e = 1), zero for all other data.
const std::vector<Poly>& hermite_reference(int degree);

}  // namespace uwdg
