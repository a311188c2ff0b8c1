#include "uwdg/operators1d.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "uwdg/polynomial.hpp"

namespace uwdg {

double eval_periodic(const PiecewisePoly& f, double x, Side side, int order) {
  if (x <= 0.0 && side == Side::Minus) return f.eval(1.0, Side::Minus, order);
  if (x >= 1.0 && side == Side::Plus) return f.eval(0.0, Side::Plus, order);
  return f.eval(x, side, order);
}

namespace {

void prune(Eigen::MatrixXd& m) {
  const double cutoff = kPruneRelative * m.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) <= cutoff) m(i, j) = 0.0;
}

// Integral of f^(a) * g^(b) over [lo, hi], both piecewise polynomial on dyadic cells.
double overlap_integral(const PiecewisePoly& f, int a, const PiecewisePoly& g, int b, double lo, double hi) {
  const int level = std::max(f.level, g.level);
  const double h = std::ldexp(1.0, -level);
  const long c0 = std::lround(lo / h);
  const long c1 = std::lround(hi / h);
  const int npts = (f.degree() + g.degree()) / 2 + 1;
  const GaussRule& rule = gauss_legendre(npts);
  double acc = 0.0;
  for (long c = c0; c < c1; ++c) {
    const double x0 = static_cast<double>(c) * h;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = x0 + 0.5 * h * (rule.nodes[q] + 1.0);
      acc += 0.5 * h * rule.weights[q] * f.eval(x, Side::Plus, a) * g.eval(x, Side::Plus, b);
    }
  }
  return acc;
}

// The other factor must be a single polynomial of degree <= k on the wavelet support.
bool structurally_zero(const Basis1D& wavelet_family, int wavelet, const Basis1D& other, int other_fn, int other_order) {
  return wavelet_family.is_wavelet(wavelet) && other.piece_level(other_fn) < wavelet_family.piece_level(wavelet) &&
         other.degree() - other_order <= wavelet_family.degree();
}

}  // namespace

Eigen::MatrixXd volume_matrix(const Basis1D& test, const Basis1D& trial, int test_order, int trial_order) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(test.size(), trial.size());
  for (int v = 0; v < test.size(); ++v) {
    const PiecewisePoly& fv = test.fn(v);
    for (int u = 0; u < trial.size(); ++u) {
      const PiecewisePoly& fu = trial.fn(u);
      const double lo = std::max(fv.lo(), fu.lo());
      const double hi = std::min(fv.hi(), fu.hi());
      if (hi <= lo) continue;
      // Vanishing moments: an undifferentiated wavelet against anything smooth on its support.
      if (trial_order == 0 && structurally_zero(trial, u, test, v, test_order)) continue;
      if (test_order == 0 && structurally_zero(test, v, trial, u, trial_order)) continue;
      m(v, u) = overlap_integral(fu, trial_order, fv, test_order, lo, hi);
    }
  }
  prune(m);
  return m;
}

Eigen::MatrixXd jump_matrix(const Basis1D& test, const Basis1D& trial, int trial_order, Side trial_side, int test_order) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(test.size(), trial.size());
  for (int v = 0; v < test.size(); ++v) {
    const PiecewisePoly& fv = test.fn(v);
    const double h = std::ldexp(1.0, -fv.level);
    // Breakpoints of v, identified modulo 1.
    std::set<long> points;
    const long period = 1L << fv.level;
    for (long c = fv.first; c <= fv.end(); ++c) points.insert(c % period);
    for (long c : points) {
      const double p = static_cast<double>(c) * h;
      const double jump = eval_periodic(fv, p, Side::Plus, test_order) - eval_periodic(fv, p, Side::Minus, test_order);
      if (jump == 0.0) continue;
      for (int u = 0; u < trial.size(); ++u) {
        const double value = eval_periodic(trial.fn(u), p, trial_side, trial_order);
        if (value != 0.0) m(v, u) += value * jump;
      }
    }
  }
  prune(m);
  return m;
}

UnitPattern unit_pattern(const Eigen::MatrixXd& m, int row_per_unit, int col_per_unit) {
  UnitPattern p;
  p.row_units = static_cast<int>(m.rows()) / row_per_unit;
  p.col_units = static_cast<int>(m.cols()) / col_per_unit;
  p.cols.resize(static_cast<size_t>(p.row_units));
  p.nonzero.assign(static_cast<size_t>(p.row_units) * static_cast<size_t>(p.col_units), 0);
  for (int r = 0; r < p.row_units; ++r)
    for (int c = 0; c < p.col_units; ++c) {
      if (m.block(r * row_per_unit, c * col_per_unit, row_per_unit, col_per_unit).cwiseAbs().maxCoeff() == 0.0) continue;
      p.cols[static_cast<size_t>(r)].push_back(c);
      p.nonzero[static_cast<size_t>(r) * static_cast<size_t>(p.col_units) + static_cast<size_t>(c)] = 1;
    }
  return p;
}

UnitPattern merge_patterns(const std::vector<const UnitPattern*>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("merge_patterns: nothing to merge");
  UnitPattern out;
  out.row_units = patterns.front()->row_units;
  out.col_units = patterns.front()->col_units;
  out.nonzero.assign(static_cast<size_t>(out.row_units) * static_cast<size_t>(out.col_units), 0);
  for (const UnitPattern* p : patterns)
    for (size_t i = 0; i < out.nonzero.size(); ++i) out.nonzero[i] |= p->nonzero[i];
  out.cols.resize(static_cast<size_t>(out.row_units));
  for (int r = 0; r < out.row_units; ++r)
    for (int c = 0; c < out.col_units; ++c)
      if (out.has(r, c)) out.cols[static_cast<size_t>(r)].push_back(c);
  return out;
}

}  // namespace uwdg
