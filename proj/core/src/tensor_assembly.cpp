#include "uwdg/tensor_assembly.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "uwdg/operators1d.hpp"

namespace uwdg {

namespace {

UnitPattern identity_pattern(int units) {
  UnitPattern p;
  p.row_units = units;
  p.col_units = units;
  p.cols.resize(static_cast<size_t>(units));
  p.nonzero.assign(static_cast<size_t>(units) * static_cast<size_t>(units), 0);
  for (int u = 0; u < units; ++u) {
    p.cols[static_cast<size_t>(u)].push_back(u);
    p.nonzero[static_cast<size_t>(u) * static_cast<size_t>(units) + static_cast<size_t>(u)] = 1;
  }
  return p;
}

struct ColumnBlock {
  int col;
  std::vector<double> values;
};

}  // namespace

SparseMatrix assemble_tensor(const ActiveSpace& space, int row_per_unit, int col_per_unit,
                             const std::vector<TensorTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("assemble_tensor: no terms");
  const int dim = space.dim();
  const int n1 = space.units_1d();
  const int rb = dim == 2 ? row_per_unit * row_per_unit : row_per_unit;
  const int cb = dim == 2 ? col_per_unit * col_per_unit : col_per_unit;

  std::vector<UnitPattern> xp;
  std::vector<UnitPattern> yp;
  for (const TensorTerm& t : terms) {
    if (t.x->rows() != static_cast<Eigen::Index>(n1) * row_per_unit || t.x->cols() != static_cast<Eigen::Index>(n1) * col_per_unit)
      throw std::invalid_argument("assemble_tensor: x factor has wrong shape");
    xp.push_back(unit_pattern(*t.x, row_per_unit, col_per_unit));
    if (dim == 2) {
      if (t.y == nullptr) {
        if (row_per_unit != col_per_unit) throw std::invalid_argument("assemble_tensor: identity needs square blocks");
        yp.push_back(identity_pattern(n1));
      } else {
        yp.push_back(unit_pattern(*t.y, row_per_unit, col_per_unit));
      }
    }
  }
  std::vector<const UnitPattern*> xs;
  std::vector<const UnitPattern*> ys;
  for (auto& p : xp) xs.push_back(&p);
  for (auto& p : yp) ys.push_back(&p);
  const UnitPattern xu = merge_patterns(xs);
  const UnitPattern yu = dim == 2 ? merge_patterns(ys) : UnitPattern{};

  const Eigen::Index rows = static_cast<Eigen::Index>(space.blocks()) * rb;
  const Eigen::Index cols = static_cast<Eigen::Index>(space.blocks()) * cb;
  SparseMatrix out(rows, cols);
  std::vector<ColumnBlock> found;
  out.reserve(rows * 8 * cb);

  std::vector<double> local(static_cast<size_t>(rb) * static_cast<size_t>(cb));
  for (int b = 0; b < space.blocks(); ++b) {
    const auto [r1, r2] = space.units()[static_cast<size_t>(b)];
    found.clear();
    auto add_block = [&](int c1, int c2, int col_block) {
      std::fill(local.begin(), local.end(), 0.0);
      bool any = false;
      for (size_t t = 0; t < terms.size(); ++t) {
        if (!xp[t].has(r1, c1)) continue;
        if (dim == 2 && !yp[t].has(r2, c2)) continue;
        any = true;
        const Eigen::MatrixXd& X = *terms[t].x;
        const double s = terms[t].scale;
        if (dim == 1) {
          for (int i = 0; i < row_per_unit; ++i)
            for (int j = 0; j < col_per_unit; ++j)
              local[static_cast<size_t>(i * cb + j)] += s * X(r1 * row_per_unit + i, c1 * col_per_unit + j);
          continue;
        }
        for (int i1 = 0; i1 < row_per_unit; ++i1)
          for (int j1 = 0; j1 < col_per_unit; ++j1) {
            const double xv = s * X(r1 * row_per_unit + i1, c1 * col_per_unit + j1);
            if (xv == 0.0) continue;
            for (int i2 = 0; i2 < row_per_unit; ++i2) {
              double* row = &local[static_cast<size_t>((i1 * row_per_unit + i2) * cb + j1 * col_per_unit)];
              if (terms[t].y == nullptr) {
                row[i2] += xv;
              } else {
                const Eigen::MatrixXd& Y = *terms[t].y;
                for (int j2 = 0; j2 < col_per_unit; ++j2) row[j2] += xv * Y(r2 * row_per_unit + i2, c2 * col_per_unit + j2);
              }
            }
          }
      }
      if (any) found.push_back({col_block, local});
    };
    for (int c1 : xu.cols[static_cast<size_t>(r1)]) {
      if (dim == 1) {
        const int col_block = space.find(c1);
        if (col_block >= 0) add_block(c1, 0, col_block);
        continue;
      }
      for (int c2 : yu.cols[static_cast<size_t>(r2)]) {
        const int col_block = space.find(c1, c2);
        if (col_block >= 0) add_block(c1, c2, col_block);
      }
    }
    std::sort(found.begin(), found.end(), [](const ColumnBlock& a, const ColumnBlock& c) { return a.col < c.col; });
    for (int i = 0; i < rb; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(b) * rb + i;
      out.startVec(row);
      for (const ColumnBlock& blk : found)
        for (int j = 0; j < cb; ++j) {
          const double v = blk.values[static_cast<size_t>(i * cb + j)];
          if (v != 0.0) out.insertBack(row, static_cast<Eigen::Index>(blk.col) * cb + j) = v;
        }
    }
  }
  out.finalize();
  return out;
}

}  // namespace uwdg
