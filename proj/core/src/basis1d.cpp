#include "uwdg/basis1d.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "uwdg/hier_mesh.hpp"

namespace uwdg {

int PiecewisePoly::degree() const {
  int d = 0;
  for (const Poly& p : pieces) d = std::max(d, p.degree());
  return d;
}

double PiecewisePoly::eval(double x, Side side, int order) const {
  const double t = std::ldexp(x, level);
  const double c = side == Side::Plus ? std::floor(t) : std::ceil(t) - 1.0;
  if (c < static_cast<double>(first) || c >= static_cast<double>(end())) return 0.0;
  const auto cell = static_cast<long>(c);
  const double xi = 2.0 * (t - c) - 1.0;
  const double jac = std::ldexp(1.0, (level + 1) * order);
  return scale * jac * pieces[static_cast<size_t>(cell - first)].derivative(xi, order);
}

double PiecewisePoly::lo() const { return std::ldexp(static_cast<double>(first), -level); }
double PiecewisePoly::hi() const { return std::ldexp(static_cast<double>(end()), -level); }

namespace {

using TwoPiece = std::array<Poly, 2>;

double inner(const TwoPiece& a, const TwoPiece& b) {
  return 0.25 * (integrate_product(a[0], b[0]) + integrate_product(a[1], b[1]));
}

void axpy(TwoPiece& y, double s, const TwoPiece& x) {
  y[0] -= x[0] * s;
  y[1] -= x[1] * s;
}

std::vector<TwoPiece> build_alpert_mother(int k) {
  // Orthonormal basis of P^k on [0,1], written on the two halves.
  std::vector<TwoPiece> legendre;
  for (int m = 0; m <= k; ++m) {
    const double norm = std::sqrt(2.0 * m + 1.0);
    const Poly p = Poly::legendre(m);
    legendre.push_back({p.compose_affine(0.5, -0.5) * norm, p.compose_affine(0.5, 0.5) * norm});
  }
  std::vector<TwoPiece> mother;
  for (int i = 0; i <= k; ++i) {
    const Poly xi = Poly::monomial(i);
    TwoPiece g{xi.compose_affine(0.25, 0.25), xi.compose_affine(0.25, 0.75) * -1.0};
    for (int pass = 0; pass < 2; ++pass) {
      for (const TwoPiece& q : legendre) axpy(g, inner(g, q), q);
      for (const TwoPiece& q : mother) axpy(g, inner(g, q), q);
    }
    const double norm = std::sqrt(inner(g, g));
    g[0] *= 1.0 / norm;
    g[1] *= 1.0 / norm;
    mother.push_back(std::move(g));
  }
  return mother;
}

std::vector<Poly> build_hermite_reference(int degree) {
  if (degree < 1 || degree % 2 == 0) throw std::invalid_argument("hermite_reference: degree must be odd and >= 1");
  const int p = (degree - 1) / 2;
  const int n = degree + 1;
  Eigen::MatrixXd a(n, n);
  for (int e = 0; e < 2; ++e)
    for (int d = 0; d <= p; ++d) {
      const int row = e * (p + 1) + d;
      const double xi = e == 0 ? -1.0 : 1.0;
      for (int m = 0; m < n; ++m) a(row, m) = Poly::monomial(m).derivative(xi, d);
    }
  const Eigen::MatrixXd inv = a.fullPivLu().inverse();
  std::vector<Poly> out;
  for (int col = 0; col < n; ++col) {
    std::vector<double> c(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) c[static_cast<size_t>(m)] = inv(m, col);
    out.emplace_back(std::move(c));
  }
  return out;
}

template <class T, class Build>
const T& cached(std::map<int, T>& cache, std::mutex& mutex, int key, Build build) {
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build(key)).first;
  return it->second;
}

void check_level(int level) {
  if (level < 0 || level > kMaxLevelCap) throw std::invalid_argument("Basis1D: level out of range");
}

}  // namespace

const std::vector<std::array<Poly, 2>>& alpert_mother(int degree) {
  static std::mutex mutex;
  static std::map<int, std::vector<TwoPiece>> cache;
  if (degree < 0 || degree > 6) throw std::invalid_argument("alpert_mother: degree out of range");
  return cached(cache, mutex, degree, build_alpert_mother);
}

const std::vector<Poly>& hermite_reference(int degree) {
  static std::mutex mutex;
  static std::map<int, std::vector<Poly>> cache;
  return cached(cache, mutex, degree, build_hermite_reference);
}

std::shared_ptr<const Basis1D> Basis1D::alpert(int degree, int max_level) {
  check_level(max_level);
  auto b = std::shared_ptr<Basis1D>(new Basis1D());
  b->family_ = Family::Alpert;
  b->degree_ = degree;
  b->max_level_ = max_level;
  b->per_unit_ = degree + 1;
  const auto& mother = alpert_mother(degree);
  for (int l = 0; l <= max_level; ++l)
    for (int j = 0; j < translations_at(l); ++j) {
      b->units_.push_back({l, j});
      for (int i = 0; i <= degree; ++i) {
        PiecewisePoly f;
        if (l == 0) {
          f.level = 0;
          f.first = 0;
          f.pieces = {Poly::legendre(i) * std::sqrt(2.0 * i + 1.0)};
        } else {
          f.level = l;
          f.first = 2L * j;
          f.scale = std::pow(2.0, 0.5 * (l - 1));
          f.pieces = {mother[static_cast<size_t>(i)][0], mother[static_cast<size_t>(i)][1]};
        }
        b->fns_.push_back(std::move(f));
      }
    }
  return b;
}

std::shared_ptr<const Basis1D> Basis1D::legendre(int degree, int level) {
  check_level(level);
  auto b = std::shared_ptr<Basis1D>(new Basis1D());
  b->family_ = Family::Legendre;
  b->degree_ = degree;
  b->max_level_ = level;
  b->per_unit_ = degree + 1;
  const double scale = std::pow(2.0, 0.5 * level);
  for (int c = 0; c < (1 << level); ++c) {
    b->units_.push_back({level, c});
    for (int m = 0; m <= degree; ++m) {
      PiecewisePoly f;
      f.level = level;
      f.first = c;
      f.scale = scale;
      f.pieces = {Poly::legendre(m) * std::sqrt(2.0 * m + 1.0)};
      b->fns_.push_back(std::move(f));
    }
  }
  return b;
}

namespace {

PiecewisePoly hermite_piece(int degree, int level, long cell, int end, int order) {
  const int p = (degree - 1) / 2;
  PiecewisePoly f;
  f.level = level;
  f.first = cell;
  // xi-derivatives of the reference are physical derivatives times (h/2)^order.
  f.scale = std::ldexp(1.0, -(level + 1) * order);
  f.pieces = {hermite_reference(degree)[static_cast<size_t>(end * (p + 1) + order)]};
  return f;
}

}  // namespace

std::shared_ptr<const Basis1D> Basis1D::interp(int degree, int max_level) {
  check_level(max_level);
  if (degree < 1 || degree % 2 == 0) throw std::invalid_argument("Basis1D::interp: degree must be odd");
  auto b = std::shared_ptr<Basis1D>(new Basis1D());
  b->family_ = Family::Interp;
  b->degree_ = degree;
  b->max_level_ = max_level;
  b->per_unit_ = degree + 1;
  const int p = (degree - 1) / 2;
  for (int l = 0; l <= max_level; ++l)
    for (int j = 0; j < translations_at(l); ++j) {
      b->units_.push_back({l, j});
      if (l == 0) {
        for (int d = 0; d <= p; ++d) {
          b->fns_.push_back(hermite_piece(degree, 0, 0, 0, d));
          b->functionals_.push_back({0.0, Side::Plus, d});
        }
        for (int d = 0; d <= p; ++d) {
          b->fns_.push_back(hermite_piece(degree, 0, 0, 1, d));
          b->functionals_.push_back({1.0, Side::Minus, d});
        }
      } else {
        const double mid = std::ldexp(2.0 * j + 1.0, -l);
        for (int d = 0; d <= p; ++d) {
          b->fns_.push_back(hermite_piece(degree, l, 2L * j, 1, d));
          b->functionals_.push_back({mid, Side::Minus, d});
        }
        for (int d = 0; d <= p; ++d) {
          b->fns_.push_back(hermite_piece(degree, l, 2L * j + 1, 0, d));
          b->functionals_.push_back({mid, Side::Plus, d});
        }
      }
    }
  return b;
}

std::shared_ptr<const Basis1D> Basis1D::hermite(int degree, int level) {
  check_level(level);
  if (degree < 1 || degree % 2 == 0) throw std::invalid_argument("Basis1D::hermite: degree must be odd");
  auto b = std::shared_ptr<Basis1D>(new Basis1D());
  b->family_ = Family::Hermite;
  b->degree_ = degree;
  b->max_level_ = level;
  b->per_unit_ = degree + 1;
  const int p = (degree - 1) / 2;
  for (int c = 0; c < (1 << level); ++c) {
    b->units_.push_back({level, c});
    for (int d = 0; d <= p; ++d) {
      b->fns_.push_back(hermite_piece(degree, level, c, 0, d));
      b->functionals_.push_back({std::ldexp(static_cast<double>(c), -level), Side::Plus, d});
    }
    for (int d = 0; d <= p; ++d) {
      b->fns_.push_back(hermite_piece(degree, level, c, 1, d));
      b->functionals_.push_back({std::ldexp(static_cast<double>(c + 1), -level), Side::Minus, d});
    }
  }
  return b;
}

bool Basis1D::is_wavelet(int i) const {
  return family_ == Family::Alpert && units_[static_cast<size_t>(i / per_unit_)].level >= 1;
}

int Basis1D::unit_of(int level, int index) const {
  if (hierarchical()) {
    if (level < 0 || level > max_level_ || index < 0 || index >= translations_at(level)) return -1;
    return key_position(level, index);
  }
  if (level != max_level_ || index < 0 || index >= (1 << level)) return -1;
  return index;
}

}  // namespace uwdg
