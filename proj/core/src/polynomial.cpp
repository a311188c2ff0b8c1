#include "uwdg/polynomial.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace uwdg {

Poly Poly::monomial(int degree) {
  std::vector<double> c(static_cast<size_t>(degree) + 1, 0.0);
  c.back() = 1.0;
  return Poly(std::move(c));
}

Poly Poly::legendre(int n) {
  if (n < 0) throw std::invalid_argument("legendre: negative degree");
  Poly p0({1.0});
  if (n == 0) return p0;
  Poly p1({0.0, 1.0});
  const Poly t({0.0, 1.0});
  for (int m = 1; m < n; ++m) {
    // (m+1) P_{m+1} = (2m+1) t P_m - m P_{m-1}
    Poly next = (t * p1) * ((2.0 * m + 1.0) / (m + 1.0)) - p0 * (m / (m + 1.0));
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  return p1;
}

double Poly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Poly::derivative(double t, int order) const {
  const int n = degree();
  if (order > n) return 0.0;
  double acc = 0.0;
  for (int m = n; m >= order; --m) {
    double f = 1.0;
    for (int r = 0; r < order; ++r) f *= (m - r);
    acc = acc * t + f * c_[static_cast<size_t>(m)];
  }
  return acc;
}

Poly Poly::derivative(int order) const {
  const int n = degree();
  if (order > n) return Poly::constant(0.0);
  std::vector<double> d(static_cast<size_t>(n - order) + 1);
  for (int m = order; m <= n; ++m) {
    double f = 1.0;
    for (int r = 0; r < order; ++r) f *= (m - r);
    d[static_cast<size_t>(m - order)] = f * c_[static_cast<size_t>(m)];
  }
  return Poly(std::move(d));
}

Poly Poly::compose_affine(double a, double b) const {
  // Horner in the polynomial ring.
  Poly result = Poly::constant(0.0);
  const Poly lin({b, a});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    result = result * lin;
    result.c_[0] += *it;
  }
  return result;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
  for (size_t m = 0; m < other.c_.size(); ++m) c_[m] += other.c_[m];
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
  for (size_t m = 0; m < other.c_.size(); ++m) c_[m] -= other.c_[m];
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

namespace {

GaussRule build_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 1; m < n; ++m) {
        const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
  return it->second;
}

double integrate_product(const Poly& p, const Poly& q) {
  const int deg = p.degree() + q.degree();
  const GaussRule& g = gauss_legendre(deg / 2 + 1);
  double acc = 0.0;
  for (size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * p(g.nodes[i]) * q(g.nodes[i]);
  return acc;
}

}  // namespace uwdg
