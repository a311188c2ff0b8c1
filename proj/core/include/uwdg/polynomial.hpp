#pragma once

#include <span>
#include <vector>

namespace uwdg {

/// Dense univariate polynomial in monomial form, sum c[m] * t^m.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  static Poly constant(double value) { return Poly({value}); }
  static Poly monomial(int degree);
  /// Classical Legendre polynomial P_n on [-1, 1].
  static Poly legendre(int n);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const double> coeffs() const { return c_; }

  double operator()(double t) const;
  /// Value of the order-th derivative at t.
  double derivative(double t, int order) const;
  Poly derivative(int order) const;

  /// p(a * t + b).
  Poly compose_affine(double a, double b) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(double s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

 private:
  std::vector<double> c_{0.0};
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; exact for polynomials of degree 2n-1. Cached.
const GaussRule& gauss_legendre(int n);

/// Integral over [-1, 1] of p * q, exact.
double integrate_product(const Poly& p, const Poly& q);

}  // namespace uwdg
