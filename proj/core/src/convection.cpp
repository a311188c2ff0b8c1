#include "uwdg/convection.hpp"

#include <cmath>

#include "uwdg/matrix_cache.hpp"

namespace uwdg {

Convection::Convection(SpacePtr space, int interp_degree, ScalarFunction flux)
    : interp_(space, interp_degree), flux_(std::move(flux)) {
  const ActiveSpace& sp = interp_.space();
  const Basis1D& dg = sp.basis();
  const Basis1D& ib = interp_.interp_basis();
  const int k1 = sp.degree() + 1;
  const Eigen::MatrixXd& gx = cached_matrix("CG:" + family_tag(dg) + ":" + family_tag(ib), [&] {
    Eigen::MatrixXd m = volume_cached(dg, ib, 1, 0);
    m += 0.5 * jump_cached(dg, ib, 0, Side::Minus, 0);
    m += 0.5 * jump_cached(dg, ib, 0, Side::Plus, 0);
    return m;
  });
  const Eigen::MatrixXd& dx = cached_matrix("CD:" + family_tag(dg), [&] {
    return Eigen::MatrixXd(jump_cached(dg, dg, 0, Side::Plus, 0) - jump_cached(dg, dg, 0, Side::Minus, 0));
  });
  const bool two = sp.dim() == 2;
  const Eigen::MatrixXd* gy = two ? &volume_cached(dg, ib, 0, 0) : nullptr;
  volume_flux_ = assemble_tensor(sp, k1, interp_degree + 1, {TensorTerm{&gx, gy, 1.0}});
  dissipation_ = assemble_tensor(sp, k1, k1, {TensorTerm{&dx, nullptr, 1.0}});
}

double Convection::wave_speed(const HierState& u) const {
  double a = 0.0;
  for (double v : interp_.point_values(u)) a = std::max(a, std::abs(flux_.derivative(v, 1)));
  return a;
}

Eigen::VectorXd Convection::apply(const HierState& u, double alpha) const {
  Eigen::VectorXd out = volume_flux_ * interp_.surpluses(u, flux_);
  if (alpha != 0.0) out.noalias() -= alpha * (dissipation_ * u.coeffs);
  return out;
}

Eigen::VectorXd source_increment(const Field& source, SpacePtr space) { return project_L2(source, std::move(space)).coeffs; }

}  // namespace uwdg
