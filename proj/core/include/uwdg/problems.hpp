#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uwdg/dispersion.hpp"
#include "uwdg/interp.hpp"

namespace uwdg {

/// Space-time scalar function (y ignored in 1D).
using SpaceTimeField = std::function<double(double x, double y, double t)>;

/// Named numeric or string parameters; values are kept as text.
class ParamMap {
 public:
  ParamMap() = default;
  explicit ParamMap(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  /// Throws std::invalid_argument when the value is not a number.
  double number(const std::string& key, double fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// u_t + f(u)_x + sigma * (dispersive terms) = s on the periodic unit square (or interval).
struct Problem {
  std::string name;
  int dim = 1;
  Dispersion dispersion = Dispersion::KdV;
  double sigma = 1.0;
  /// Flux f; empty when the equation is linear.
  std::optional<ScalarFunction> flux;
  SpaceTimeField initial;
  /// y-derivative of the initial data (2D only; used by the tensor-cell projection).
  SpaceTimeField initial_dy;
  /// Exact solution when known.
  SpaceTimeField exact;
  SpaceTimeField source;
  double t_final = 0.1;
  /// Upper bound on the time step that keeps the temporal error below the spatial one; 0 means none.
  double dt_max = 0.0;
};

/// Names accepted by make_problem.
std::vector<std::string> problem_names();

/// Builds a problem with its default parameters overridden by `params`.
/// Throws std::invalid_argument for unknown names (listing the known ones) or unknown parameters.
Problem make_problem(const std::string& name, const ParamMap& params = {});

/// f(u) = a u^2 / 2 with all derivatives.
ScalarFunction quadratic_flux(double a);

}  // namespace uwdg
