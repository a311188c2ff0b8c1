#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uwdg/dispersion.hpp"
#include "uwdg/linear_solver.hpp"
#include "uwdg/local_projection.hpp"
#include "uwdg/problems.hpp"

namespace uwdg {

enum class GridKind { Full, Sparse, Adaptive };

/// Everything a run needs. Text form: "key = value" lines grouped in [problem], [discretization],
/// [time], [output] and [sweep] sections; '#' starts a comment. Keys in [problem] other than
/// `name` are problem parameters.
struct RunConfig {
  std::string problem = "kdv_manufactured";
  ParamMap problem_params;

  int degree = 2;
  GridKind grid = GridKind::Full;
  int level = 5;
  double epsilon = 1e-4;
  /// Coarsening threshold; 0 means epsilon / 10.
  double eta = 0.0;
  FluxVariant flux = FluxVariant::Main;
  /// Hermite interpolation degree for the flux; 0 picks the smallest odd value >= degree + 1.
  int interp_degree = 0;
  InitialProjection projection = InitialProjection::L2;

  /// Negative values take the problem default.
  double t_final = -1.0;
  double courant = 0.1;
  /// Fixed time step; 0 derives it from the mesh.
  double dt = 0.0;
  /// Negative values take the problem default, 0 disables the cap.
  double dt_max = -1.0;
  std::optional<SolverMethod> solver;

  int snapshots = 10;
  /// Points per direction in sample dumps; 0 picks one from the finest level.
  int samples = 0;

  std::vector<int> sweep_levels;
  std::vector<double> sweep_epsilons;

  /// Throws std::invalid_argument listing every unknown key or malformed value.
  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::filesystem::path& path);
  /// Applies one "section.key=value" override.
  void set(const std::string& section, const std::string& key, const std::string& value);
  /// Throws std::invalid_argument describing every inconsistent field.
  void validate() const;

  int effective_interp_degree() const;
};

std::string to_string(GridKind g);

}  // namespace uwdg
