#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "uwdg/config.hpp"
#include "uwdg/state_ops.hpp"

namespace uwdg {

struct RunResult {
  HierState final_state;
  /// Present when the problem has an exact solution.
  std::optional<ErrorNorms> errors;
  double t_final = 0.0;
  double dt = 0.0;
  int steps = 0;
  /// (t, squared L2 norm) after every step, starting at t = 0.
  std::vector<std::pair<double, double>> energy;
  /// (t, DoF) after every step, starting at t = 0.
  std::vector<std::pair<double, int>> dof;
  /// Initial state (after projection and initial adaptation).
  HierState initial_state;
};

/// Time step from the mesh, the accuracy cap and the convection limit, shrunk so that an
/// integer number of steps reaches t_final.
double choose_time_step(double t_final, double h, double courant, double dt_max, double wave_speed, int degree,
                        double fixed_dt = 0.0);

/// Runs one configuration. When `output` is set, writes errors.csv (with an exact solution),
/// energy.csv, dof.csv, samples.dat, active_elements.dat and numbered snapshots into it.
/// Throws std::invalid_argument for bad configurations and std::runtime_error for solver failures
/// or a non-finite solution.
RunResult run(const RunConfig& cfg, const std::optional<std::filesystem::path>& output = std::nullopt);

enum class RateMode { Mesh, Epsilon, Dof };

/// mesh: log2(e_{l-1}/e_l); epsilon: log(e_{l-1}/e_l) / log(p_{l-1}/p_l); dof: log(e_{l-1}/e_l) / log(p_l/p_{l-1}).
/// Entry 0 and entries with non-positive data are empty. Throws std::invalid_argument for fewer
/// than two entries or mismatched lengths.
std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors,
                                                     const std::vector<double>& params, RateMode mode);

struct SweepRow {
  double parameter = 0.0;  ///< level N, or epsilon for adaptive grids
  int dof = 0;
  ErrorNorms errors;
  std::optional<double> order;  ///< L2 rate: mesh rate over levels, epsilon rate over thresholds
};

/// Runs the configuration over sweep.levels (full and sparse grids) or sweep.epsilons (adaptive),
/// writing errors.csv and one sub-directory per run when `output` is set.
/// Throws std::invalid_argument when the problem has no exact solution or the list is empty.
std::vector<SweepRow> sweep(const RunConfig& cfg, const std::optional<std::filesystem::path>& output = std::nullopt);

/// errors.csv reading and writing (header N_or_eps,DoF,L1,L2,Linf,order; a missing order is "-").
void write_errors_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_errors_csv(const std::filesystem::path& path);

}  // namespace uwdg
