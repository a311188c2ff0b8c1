// Command line driver: run, sweep and rates.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "uwdg/driver.hpp"

namespace fs = std::filesystem;
using namespace uwdg;

namespace {

// "section.key=value"
void apply_override(RunConfig& cfg, const std::string& item) {
  const auto eq = item.find('=');
  const auto dot = item.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw std::invalid_argument("--set expects section.key=value, got '" + item + "'");
  cfg.set(item.substr(0, dot), item.substr(dot + 1, eq - dot - 1), item.substr(eq + 1));
}

RunConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  RunConfig cfg = path.empty() ? RunConfig{} : RunConfig::load(path);
  for (const auto& o : overrides) apply_override(cfg, o);
  return cfg;
}

void print_rows(const std::vector<SweepRow>& rows) {
  std::cout << std::setw(10) << "N_or_eps" << std::setw(10) << "DoF" << std::setw(12) << "L1" << std::setw(12) << "L2"
            << std::setw(12) << "Linf" << std::setw(8) << "order" << '\n';
  for (const auto& r : rows) {
    std::cout << std::setw(10) << r.parameter << std::setw(10) << r.dof << std::scientific << std::setprecision(2)
              << std::setw(12) << r.errors.l1 << std::setw(12) << r.errors.l2 << std::setw(12) << r.errors.linf
              << std::defaultfloat << std::setprecision(6);
    if (r.order) std::cout << std::fixed << std::setprecision(2) << std::setw(8) << *r.order << std::defaultfloat;
    else std::cout << std::setw(8) << "-";
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive multiresolution ultra-weak DG solver for KdV and ZK equations"};
  app.require_subcommand(1);

  std::string config, output = "out", errors_path, mode = "mesh";
  std::vector<std::string> overrides;

  auto* run_cmd = app.add_subcommand("run", "Run one configuration");
  run_cmd->add_option("-c,--config", config, "Configuration file")->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--output", output, "Output directory");
  run_cmd->add_option("-s,--set", overrides, "Override section.key=value");

  auto* sweep_cmd = app.add_subcommand("sweep", "Convergence sweep over sweep.levels or sweep.epsilons");
  sweep_cmd->add_option("-c,--config", config, "Configuration file")->check(CLI::ExistingFile);
  sweep_cmd->add_option("-o,--output", output, "Output directory");
  sweep_cmd->add_option("-s,--set", overrides, "Override section.key=value");

  auto* rates_cmd = app.add_subcommand("rates", "Convergence rates of an errors.csv");
  rates_cmd->add_option("-o,--output", output, "Directory holding errors.csv");
  rates_cmd->add_option("-e,--errors", errors_path, "Path to errors.csv (default <output>/errors.csv)");
  rates_cmd->add_option("-m,--mode", mode, "mesh, epsilon or dof")->check(CLI::IsMember({"mesh", "epsilon", "dof"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const RunConfig cfg = load(config, overrides);
      const RunResult r = run(cfg, fs::path(output));
      std::cout << cfg.problem << ": " << r.steps << " steps of " << r.dt << ", final DoF " << r.final_state.space->dof()
                << '\n';
      if (r.errors)
        std::cout << std::scientific << std::setprecision(3) << "L1 " << r.errors->l1 << "  L2 " << r.errors->l2
                  << "  Linf " << r.errors->linf << '\n';
      std::cout << "outputs in " << output << '\n';
    } else if (sweep_cmd->parsed()) {
      const RunConfig cfg = load(config, overrides);
      print_rows(sweep(cfg, fs::path(output)));
      std::cout << "errors.csv in " << output << '\n';
    } else if (rates_cmd->parsed()) {
      const fs::path path = errors_path.empty() ? fs::path(output) / "errors.csv" : fs::path(errors_path);
      std::vector<SweepRow> rows = read_errors_csv(path);
      std::vector<double> l2, params;
      for (const auto& r : rows) {
        l2.push_back(r.errors.l2);
        params.push_back(mode == "dof" ? r.dof : r.parameter);
      }
      const RateMode m = mode == "mesh" ? RateMode::Mesh : (mode == "epsilon" ? RateMode::Epsilon : RateMode::Dof);
      const auto rates = convergence_rates(l2, params, m);
      for (size_t i = 0; i < rows.size(); ++i) rows[i].order = rates[i];
      print_rows(rows);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
