#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "uwdg/convection.hpp"
#include "uwdg/dispersion.hpp"
#include "uwdg/imex.hpp"
#include "uwdg/problems.hpp"

using namespace uwdg;

namespace {

const double kPi = std::numbers::pi;

SpacePtr space_for(benchmark::State& st, int dim) {
  const SpaceKind kind = st.range(1) == 0 ? SpaceKind::Full : SpaceKind::Sparse;
  return ActiveSpace::from_spec({kind, dim, 2, static_cast<int>(st.range(0)), {}});
}

HierState wave(SpacePtr s) {
  return project_L2([](double x, double y) { return std::sin(2 * kPi * (x + y)); }, s);
}

}  // namespace

static void BM_AssembleZK(benchmark::State& st) {
  auto s = space_for(st, 2);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_dispersion(*s, Dispersion::ZK, FluxVariant::Main));
  st.counters["dof"] = s->dof();
}
BENCHMARK(BM_AssembleZK)->ArgsProduct({{3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_AssembleKdV(benchmark::State& st) {
  auto s = space_for(st, 1);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_dispersion(*s, Dispersion::KdV, FluxVariant::Main));
  st.counters["dof"] = s->dof();
}
BENCHMARK(BM_AssembleKdV)->ArgsProduct({{6, 8, 10}, {0}})->Unit(benchmark::kMillisecond);

static void BM_Convection(benchmark::State& st) {
  auto s = space_for(st, 2);
  const Convection conv(s, 3, quadratic_flux(1.0));
  const HierState u = wave(s);
  const double alpha = conv.wave_speed(u);
  for (auto _ : st) benchmark::DoNotOptimize(conv.apply(u, alpha));
  st.counters["dof"] = s->dof();
}
BENCHMARK(BM_Convection)->ArgsProduct({{4, 5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_ShiftedSolve(benchmark::State& st) {
  auto s = ActiveSpace::from_spec({SpaceKind::Sparse, 2, 2, static_cast<int>(st.range(0)), {}});
  const LinearOperator op{s, assemble_dispersion(*s, Dispersion::ZK, FluxVariant::Main)};
  const auto method = static_cast<SolverMethod>(st.range(1));
  const ShiftedSolver solver(op, 1e-5, method);
  const Eigen::VectorXd b = wave(s).coeffs;
  for (auto _ : st) benchmark::DoNotOptimize(solver.solve(b));
  st.counters["dof"] = s->dof();
}
BENCHMARK(BM_ShiftedSolve)
    ->ArgsProduct({{4, 5}, {static_cast<int>(SolverMethod::Direct), static_cast<int>(SolverMethod::Krylov),
                            static_cast<int>(SolverMethod::Auto)}})
    ->Unit(benchmark::kMillisecond);

static void BM_ImexStepFourier(benchmark::State& st) {
  auto s = ActiveSpace::nodal(2, 2, static_cast<int>(st.range(0)));
  ImexStepper stepper({s, assemble_dispersion(*s, Dispersion::ZKSimplified, FluxVariant::Main)}, ImexTableau::ssp3_433(),
                      SolverMethod::Fourier);
  HierState u(s);
  u.coeffs.setRandom();
  for (auto _ : st) benchmark::DoNotOptimize(stepper.step(u.coeffs, 0.0, 2.5e-5, {}));
  st.counters["dof"] = s->dof();
}
BENCHMARK(BM_ImexStepFourier)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ToNodal(benchmark::State& st) {
  auto s = space_for(st, 2);
  const HierState u = wave(s);
  for (auto _ : st) benchmark::DoNotOptimize(to_nodal(u, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_ToNodal)->ArgsProduct({{5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
