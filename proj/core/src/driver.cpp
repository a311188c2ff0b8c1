#include "uwdg/driver.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <list>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "uwdg/adaptivity.hpp"
#include "uwdg/convection.hpp"
#include "uwdg/imex.hpp"

namespace uwdg {

namespace {

namespace fs = std::filesystem;

// operators and solvers tied to one space
struct Discretization {
  SpacePtr space;
  std::unique_ptr<Convection> conv;
  std::unique_ptr<ImexStepper> stepper;
};

class TimeStepper {
 public:
  TimeStepper(const Problem& pb, const RunConfig& cfg) : pb_(pb), cfg_(cfg) {}

  // the cached space with the same keys, or the given one
  SpacePtr canonical(const SpacePtr& space) {
    for (const auto& d : cache_)
      if (d->space == space || (d->space->layout() == space->layout() && d->space->keys() == space->keys()))
        return d->space;
    return space;
  }

  HierState adopt(const HierState& u) {
    SpacePtr s = canonical(u.space);
    return s == u.space ? u : HierState(s, u.coeffs);
  }

  Discretization& get(const SpacePtr& space) {
    for (auto it = cache_.begin(); it != cache_.end(); ++it)
      if ((*it)->space == space) {
        cache_.splice(cache_.begin(), cache_, it);
        return *cache_.front();
      }
    auto d = std::make_unique<Discretization>();
    d->space = space;
    if (pb_.flux) d->conv = std::make_unique<Convection>(space, cfg_.effective_interp_degree(), *pb_.flux);
    LinearOperator op{space, assemble_dispersion(*space, pb_.dispersion, cfg_.flux, pb_.sigma)};
    const SolverMethod method = cfg_.solver ? *cfg_.solver : SolverMethod::Auto;
    d->stepper = std::make_unique<ImexStepper>(std::move(op), ImexTableau::ssp3_433(), method);
    cache_.push_front(std::move(d));
    if (cache_.size() > 3) cache_.pop_back();
    return *cache_.front();
  }

  double wave_speed(const HierState& u) {
    Discretization& d = get(u.space);
    return d.conv ? d.conv->wave_speed(u) : 0.0;
  }

  HierState step(const HierState& u, double t, double dt) {
    Discretization& d = get(u.space);
    ExplicitRhs rhs;
    if (d.conv || pb_.source) {
      rhs = [&d, this](const Eigen::VectorXd& y, double tt) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(y.size());
        if (d.conv) {
          const HierState s(d.space, y);
          out += d.conv->apply(s, d.conv->wave_speed(s));
        }
        if (pb_.source) {
          const SpaceTimeField& src = pb_.source;
          out += source_increment([&](double x, double yy) { return src(x, yy, tt); }, d.space);
        }
        return out;
      };
    }
    return HierState(d.space, d.stepper->step(u.coeffs, t, dt, rhs));
  }

 private:
  const Problem& pb_;
  const RunConfig& cfg_;
  std::list<std::unique_ptr<Discretization>> cache_;
};

SpacePtr initial_space(const Problem& pb, const RunConfig& cfg) {
  if (cfg.grid == GridKind::Full) return ActiveSpace::nodal(pb.dim, cfg.degree, cfg.level);
  return ActiveSpace::from_spec({SpaceKind::Sparse, pb.dim, cfg.degree, cfg.level, {}});
}

AdaptConfig adapt_config(const RunConfig& cfg) { return {cfg.epsilon, cfg.eta, cfg.level}; }

void write_snapshot(const fs::path& dir, const std::string& stem, const HierState& u, int resolution) {
  {
    std::ofstream out(dir / (stem.empty() ? "samples.dat" : "samples_" + stem + ".dat"));
    write_samples(out, u, resolution);
  }
  std::ofstream out(dir / (stem.empty() ? "active_elements.dat" : "active_elements_" + stem + ".dat"));
  write_keys(out, u.space->keys());
}

std::string format_param(double p) {
  std::ostringstream s;
  s << std::setprecision(6) << p;
  return s.str();
}

}  // namespace

double choose_time_step(double t_final, double h, double courant, double dt_max, double wave_speed, int degree,
                        double fixed_dt) {
  double dt = fixed_dt > 0.0 ? fixed_dt : courant * h;
  if (fixed_dt <= 0.0) {
    if (dt_max > 0.0) dt = std::min(dt, dt_max);
    // the printed Lax-Friedrichs flux carries twice the usual dissipation, halving the explicit limit.
    // The extra 0.5 is empirical: strong implicit dispersion shrinks the usable explicit region on fine 2D grids.
    if (wave_speed > 0.0) dt = std::min(dt, 0.5 * h / (2.0 * wave_speed * (2 * degree + 1)));
  }
  const double steps = std::ceil(t_final / dt - 1e-9);
  return t_final / std::max(1.0, steps);
}

RunResult run(const RunConfig& cfg, const std::optional<fs::path>& output) {
  cfg.validate();
  const Problem pb = make_problem(cfg.problem, cfg.problem_params);
  const double t_final = cfg.t_final > 0.0 ? cfg.t_final : pb.t_final;
  const double dt_max = cfg.dt_max >= 0.0 ? cfg.dt_max : pb.dt_max;
  const Field u0 = [&](double x, double y) { return pb.initial(x, y, 0.0); };
  const Field u0y = pb.initial_dy ? Field([&](double x, double y) { return pb.initial_dy(x, y, 0.0); }) : Field();
  if (cfg.projection == InitialProjection::Star && !u0y)
    throw std::invalid_argument("discretization.projection: " + pb.name + " has no y-derivative for star");

  TimeStepper stepper(pb, cfg);
  const AdaptConfig acfg = adapt_config(cfg);
  HierState u;
  if (cfg.grid == GridKind::Adaptive) {
    u = adapt_initial(u0, pb.dim, cfg.degree, acfg,
                      [&](const Field& f, SpacePtr s) { return project_initial(f, u0y, s, cfg.projection); });
  } else {
    u = project_initial(u0, u0y, initial_space(pb, cfg), cfg.projection);
  }

  RunResult res;
  res.initial_state = u;
  const double h = std::ldexp(1.0, -cfg.level);
  res.dt = choose_time_step(t_final, h, cfg.courant, dt_max, stepper.wave_speed(u), cfg.degree, cfg.dt);
  res.steps = static_cast<int>(std::lround(t_final / res.dt));
  res.t_final = t_final;

  const int resolution = cfg.samples > 0 ? cfg.samples
                                         : (pb.dim == 1 ? std::min(2048, 4 << cfg.level) : std::min(256, 2 << cfg.level));
  if (output) {
    fs::create_directories(*output);
    if (cfg.snapshots > 0) write_snapshot(*output, "000", u, resolution);
  }

  res.energy.emplace_back(0.0, u.energy());
  res.dof.emplace_back(0.0, u.space->dof());
  int next_snapshot = 1;
  for (int n = 0; n < res.steps; ++n) {
    const double t = n * res.dt;
    if (cfg.grid == GridKind::Adaptive) {
      const HierState pred = stepper.step(u, t, res.dt);
      std::vector<ElemKey> keys = refined_keys(pred, acfg);
      HierState next = pred;
      if (keys.size() != u.space->keys().size()) {
        SpacePtr grown = stepper.canonical(
            ActiveSpace::hierarchical(pb.dim, cfg.degree, cfg.level, SpaceKind::Adaptive, std::move(keys)));
        next = stepper.step(remap(u, grown), t, res.dt);
      }
      u = stepper.adopt(coarsen(next, acfg));
    } else {
      u = stepper.step(u, t, res.dt);
    }
    const double tn = (n + 1) * res.dt;
    const double e = u.energy();
    if (!std::isfinite(e)) {
      std::ostringstream msg;
      msg << "solution is not finite at t = " << tn;
      throw std::runtime_error(msg.str());
    }
    res.energy.emplace_back(tn, e);
    res.dof.emplace_back(tn, u.space->dof());
    if (output && cfg.snapshots > 0 && (n + 1) * cfg.snapshots >= next_snapshot * res.steps) {
      std::ostringstream stem;
      stem << std::setw(3) << std::setfill('0') << next_snapshot;
      write_snapshot(*output, stem.str(), u, resolution);
      while ((n + 1) * cfg.snapshots >= next_snapshot * res.steps) ++next_snapshot;
    }
  }
  res.final_state = u;
  if (pb.exact) res.errors = compute_errors(u, [&](double x, double y) { return pb.exact(x, y, t_final); });

  if (output) {
    write_snapshot(*output, "", u, resolution);
    std::ofstream energy(*output / "energy.csv");
    energy << "t,energy\n" << std::setprecision(12);
    for (const auto& [t, e] : res.energy) energy << t << ',' << e << '\n';
    std::ofstream dof(*output / "dof.csv");
    dof << "t,DoF\n" << std::setprecision(12);
    for (const auto& [t, d] : res.dof) dof << t << ',' << d << '\n';
    if (res.errors) {
      SweepRow row{cfg.grid == GridKind::Adaptive ? cfg.epsilon : static_cast<double>(cfg.level), u.space->dof(),
                   *res.errors, std::nullopt};
      write_errors_csv(*output / "errors.csv", {row});
    }
  }
  return res;
}

std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors, const std::vector<double>& params,
                                                     RateMode mode) {
  if (errors.size() < 2) throw std::invalid_argument("convergence_rates: need at least two entries");
  if (mode != RateMode::Mesh && params.size() != errors.size())
    throw std::invalid_argument("convergence_rates: errors and parameters differ in length");
  std::vector<std::optional<double>> out(errors.size());
  for (size_t l = 1; l < errors.size(); ++l) {
    const double e0 = errors[l - 1], e1 = errors[l];
    if (!(e0 > 0.0) || !(e1 > 0.0)) continue;
    const double num = std::log(e0 / e1);
    if (mode == RateMode::Mesh) {
      out[l] = num / std::log(2.0);
      continue;
    }
    const double p0 = params[l - 1], p1 = params[l];
    if (!(p0 > 0.0) || !(p1 > 0.0) || p0 == p1) continue;
    out[l] = mode == RateMode::Epsilon ? num / std::log(p0 / p1) : num / std::log(p1 / p0);
  }
  return out;
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::optional<fs::path>& output) {
  const bool adaptive = cfg.grid == GridKind::Adaptive;
  std::vector<double> params;
  if (adaptive) params = cfg.sweep_epsilons;
  else
    for (int l : cfg.sweep_levels) params.push_back(l);
  if (params.empty())
    throw std::invalid_argument(adaptive ? "sweep: sweep.epsilons is empty" : "sweep: sweep.levels is empty");
  std::vector<SweepRow> rows;
  for (double p : params) {
    RunConfig c = cfg;
    if (adaptive) c.epsilon = p;
    else c.level = static_cast<int>(p);
    std::optional<fs::path> sub;
    if (output) sub = *output / ((adaptive ? "eps_" : "N_") + format_param(p));
    const RunResult r = run(c, sub);
    if (!r.errors) throw std::invalid_argument("sweep: problem " + cfg.problem + " has no exact solution");
    rows.push_back({p, r.final_state.space->dof(), *r.errors, std::nullopt});
  }
  if (rows.size() >= 2) {
    std::vector<double> l2;
    for (const auto& r : rows) l2.push_back(r.errors.l2);
    const auto rates = convergence_rates(l2, params, adaptive ? RateMode::Epsilon : RateMode::Mesh);
    for (size_t i = 0; i < rows.size(); ++i) rows[i].order = rates[i];
  }
  if (output) write_errors_csv(*output / "errors.csv", rows);
  return rows;
}

void write_errors_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "N_or_eps,DoF,L1,L2,Linf,order\n";
  out << std::setprecision(6);
  for (const auto& r : rows) {
    out << r.parameter << ',' << r.dof << ',' << std::scientific << r.errors.l1 << ',' << r.errors.l2 << ','
        << r.errors.linf << ',' << std::defaultfloat;
    if (r.order) out << std::fixed << std::setprecision(3) << *r.order << std::defaultfloat << std::setprecision(6);
    else out << '-';
    out << '\n';
  }
}

std::vector<SweepRow> read_errors_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("N_or_eps,DoF,L1,L2,Linf", 0) != 0) throw std::invalid_argument(path.string() + ": unexpected header");
  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() < 5) throw std::invalid_argument(path.string() + ": line " + std::to_string(lineno) + " is short");
    try {
      SweepRow r;
      r.parameter = std::stod(f[0]);
      r.dof = std::stoi(f[1]);
      r.errors = {std::stod(f[2]), std::stod(f[3]), std::stod(f[4])};
      if (f.size() > 5 && f[5] != "-") r.order = std::stod(f[5]);
      rows.push_back(r);
    } catch (const std::exception&) {
      throw std::invalid_argument(path.string() + ": line " + std::to_string(lineno) + " is malformed");
    }
  }
  return rows;
}

}  // namespace uwdg
