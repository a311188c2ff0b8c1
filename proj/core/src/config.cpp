#include "uwdg/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uwdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
  size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": not a number: '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_number(key, v);
  if (d != static_cast<int>(d)) throw std::invalid_argument(key + ": not an integer: '" + v + "'");
  return static_cast<int>(d);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string to_string(GridKind g) {
  switch (g) {
    case GridKind::Full: return "full";
    case GridKind::Sparse: return "sparse";
    case GridKind::Adaptive: return "adaptive";
  }
  return "?";
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  const std::string name = section + "." + key;
  if (section == "problem") {
    if (key == "name") problem = value;
    else problem_params.set(key, value);
    return;
  }
  if (section == "discretization") {
    if (key == "degree") degree = to_int(name, value);
    else if (key == "grid") {
      if (value == "full") grid = GridKind::Full;
      else if (value == "sparse") grid = GridKind::Sparse;
      else if (value == "adaptive") grid = GridKind::Adaptive;
      else throw std::invalid_argument(name + ": expected full, sparse or adaptive, got '" + value + "'");
    } else if (key == "level") level = to_int(name, value);
    else if (key == "epsilon") epsilon = to_number(name, value);
    else if (key == "eta") eta = to_number(name, value);
    else if (key == "flux") {
      if (value == "main") flux = FluxVariant::Main;
      else if (value == "alt") flux = FluxVariant::Alt;
      else throw std::invalid_argument(name + ": expected main or alt, got '" + value + "'");
    } else if (key == "interp_degree") interp_degree = to_int(name, value);
    else if (key == "projection") {
      if (value == "l2") projection = InitialProjection::L2;
      else if (value == "star") projection = InitialProjection::Star;
      else throw std::invalid_argument(name + ": expected l2 or star, got '" + value + "'");
    } else throw std::invalid_argument("unknown key " + name);
    return;
  }
  if (section == "time") {
    if (key == "t_final") t_final = to_number(name, value);
    else if (key == "courant") courant = to_number(name, value);
    else if (key == "dt") dt = to_number(name, value);
    else if (key == "dt_max") dt_max = to_number(name, value);
    else if (key == "solver") {
      if (value == "auto") solver.reset();
      else if (value == "direct") solver = SolverMethod::Direct;
      else if (value == "krylov") solver = SolverMethod::Krylov;
      else if (value == "fourier") solver = SolverMethod::Fourier;
      else throw std::invalid_argument(name + ": expected auto, direct, krylov or fourier, got '" + value + "'");
    } else throw std::invalid_argument("unknown key " + name);
    return;
  }
  if (section == "output") {
    if (key == "snapshots") snapshots = to_int(name, value);
    else if (key == "samples") samples = to_int(name, value);
    else throw std::invalid_argument("unknown key " + name);
    return;
  }
  if (section == "sweep") {
    if (key == "levels") {
      sweep_levels.clear();
      for (const auto& s : split_list(value)) sweep_levels.push_back(to_int(name, s));
    } else if (key == "epsilons") {
      sweep_epsilons.clear();
      for (const auto& s : split_list(value)) sweep_epsilons.push_back(to_number(name, s));
    } else throw std::invalid_argument("unknown key " + name);
    return;
  }
  throw std::invalid_argument("unknown key " + name + " (unknown section '" + section + "')");
}

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  std::vector<std::string> errors;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    try {
      cfg.set(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      errors.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open configuration file " + path.string());
  return parse(in);
}

int RunConfig::effective_interp_degree() const {
  if (interp_degree > 0) return interp_degree;
  return degree % 2 == 0 ? degree + 1 : degree + 2;
}

void RunConfig::validate() const {
  std::vector<std::string> errors;
  Problem pb;
  try {
    pb = make_problem(problem, problem_params);
  } catch (const std::invalid_argument& e) {
    errors.push_back(std::string("problem: ") + e.what());
  }
  if (!pb.name.empty() && degree < min_degree(pb.dispersion))
    errors.push_back("discretization.degree: " + problem + " needs degree >= " + std::to_string(min_degree(pb.dispersion)));
  if (degree < 1 || degree > 4) errors.push_back("discretization.degree: must lie in [1, 4]");
  if (level < 1 || level > kMaxLevelCap) errors.push_back("discretization.level: must lie in [1, " + std::to_string(kMaxLevelCap) + "]");
  const int m = effective_interp_degree();
  if (m % 2 == 0 || m < degree + 1 || m > 7)
    errors.push_back("discretization.interp_degree: must be odd with degree + 1 <= M <= 7");
  if (grid == GridKind::Adaptive) {
    if (!(epsilon > 0.0)) errors.push_back("discretization.epsilon: must be positive");
    if (eta < 0.0 || (eta > 0.0 && eta >= epsilon)) errors.push_back("discretization.eta: must lie in (0, epsilon)");
  }
  if (projection == InitialProjection::Star && !pb.name.empty() && pb.dim != 2)
    errors.push_back("discretization.projection: star is two-dimensional");
  if (!(courant > 0.0)) errors.push_back("time.courant: must be positive");
  if (dt < 0.0) errors.push_back("time.dt: must be non-negative");
  if (t_final == 0.0) errors.push_back("time.t_final: must be positive");
  if (solver == SolverMethod::Fourier && grid != GridKind::Full)
    errors.push_back("time.solver: fourier needs a full grid");
  if (snapshots < 0) errors.push_back("output.snapshots: must be non-negative");
  if (samples < 0) errors.push_back("output.samples: must be non-negative");
  for (int l : sweep_levels)
    if (l < 1 || l > kMaxLevelCap) errors.push_back("sweep.levels: level out of range");
  for (double e : sweep_epsilons)
    if (!(e > 0.0)) errors.push_back("sweep.epsilons: thresholds must be positive");
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
}

}  // namespace uwdg
