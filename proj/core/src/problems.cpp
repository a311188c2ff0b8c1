#include "uwdg/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uwdg {

namespace {

const double kPi = std::numbers::pi;

// series coefficients of the bell-shaped pulse
constexpr std::array<double, 10> kPulseCoeffs = {-1.25529873, 0.21722635,  0.06452543,  0.00540862,  -0.00332515,
                                                 -0.00281281, -0.00138352, -0.00070289, -0.00020451, -0.00003053};

// nearest periodic image of d in [-1/2, 1/2)
double wrap_offset(double d) { return d - std::floor(d + 0.5); }

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

// radius measured in units of sqrt(sigma), the natural length of the scaled equation
struct Pulse {
  double c, x0, y0, sigma;

  double radius(double x, double y) const {
    const double dx = wrap_offset(x - x0), dy = wrap_offset(y - y0);
    return std::sqrt(dx * dx + dy * dy) / std::sqrt(sigma);
  }
  // arccot(z) in (0, pi) for z >= 0 is atan2(1, z)
  double value(double r) const {
    const double theta = std::atan2(1.0, std::sqrt(c) * r / 2.0);
    double acc = 0.0;
    for (size_t n = 0; n < kPulseCoeffs.size(); ++n) acc += kPulseCoeffs[n] * (std::cos(2.0 * (n + 1) * theta) - 1.0);
    return c / 3.0 * acc;
  }
  double dvalue_dr(double r) const {
    const double z = std::sqrt(c) * r / 2.0;
    const double theta = std::atan2(1.0, z);
    const double dtheta = -(std::sqrt(c) / 2.0) / (1.0 + z * z);
    double acc = 0.0;
    for (size_t n = 0; n < kPulseCoeffs.size(); ++n) {
      const double m = 2.0 * (n + 1);
      acc -= kPulseCoeffs[n] * m * std::sin(m * theta) * dtheta;
    }
    return c / 3.0 * acc;
  }
  double dy(double x, double y) const {
    const double r = radius(x, y);
    if (r < 1e-14) return 0.0;
    return dvalue_dr(r) * wrap_offset(y - y0) / (r * sigma);
  }
};

void check_params(const std::string& name, const ParamMap& params, const std::set<std::string>& allowed) {
  std::string bad;
  for (const auto& [k, v] : params.values())
    if (!allowed.count(k)) bad += (bad.empty() ? "" : ", ") + k;
  if (!bad.empty()) throw std::invalid_argument("problem " + name + ": unknown parameter(s): " + bad);
}

Problem kdv_manufactured(const ParamMap& p) {
  check_params("kdv_manufactured", p, {"t_final", "dt_max"});
  Problem pr;
  pr.name = "kdv_manufactured";
  pr.dim = 1;
  pr.dispersion = Dispersion::KdV;
  pr.flux = quadratic_flux(1.0);
  pr.exact = [](double x, double, double t) { return std::sin(2 * kPi * (x - t)); };
  pr.initial = pr.exact;
  pr.source = [](double x, double, double t) {
    const double th = 2 * kPi * (x - t);
    return 2 * kPi * std::cos(th) * (-4 * kPi * kPi - 1 + std::sin(th));
  };
  pr.t_final = p.number("t_final", 0.1);
  pr.dt_max = p.number("dt_max", 2e-4);
  return pr;
}

Problem kdv_single(const ParamMap& p) {
  check_params("kdv_single", p, {"c", "x0", "sigma", "t_final", "dt_max"});
  Problem pr;
  pr.name = "kdv_single";
  const double c = p.number("c", 0.3), x0 = p.number("x0", 0.5);
  pr.sigma = p.number("sigma", 5e-4);
  const double kappa = 0.5 * std::sqrt(c / pr.sigma);
  pr.flux = quadratic_flux(1.0);
  pr.exact = [=](double x, double, double t) { return 3 * c * sech2(kappa * wrap_offset(x - c * t - x0)); };
  pr.initial = pr.exact;
  pr.t_final = p.number("t_final", 0.8);
  pr.dt_max = p.number("dt_max", 0.0);
  return pr;
}

Problem kdv_double(const ParamMap& p) {
  check_params("kdv_double", p, {"c1", "c2", "x1", "x2", "sigma", "t_final", "dt_max"});
  Problem pr;
  pr.name = "kdv_double";
  const double c1 = p.number("c1", 0.3), c2 = p.number("c2", 0.1);
  const double x1 = p.number("x1", 0.45), x2 = p.number("x2", 0.65);
  pr.sigma = p.number("sigma", 1.21e-4);
  const double k1 = 0.5 * std::sqrt(c1 / pr.sigma), k2 = 0.5 * std::sqrt(c2 / pr.sigma);
  pr.flux = quadratic_flux(1.0);
  pr.initial = [=](double x, double, double) {
    return 3 * c1 * sech2(k1 * wrap_offset(x - x1)) + 3 * c2 * sech2(k2 * wrap_offset(x - x2));
  };
  pr.t_final = p.number("t_final", 1.0);
  pr.dt_max = p.number("dt_max", 0.0);
  return pr;
}

Problem kdv_triple(const ParamMap& p) {
  check_params("kdv_triple", p, {"x0", "sigma", "t_final", "dt_max"});
  Problem pr;
  pr.name = "kdv_triple";
  const double x0 = p.number("x0", 0.5);
  pr.sigma = p.number("sigma", 2.5e-5);
  const double width = std::sqrt(108 * pr.sigma);
  pr.flux = quadratic_flux(1.0);
  pr.initial = [=](double x, double, double) { return 2.0 / 3.0 * sech2(wrap_offset(x - x0) / width); };
  pr.t_final = p.number("t_final", 1.0);
  pr.dt_max = p.number("dt_max", 0.0);
  return pr;
}

Problem zk_simplified(const ParamMap& p) {
  check_params("zk_simplified", p, {"t_final", "dt_max"});
  Problem pr;
  pr.name = "zk_simplified";
  pr.dim = 2;
  pr.dispersion = Dispersion::ZKSimplified;
  const double w = 8 * kPi * kPi * kPi;
  pr.exact = [=](double x, double y, double t) { return std::sin(2 * kPi * (x + y) + w * t); };
  pr.initial = pr.exact;
  pr.initial_dy = [=](double x, double y, double t) { return 2 * kPi * std::cos(2 * kPi * (x + y) + w * t); };
  pr.t_final = p.number("t_final", 0.01);
  pr.dt_max = p.number("dt_max", 2.5e-5);
  return pr;
}

Problem zk_manufactured(const ParamMap& p) {
  check_params("zk_manufactured", p, {"t_final", "dt_max"});
  Problem pr;
  pr.name = "zk_manufactured";
  pr.dim = 2;
  pr.dispersion = Dispersion::ZK;
  pr.flux = quadratic_flux(1.0);
  pr.exact = [](double x, double y, double t) { return std::sin(2 * kPi * (x + y + t)); };
  pr.initial = pr.exact;
  pr.initial_dy = [](double x, double y, double t) { return 2 * kPi * std::cos(2 * kPi * (x + y + t)); };
  pr.source = [](double x, double y, double t) {
    const double th = 2 * kPi * (x + y + t);
    return 2 * kPi * std::cos(th) * (1 - 8 * kPi * kPi + std::sin(th));
  };
  pr.t_final = p.number("t_final", 0.01);
  pr.dt_max = p.number("dt_max", 2.5e-5);
  return pr;
}

Problem pulses(const std::string& name, std::vector<Pulse> list, double sigma, double t_final, const ParamMap& p) {
  Problem pr;
  pr.name = name;
  pr.dim = 2;
  pr.dispersion = Dispersion::ZK;
  pr.sigma = sigma;
  pr.flux = quadratic_flux(6.0);
  pr.initial = [list](double x, double y, double) {
    double acc = 0.0;
    for (const Pulse& q : list) acc += q.value(q.radius(x, y));
    return acc;
  };
  pr.initial_dy = [list](double x, double y, double) {
    double acc = 0.0;
    for (const Pulse& q : list) acc += q.dy(x, y);
    return acc;
  };
  pr.t_final = p.number("t_final", t_final);
  pr.dt_max = p.number("dt_max", 0.0);
  return pr;
}

Problem zk_pulse(const ParamMap& p) {
  check_params("zk_pulse", p, {"c", "x0", "y0", "sigma", "t_final", "dt_max"});
  const double sigma = p.number("sigma", 1.0 / 1024);
  const Pulse q{p.number("c", 4.0), p.number("x0", 0.5), p.number("y0", 0.5), sigma};
  return pulses("zk_pulse", {q}, sigma, 0.2, p);
}

Problem zk_two_pulse(const ParamMap& p) {
  check_params("zk_two_pulse", p, {"collision", "c1", "c2", "sigma", "t_final", "dt_max"});
  const std::string kind = p.text("collision", "direct");
  const double c1 = p.number("c1", 4.0), c2 = p.number("c2", 1.0);
  if (kind == "direct") {
    const double s = p.number("sigma", 1.0 / 4096);
    return pulses("zk_two_pulse", {{c1, 0.5, 0.5, s}, {c2, 0.625, 0.5, s}}, s, 0.1, p);
  }
  if (kind == "deviated") {
    const double s = p.number("sigma", 1.0 / 1024);
    return pulses("zk_two_pulse", {{c1, 0.25, 0.4375, s}, {c2, 0.5, 0.5, s}}, s, 0.15, p);
  }
  throw std::invalid_argument("zk_two_pulse: collision must be direct or deviated");
}

Problem zk_lump(const ParamMap& p) {
  check_params("zk_lump", p, {"amplitude", "kappa", "x0", "y0", "sigma", "t_final", "dt_max"});
  Problem pr;
  pr.name = "zk_lump";
  pr.dim = 2;
  pr.dispersion = Dispersion::ZK;
  pr.sigma = p.number("sigma", 1.0 / 6400);
  pr.flux = quadratic_flux(6.0);
  const double a = p.number("amplitude", 0.4), kappa = p.number("kappa", 320.0);
  const double x0 = p.number("x0", 0.5), y0 = p.number("y0", 0.5);
  pr.initial = [=](double x, double y, double) {
    const double dx = wrap_offset(x - x0), dy = wrap_offset(y - y0);
    return a * std::exp(-kappa * (dx * dx + dy * dy));
  };
  pr.initial_dy = [=](double x, double y, double) {
    const double dx = wrap_offset(x - x0), dy = wrap_offset(y - y0);
    return -2 * kappa * dy * a * std::exp(-kappa * (dx * dx + dy * dy));
  };
  pr.t_final = p.number("t_final", 0.2);
  pr.dt_max = p.number("dt_max", 0.0);
  return pr;
}

}  // namespace

double ParamMap::number(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) throw std::invalid_argument("parameter " + key + " is not a number: " + it->second);
  return v;
}

std::string ParamMap::text(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

ScalarFunction quadratic_flux(double a) {
  return {[a](double u, int n) { return n == 0 ? 0.5 * a * u * u : (n == 1 ? a * u : (n == 2 ? a : 0.0)); }};
}

std::vector<std::string> problem_names() {
  return {"kdv_manufactured", "kdv_single", "kdv_double", "kdv_triple", "zk_simplified",
          "zk_manufactured",  "zk_pulse",   "zk_two_pulse", "zk_lump"};
}

Problem make_problem(const std::string& name, const ParamMap& params) {
  if (name == "kdv_manufactured") return kdv_manufactured(params);
  if (name == "kdv_single") return kdv_single(params);
  if (name == "kdv_double") return kdv_double(params);
  if (name == "kdv_triple") return kdv_triple(params);
  if (name == "zk_simplified") return zk_simplified(params);
  if (name == "zk_manufactured") return zk_manufactured(params);
  if (name == "zk_pulse") return zk_pulse(params);
  if (name == "zk_two_pulse") return zk_two_pulse(params);
  if (name == "zk_lump") return zk_lump(params);
  std::ostringstream msg;
  msg << "unknown problem '" << name << "'; available:";
  for (const auto& n : problem_names()) msg << ' ' << n;
  throw std::invalid_argument(msg.str());
}

}  // namespace uwdg
