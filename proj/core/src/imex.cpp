#include "uwdg/imex.hpp"

namespace uwdg {

ImexTableau ImexTableau::ssp3_433() {
  const double a = 0.24169426078821, b = 0.06042356519705, e = 0.12915286960590;
  ImexTableau t;
  t.a_im.resize(4, 4);
  t.a_im << a, 0, 0, 0,
            -a, a, 0, 0,
            0, 1 - a, a, 0,
            b, e, 0.5 - b - e - a, a;
  t.a_ex.resize(4, 4);
  t.a_ex << 0, 0, 0, 0,
            0, 0, 0, 0,
            0, 1, 0, 0,
            0, 0.25, 0.25, 0;
  t.b_im.resize(4);
  t.b_im << 0, 1.0 / 6, 1.0 / 6, 2.0 / 3;
  t.b_ex = t.b_im;
  t.c_im = t.a_im.rowwise().sum();
  t.c_ex = t.a_ex.rowwise().sum();
  return t;
}

double ImexTableau::implicit_stability(double z) const {
  const int s = stages();
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(s, s) - z * a_im;
  return 1.0 + z * b_im.dot(m.partialPivLu().solve(Eigen::VectorXd::Ones(s)));
}

ImexStepper::ImexStepper(LinearOperator op, ImexTableau tableau, SolverMethod method)
    : op_(std::move(op)), tab_(std::move(tableau)), method_(method) {
  const int s = tab_.stages();
  explicit_needed_.assign(static_cast<size_t>(s), false);
  for (int j = 0; j < s; ++j) {
    bool used = tab_.b_ex[j] != 0.0;
    for (int i = j + 1; i < s; ++i) used = used || tab_.a_ex(i, j) != 0.0;
    explicit_needed_[static_cast<size_t>(j)] = used;
  }
}

const ShiftedSolver& ImexStepper::solver_for(double shift) {
  auto it = solvers_.find(shift);
  if (it == solvers_.end()) {
    // only the most recent step size is worth keeping
    if (solvers_.size() > 4) solvers_.clear();
    it = solvers_.emplace(shift, std::make_unique<ShiftedSolver>(op_, shift, method_)).first;
  }
  return *it->second;
}

Eigen::VectorXd ImexStepper::step(const Eigen::VectorXd& u, double t, double dt, const ExplicitRhs& rhs) {
  const int s = tab_.stages();
  std::vector<Eigen::VectorXd> im(static_cast<size_t>(s)), ex(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) {
    Eigen::VectorXd stage = u;
    for (int j = 0; j < i; ++j) {
      if (tab_.a_im(i, j) != 0.0) stage.noalias() += dt * tab_.a_im(i, j) * im[static_cast<size_t>(j)];
      if (tab_.a_ex(i, j) != 0.0 && ex[static_cast<size_t>(j)].size()) stage.noalias() += dt * tab_.a_ex(i, j) * ex[static_cast<size_t>(j)];
    }
    const double d = tab_.a_im(i, i) * dt;
    if (d != 0.0) {
      const ShiftedSolver& solver = solver_for(d);
      Eigen::VectorXd y = solver.solve(stage);
      // stage derivative without a matrix product: L y = (y - stage) / d
      im[static_cast<size_t>(i)] = solver.exact() ? Eigen::VectorXd((y - stage) / d) : op_.apply(y);
      stage = std::move(y);
    } else {
      im[static_cast<size_t>(i)] = op_.apply(stage);
    }
    if (rhs && explicit_needed_[static_cast<size_t>(i)]) ex[static_cast<size_t>(i)] = rhs(stage, t + tab_.c_ex[i] * dt);
  }
  Eigen::VectorXd out = u;
  for (int i = 0; i < s; ++i) {
    if (tab_.b_im[i] != 0.0) out.noalias() += dt * tab_.b_im[i] * im[static_cast<size_t>(i)];
    if (tab_.b_ex[i] != 0.0 && ex[static_cast<size_t>(i)].size()) out.noalias() += dt * tab_.b_ex[i] * ex[static_cast<size_t>(i)];
  }
  return out;
}

}  // namespace uwdg
