#include "uwdg/linear_solver.hpp"

#include <fftw3.h>

#include <Eigen/SparseLU>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/IterativeSolvers>
#include <vector>

namespace uwdg {

namespace {

using ColMatrix = Eigen::SparseMatrix<double>;

ColMatrix shifted_matrix(const SparseMatrix& l, double shift) {
  ColMatrix a = -shift * ColMatrix(l);
  ColMatrix id(a.rows(), a.cols());
  id.setIdentity();
  a += id;
  a.makeCompressed();
  return a;
}

// Block-circulant solver for operators on uniform periodic nodal grids.
class FourierSolver {
 public:
  FourierSolver(const ActiveSpace& space, const SparseMatrix& l, double shift) : dim_(space.dim()), bs_(space.block_size()) {
    nc_ = space.units_1d();
    cells_ = dim_ == 2 ? nc_ * nc_ : nc_;
    half_ = nc_ / 2 + 1;
    modes_ = dim_ == 2 ? nc_ * half_ : half_;
    // cell order used by the FFT (x slowest) -> block index of the space
    block_of_.resize(static_cast<size_t>(cells_));
    for (int cx = 0; cx < nc_; ++cx)
      for (int cy = 0; cy < (dim_ == 2 ? nc_ : 1); ++cy)
        block_of_[static_cast<size_t>(dim_ == 2 ? cx * nc_ + cy : cx)] = dim_ == 2 ? space.find(cx, cy) : space.find(cx);
    const int origin = block_of_[0];
    std::vector<Eigen::MatrixXcd> symbol(static_cast<size_t>(modes_), Eigen::MatrixXcd::Zero(bs_, bs_));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int r = 0; r < bs_; ++r) {
      const int row = origin * bs_ + r;
      for (SparseMatrix::InnerIterator it(l, row); it; ++it) {
        const int block = static_cast<int>(it.col()) / bs_;
        const int c = static_cast<int>(it.col()) % bs_;
        const auto unit = space.units()[static_cast<size_t>(block)];
        for (int m = 0; m < modes_; ++m) {
          const int m1 = dim_ == 2 ? m / half_ : m;
          const int m2 = dim_ == 2 ? m % half_ : 0;
          const double phase = two_pi * (static_cast<double>(m1) * unit[0] + static_cast<double>(m2) * unit[1]) / nc_;
          symbol[static_cast<size_t>(m)](r, c) += it.value() * std::polar(1.0, phase);
        }
      }
    }
    lu_.reserve(static_cast<size_t>(modes_));
    for (int m = 0; m < modes_; ++m) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(bs_, bs_) - shift * symbol[static_cast<size_t>(m)];
      lu_.emplace_back(a);
      const double rc = lu_.back().rcond();
      if (!(rc > 1e-14)) {
        std::ostringstream msg;
        msg << "FourierSolver: singular mode " << m << " (reciprocal condition estimate " << rc << ")";
        throw std::runtime_error(msg.str());
      }
    }
    real_ = static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<size_t>(cells_ * bs_)));
    spec_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(modes_ * bs_)));
    int n[2] = {nc_, nc_};
    forward_ = fftw_plan_many_dft_r2c(dim_, n, bs_, real_, nullptr, bs_, 1, spec_, nullptr, bs_, 1, FFTW_ESTIMATE);
    backward_ = fftw_plan_many_dft_c2r(dim_, n, bs_, spec_, nullptr, bs_, 1, real_, nullptr, bs_, 1, FFTW_ESTIMATE);
  }
  ~FourierSolver() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  FourierSolver(const FourierSolver&) = delete;
  FourierSolver& operator=(const FourierSolver&) = delete;

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    for (int c = 0; c < cells_; ++c)
      for (int r = 0; r < bs_; ++r) real_[c * bs_ + r] = b[block_of_[static_cast<size_t>(c)] * bs_ + r];
    fftw_execute(forward_);
    Eigen::VectorXcd rhs(bs_);
    for (int m = 0; m < modes_; ++m) {
      for (int r = 0; r < bs_; ++r) rhs[r] = {spec_[m * bs_ + r][0], spec_[m * bs_ + r][1]};
      const Eigen::VectorXcd x = lu_[static_cast<size_t>(m)].solve(rhs);
      for (int r = 0; r < bs_; ++r) {
        spec_[m * bs_ + r][0] = x[r].real();
        spec_[m * bs_ + r][1] = x[r].imag();
      }
    }
    fftw_execute(backward_);
    Eigen::VectorXd out(b.size());
    const double scale = 1.0 / cells_;
    for (int c = 0; c < cells_; ++c)
      for (int r = 0; r < bs_; ++r) out[block_of_[static_cast<size_t>(c)] * bs_ + r] = scale * real_[c * bs_ + r];
    return out;
  }

 private:
  int dim_, bs_, nc_ = 0, cells_ = 0, half_ = 0, modes_ = 0;
  std::vector<int> block_of_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_{};
  fftw_plan backward_{};
};

}  // namespace

constexpr double kDenseFraction = 0.05;
constexpr double kDenseLimit = 12000;
// largest shift * ||L||_inf for which Auto tries diagonally preconditioned GMRES
constexpr double kIterativeLimit = 50.0;

double inf_norm(const SparseMatrix& l) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(l.rows());
  for (int c = 0; c < l.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(l, c); it; ++it) rows[it.row()] += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

struct ShiftedSolver::Impl {
  ColMatrix a;
  double tolerance = 1e-10;
  std::unique_ptr<Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>>> lu;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> dense;
  std::unique_ptr<Eigen::GMRES<ColMatrix, Eigen::IncompleteLUT<double>>> gmres;
  std::unique_ptr<Eigen::GMRES<ColMatrix, Eigen::DiagonalPreconditioner<double>>> gmres_diag;
  std::unique_ptr<FourierSolver> fourier;

  void factorize();
};

void ShiftedSolver::Impl::factorize() {
  const double n = static_cast<double>(a.rows());
  // hierarchical operators couple most blocks; sparse LU fill then costs more than dense LU
  if (a.nonZeros() > kDenseFraction * n * n && n <= kDenseLimit) {
    dense = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXd>>(Eigen::MatrixXd(a));
    const double rcond = dense->rcond();
    if (!(rcond > 1e-14)) {
      std::ostringstream msg;
      msg << "ShiftedSolver: shifted matrix is singular to working precision (condition estimate " << 1.0 / rcond << ")";
      throw std::runtime_error(msg.str());
    }
    return;
  }
  lu = std::make_unique<Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>>>();
  lu->analyzePattern(a);
  lu->factorize(a);
  if (lu->info() != Eigen::Success) throw std::runtime_error("ShiftedSolver: sparse LU failed: " + lu->lastErrorMessage());
}

ShiftedSolver::ShiftedSolver(const LinearOperator& op, double shift, SolverMethod method, double tolerance)
    : impl_(std::make_unique<Impl>()), shift_(shift), method_(method) {
  if (!(shift >= 0.0)) throw std::invalid_argument("ShiftedSolver: shift must be nonnegative");
  impl_->tolerance = tolerance;
  if (method == SolverMethod::Auto) {
    if (op.space && op.space->layout() == Layout::Nodal) method_ = SolverMethod::Fourier;
    else if (shift * inf_norm(op.matrix) <= kIterativeLimit) method_ = SolverMethod::Krylov;
    else method_ = SolverMethod::Direct;
    if (shift != 0.0 && method_ == SolverMethod::Krylov) {
      impl_->a = shifted_matrix(op.matrix, shift);
      impl_->gmres_diag = std::make_unique<Eigen::GMRES<ColMatrix, Eigen::DiagonalPreconditioner<double>>>();
      impl_->gmres_diag->set_restart(60);
      impl_->gmres_diag->setMaxIterations(600);
      impl_->gmres_diag->setTolerance(0.1 * tolerance);
      impl_->gmres_diag->compute(impl_->a);
      return;
    }
  }
  if (shift == 0.0) return;
  switch (method_) {
    case SolverMethod::Fourier:
      if (!op.space || op.space->layout() != Layout::Nodal)
        throw std::invalid_argument("ShiftedSolver: the Fourier method needs a nodal space");
      impl_->fourier = std::make_unique<FourierSolver>(*op.space, op.matrix, shift);
      return;
    case SolverMethod::Direct:
      impl_->a = shifted_matrix(op.matrix, shift);
      impl_->factorize();
      return;
    case SolverMethod::Auto:
      return;
    case SolverMethod::Krylov:
      impl_->a = shifted_matrix(op.matrix, shift);
      impl_->gmres = std::make_unique<Eigen::GMRES<ColMatrix, Eigen::IncompleteLUT<double>>>();
      impl_->gmres->preconditioner().setDroptol(1e-6);
      impl_->gmres->preconditioner().setFillfactor(20);
      impl_->gmres->set_restart(60);
      impl_->gmres->setMaxIterations(2000);
      impl_->gmres->setTolerance(0.1 * tolerance);
      impl_->gmres->compute(impl_->a);
      if (impl_->gmres->info() != Eigen::Success) throw std::runtime_error("ShiftedSolver: preconditioner setup failed");
      return;
  }
}

bool ShiftedSolver::exact() const { return !impl_->gmres && !impl_->gmres_diag; }

ShiftedSolver::~ShiftedSolver() = default;
ShiftedSolver::ShiftedSolver(ShiftedSolver&&) noexcept = default;
ShiftedSolver& ShiftedSolver::operator=(ShiftedSolver&&) noexcept = default;

Eigen::VectorXd ShiftedSolver::solve(const Eigen::VectorXd& b) const {
  if (shift_ == 0.0) return b;
  if (impl_->fourier) return impl_->fourier->solve(b);
  if (impl_->lu) return impl_->lu->solve(b);
  if (impl_->dense) return impl_->dense->solve(b);
  if (b.squaredNorm() == 0.0) return Eigen::VectorXd::Zero(b.size());
  if (impl_->gmres_diag) {
    Eigen::VectorXd x = impl_->gmres_diag->solve(b);
    if (impl_->gmres_diag->info() == Eigen::Success && (impl_->a * x - b).norm() <= impl_->tolerance * b.norm()) return x;
    // stalled: switch to a factorization for the rest of this solver's life
    impl_->gmres_diag.reset();
    impl_->factorize();
    return solve(b);
  }
  Eigen::VectorXd x = impl_->gmres->solve(b);
  const double bnorm = b.norm();
  const double res = (impl_->a * x - b).norm();
  if (impl_->gmres->info() != Eigen::Success || res > impl_->tolerance * bnorm) {
    std::ostringstream msg;
    msg << "ShiftedSolver: GMRES did not converge (relative residual " << res / bnorm << " after "
        << impl_->gmres->iterations() << " iterations)";
    throw std::runtime_error(msg.str());
  }
  return x;
}

}  // namespace uwdg
