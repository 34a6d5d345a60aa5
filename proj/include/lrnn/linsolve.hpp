#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <SuiteSparseQR.hpp>
#include <lapacke.h>

#include "lrnn/error.hpp"
#include "lrnn/system.hpp"

namespace lrnn {

struct LeastSquaresReport {
  Eigen::VectorXd solution;
  double residual_norm = 0.0;
  double relative_residual = 0.0;
  Eigen::Index effective_rank = 0;
  double cutoff = 0.0;  // absolute singular-value cutoff (dense) or ridge weight (sparse)
  std::string method;
};

enum class SolverBackend { Auto, DenseSvd, SparseQr };

struct SolverOptions {
  SolverBackend backend = SolverBackend::Auto;
  double rcond = 1e-12;  // dense: singular-value cutoff; sparse: ridge weight, both relative to sigma_max
  Eigen::Index dense_limit = 6000;  // Auto picks the dense solve up to this many columns
};

namespace detail {

inline void finish_report(LeastSquaresReport& r, const Eigen::VectorXd& residual, const Eigen::VectorXd& rhs) {
  r.residual_norm = residual.norm();
  r.relative_residual = r.residual_norm / std::max(rhs.norm(), std::numeric_limits<double>::min());
}

}  // namespace detail

/// Minimum-norm minimizer of |A x - b| with singular values below rcond * sigma_max treated
/// as zero (LAPACK dgelsd).
inline LeastSquaresReport solve_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                              double rcond = 1e-12) {
  if (a.rows() < 1 || a.cols() < 1) fail(ErrorKind::InvalidCount, "least squares: empty matrix");
  if (b.size() != a.rows()) fail(ErrorKind::DimensionMismatch, "least squares: rhs length differs from rows");
  if (!(rcond > 0.0 && rcond < 1.0)) fail(ErrorKind::ValidationError, "least squares: rcond must be in (0, 1)");
  if (!a.allFinite() || !b.allFinite()) fail(ErrorKind::NonFinite, "least squares: non-finite entries");

  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int ldb = std::max(m, n);
  Eigen::MatrixXd work = a;  // column-major copy, overwritten
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ldb);
  x.head(m) = b;
  Eigen::VectorXd s(std::min(m, n));
  lapack_int rank = 0;
  const lapack_int info = LAPACKE_dgelsd(LAPACK_COL_MAJOR, m, n, 1, work.data(), m, x.data(), ldb, s.data(), rcond,
                                         &rank);
  if (info != 0) fail(ErrorKind::NonFinite, "least squares: dgelsd failed with info " + std::to_string(info));

  LeastSquaresReport r;
  r.solution = x.head(n);
  r.effective_rank = rank;
  r.cutoff = s.size() ? rcond * s(0) : 0.0;
  r.method = "dense-svd";
  detail::finish_report(r, a * r.solution - b, b);
  return r;
}

namespace detail {

/// Largest singular value by power iteration on A^T A, given x -> A x and y -> A^T y.
template <class Apply, class ApplyT>
double estimate_sigma_max(Eigen::Index cols, Apply apply, ApplyT apply_t, int iterations = 40) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(cols).normalized();
  double sigma = 0.0;
  for (int k = 0; k < iterations; ++k) {
    const Eigen::VectorXd w = apply_t(apply(v));
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    sigma = std::sqrt(n);
    v = w / n;
  }
  return sigma;
}

class CholmodCommon {
 public:
  CholmodCommon() { cholmod_l_start(&cc_); }
  ~CholmodCommon() { cholmod_l_finish(&cc_); }
  CholmodCommon(const CholmodCommon&) = delete;
  CholmodCommon& operator=(const CholmodCommon&) = delete;
  cholmod_common* get() { return &cc_; }

 private:
  cholmod_common cc_;
};

/// Solves min |[A; lambda I] x - [b; 0]| with SuiteSparseQR. Q^T b is applied during the
/// factorization so the Householder vectors are never stored. `fill_column(j, push)` must
/// call push(row, value) for the entries of column j of A in increasing row order.
template <class FillColumn>
Eigen::VectorXd ridge_qr(Eigen::Index rows, Eigen::Index cols, Eigen::Index nnz, double lambda,
                         const Eigen::VectorXd& b, FillColumn fill_column) {
  CholmodCommon common;
  cholmod_common* cc = common.get();
  const auto m = static_cast<std::size_t>(rows + cols);
  const auto n = static_cast<std::size_t>(cols);
  cholmod_sparse* a = cholmod_l_allocate_sparse(m, n, static_cast<std::size_t>(nnz + cols), 1, 1, 0, CHOLMOD_REAL, cc);
  if (!a) fail(ErrorKind::NonFinite, "least squares: out of memory building the sparse matrix");
  auto* p = static_cast<SuiteSparse_long*>(a->p);
  auto* ri = static_cast<SuiteSparse_long*>(a->i);
  auto* x = static_cast<double*>(a->x);
  SuiteSparse_long at = 0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    p[j] = at;
    fill_column(j, [&](Eigen::Index r, double v) {
      ri[at] = r;
      x[at++] = v;
    });
    ri[at] = rows + j;
    x[at++] = lambda;
  }
  p[cols] = at;

  cholmod_dense* rhs = cholmod_l_zeros(m, 1, CHOLMOD_REAL, cc);
  std::copy(b.data(), b.data() + b.size(), static_cast<double*>(rhs->x));
  cholmod_dense* sol = SuiteSparseQR<double>(SPQR_ORDERING_DEFAULT, SPQR_NO_TOL, a, rhs, cc);
  cholmod_l_free_sparse(&a, cc);
  cholmod_l_free_dense(&rhs, cc);
  if (!sol || cc->status != CHOLMOD_OK) {
    if (sol) cholmod_l_free_dense(&sol, cc);
    fail(ErrorKind::NonFinite, "least squares: sparse QR failed");
  }
  Eigen::VectorXd out = Eigen::Map<const Eigen::VectorXd>(static_cast<const double*>(sol->x), cols);
  cholmod_l_free_dense(&sol, cc);
  return out;
}

inline void check_ridge_inputs(Eigen::Index rows, Eigen::Index cols, const Eigen::VectorXd& b, double rcond) {
  if (rows < 1 || cols < 1) fail(ErrorKind::InvalidCount, "least squares: empty matrix");
  if (b.size() != rows) fail(ErrorKind::DimensionMismatch, "least squares: rhs length differs from rows");
  if (!(rcond > 0.0 && rcond < 1.0)) fail(ErrorKind::ValidationError, "least squares: rcond must be in (0, 1)");
  if (!b.allFinite()) fail(ErrorKind::NonFinite, "least squares: non-finite rhs");
}

}  // namespace detail

/// Ridge-regularized sparse least squares: minimizes |A x - b|^2 + lambda^2 |x|^2 with
/// lambda = rcond * sigma_max, by sparse QR of the stacked matrix [A; lambda I]. This damps
/// the same near-null directions that a truncated SVD at rcond drops.
inline LeastSquaresReport solve_sparse_least_squares(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                                                     double rcond) {
  detail::check_ridge_inputs(a.rows(), a.cols(), b, rcond);
  for (Eigen::Index k = 0; k < a.nonZeros(); ++k) {
    if (!std::isfinite(a.valuePtr()[k])) fail(ErrorKind::NonFinite, "least squares: non-finite entries");
  }
  Eigen::SparseMatrix<double> ac = a;
  ac.makeCompressed();
  const double lambda =
      rcond * detail::estimate_sigma_max(
                  ac.cols(), [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return ac * v; },
                  [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return ac.transpose() * v; });
  LeastSquaresReport r;
  r.solution = detail::ridge_qr(ac.rows(), ac.cols(), ac.nonZeros(), lambda, b, [&](Eigen::Index j, auto&& push) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(ac, j); it; ++it) push(it.row(), it.value());
  });
  r.effective_rank = ac.cols();
  r.cutoff = lambda;
  r.method = "sparse-qr-ridge";
  detail::finish_report(r, ac * r.solution - b, b);
  return r;
}

/// Same as above, reading the columns straight from the block storage.
inline LeastSquaresReport solve_sparse_least_squares(const AssembledSystem& sys, double rcond) {
  detail::check_ridge_inputs(sys.rows, sys.cols, sys.rhs, rcond);
  const auto col_blocks = sys.blocks_by_column();
  const double lambda = rcond * detail::estimate_sigma_max(
                                    sys.cols, [&](const Eigen::VectorXd& v) { return sys.apply(v); },
                                    [&](const Eigen::VectorXd& v) { return sys.apply_transpose(v); });
  LeastSquaresReport r;
  r.solution = detail::ridge_qr(sys.rows, sys.cols, sys.nonzeros(), lambda, sys.rhs, [&](Eigen::Index j, auto&& push) {
    const auto e = static_cast<std::size_t>(
        std::upper_bound(sys.col_offsets.begin(), sys.col_offsets.end(), j) - sys.col_offsets.begin() - 1);
    for (const MatrixBlock* blk : col_blocks[e]) {
      const Eigen::Index c = j - blk->col0;
      for (Eigen::Index i = 0; i < blk->values.rows(); ++i) push(blk->row0 + i, blk->values(i, c));
    }
  });
  r.effective_rank = sys.cols;
  r.cutoff = lambda;
  r.method = "sparse-qr-ridge";
  detail::finish_report(r, sys.residual(r.solution), sys.rhs);
  return r;
}

inline LeastSquaresReport solve_least_squares(const AssembledSystem& sys, const SolverOptions& opt = {}) {
  if (!sys.all_finite()) fail(ErrorKind::NonFinite, "least squares: non-finite entries");
  const bool dense = opt.backend == SolverBackend::DenseSvd ||
                     (opt.backend == SolverBackend::Auto && sys.cols <= opt.dense_limit);
  if (dense) return solve_least_squares(sys.to_dense(), sys.rhs, opt.rcond);
  return solve_sparse_least_squares(sys, opt.rcond);
}

/// |A_c x - b_c| / |b_c| over the constraint rows only (0 when there are none).
inline double constraint_residual(const AssembledSystem& sys, const Eigen::VectorXd& x) {
  const Eigen::VectorXd res = sys.residual(x);
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < sys.rows; ++i) {
    if (sys.tags[i].kind == RowKind::Galerkin) continue;
    num += res(i) * res(i);
    den += sys.rhs(i) * sys.rhs(i);
  }
  if (num == 0.0) return 0.0;
  return std::sqrt(num) / std::max(std::sqrt(den), std::numeric_limits<double>::min());
}

}  // namespace lrnn
