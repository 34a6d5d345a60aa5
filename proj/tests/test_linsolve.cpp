#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "lrnn/assembly.hpp"
#include "lrnn/diagnostics.hpp"
#include "lrnn/linsolve.hpp"
#include "lrnn/postproc.hpp"

namespace lrnn {
namespace {

Eigen::MatrixXd random_matrix(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = nd(rng);
  return a;
}

TEST(DenseLeastSquares, MatchesPseudoInverseAndProperties) {
  const CheckResult r = check_least_squares(100);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(DenseLeastSquares, SquareNonsingularIsExact) {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 3.0;
  const LeastSquaresReport r = solve_least_squares(a, Eigen::Vector2d(3.0, 5.0));
  EXPECT_NEAR(r.solution(0), 0.8, 1e-15);
  EXPECT_NEAR(r.solution(1), 1.4, 1e-15);
  EXPECT_EQ(r.effective_rank, 2);
  EXPECT_LT(r.relative_residual, 1e-15);
}

TEST(DenseLeastSquares, RankOneMinimumNorm) {
  // x + y = 2 (twice): minimum-norm solution is (1, 1)
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 1.0, 1.0, 1.0;
  const LeastSquaresReport r = solve_least_squares(a, Eigen::Vector2d(2.0, 2.0));
  EXPECT_NEAR(r.solution(0), 1.0, 1e-14);
  EXPECT_NEAR(r.solution(1), 1.0, 1e-14);
  EXPECT_EQ(r.effective_rank, 1);
}

TEST(DenseLeastSquares, RejectsBadInput) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_THROW(solve_least_squares(a, Eigen::VectorXd::Ones(2)), Error);
  EXPECT_THROW(solve_least_squares(a, Eigen::VectorXd::Ones(3), 0.0), Error);
  Eigen::MatrixXd n = a;
  n(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(solve_least_squares(n, Eigen::VectorXd::Ones(3)), Error);
}

TEST(SparseRidge, AgreesWithDenseOnWellConditionedSystems) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd a = random_matrix(30, 20, rng);
    const Eigen::VectorXd b = random_matrix(30, 1, rng);
    const Eigen::VectorXd xd = solve_least_squares(a, b).solution;
    const LeastSquaresReport rs = solve_sparse_least_squares(a.sparseView(), b, 1e-12);
    EXPECT_LT((rs.solution - xd).norm(), 1e-9 * xd.norm());
    EXPECT_EQ(rs.method, "sparse-qr-ridge");
  }
}

TEST(SparseRidge, ApproachesMinimumNormOnRankDeficientSystems) {
  std::mt19937_64 rng(6);
  const Eigen::MatrixXd a = random_matrix(25, 6, rng) * random_matrix(6, 15, rng);  // rank 6
  const Eigen::VectorXd b = random_matrix(25, 1, rng);
  const Eigen::VectorXd xd = solve_least_squares(a, b, 1e-10).solution;
  // the ridge weight must dominate the round-off singular values for the null space to stay empty
  const Eigen::VectorXd xs = solve_sparse_least_squares(a.sparseView(), b, 1e-4).solution;
  EXPECT_LT((xs - xd).norm(), 1e-4 * xd.norm());
  // normal equations hold up to the ridge term
  EXPECT_LT((a.transpose() * (a * xs - b)).norm(), 1e-6 * a.norm() * b.norm());
}

TEST(SparseRidge, BlockSystemMatchesSparseMatrixPath) {
  const ManufacturedCase mc = example_2d();
  const SpaceTimeMesh m = build_mesh(mc.domain, mc.final_time, 2, {2, 2, 1}, mc.boundary);
  RnnConfig rc;
  rc.neurons = 30;
  rc.init_range = 0.6;
  const DiscreteSpace s = build_space(m, build_local_bases(m, rc), 1e-8, 9).space;
  MethodConfig cfg;
  cfg.scheme = Scheme::LrnnC0Dg;
  cfg.quad_points = 9;
  cfg.colloc_spatial = cfg.colloc_temporal = cfg.colloc_initial = cfg.colloc_dirichlet = 16;
  const AssembledSystem sys = assemble(m, s, mc.problem, cfg);
  const LeastSquaresReport a = solve_sparse_least_squares(sys, 1e-12);
  const LeastSquaresReport b = solve_sparse_least_squares(sys.to_sparse(), sys.rhs, 1e-12);
  EXPECT_LT((a.solution - b.solution).norm(), 1e-8 * b.solution.norm());
  EXPECT_NEAR(a.cutoff, b.cutoff, 1e-10 * b.cutoff);
}

TEST(SparseRidge, DenseAndSparseBackendsGiveSimilarErrors) {
  const ManufacturedCase mc = example_2d();
  auto mesh = std::make_shared<SpaceTimeMesh>(build_mesh(mc.domain, mc.final_time, 2, {2, 2, 1}, mc.boundary));
  RnnConfig rc;
  rc.neurons = 80;
  rc.init_range = 0.6;
  auto s = std::make_shared<DiscreteSpace>(build_space(*mesh, build_local_bases(*mesh, rc), 1e-8, 9).space);
  MethodConfig cfg;
  cfg.quad_points = 9;
  cfg.beta1 = cfg.beta2 = 5.0;
  const AssembledSystem sys = assemble(*mesh, *s, mc.problem, cfg);
  SolverOptions dense, sparse;
  dense.backend = SolverBackend::DenseSvd;
  sparse.backend = SolverBackend::SparseQr;
  const double ed = global_errors(Solution(mesh, s, solve_least_squares(sys, dense).solution), mc.problem.exact, 9).rel_l2;
  const double es = global_errors(Solution(mesh, s, solve_least_squares(sys, sparse).solution), mc.problem.exact, 9).rel_l2;
  EXPECT_LT(ed, 0.5);
  EXPECT_LT(es, 3.0 * ed);
  EXPECT_LT(ed, 3.0 * es);
}

TEST(ConstraintResidual, ZeroWithoutConstraintRowsAndForExactFit) {
  AssembledSystem sys;
  sys.rows = 2;
  sys.cols = 2;
  sys.col_offsets = {0, 2};
  sys.blocks.push_back({0, 0, Eigen::MatrixXd::Identity(2, 2)});
  sys.rhs = Eigen::Vector2d(1.0, 2.0);
  sys.tags = {{RowKind::Galerkin, 0, 0}, {RowKind::ConstraintDirichlet, 0, 0}};
  EXPECT_EQ(constraint_residual(sys, Eigen::Vector2d(1.0, 2.0)), 0.0);
  EXPECT_NEAR(constraint_residual(sys, Eigen::Vector2d(1.0, 1.0)), 0.5, 1e-15);
}

}  // namespace
}  // namespace lrnn
