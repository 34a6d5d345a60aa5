#include <algorithm>
#include <memory>

#include <gtest/gtest.h>

#include "lrnn/assembly.hpp"
#include "lrnn/diagnostics.hpp"

namespace lrnn {
namespace {

DiscreteSpace raw_space_for(const SpaceTimeMesh& m, int neurons, double r = 1.0, std::uint64_t seed = 1) {
  RnnConfig rc;
  rc.neurons = neurons;
  rc.init_range = r;
  rc.seed = seed;
  return build_space(m, build_local_bases(m, rc), 0.0, 1).space;
}

MethodConfig small_cfg(Scheme s) {
  MethodConfig c;
  c.scheme = s;
  c.quad_points = 6;
  c.beta1 = c.beta2 = 3.0;
  c.colloc_spatial = c.colloc_temporal = c.colloc_initial = c.colloc_dirichlet = 5;
  return c;
}

TEST(Assembly, SingleElementVolumeBlockByHand) {
  const ManufacturedCase mc = example_1d();
  const SpaceTimeMesh m = build_mesh(mc.domain, 1.0, 1, {1, 1, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m, 4);
  MethodConfig cfg = small_cfg(Scheme::LrnnDg);
  cfg.terms = {true, false, false, false, false, false};
  const AssembledSystem sys = assemble(m, s, mc.problem, cfg);
  ASSERT_EQ(sys.rows, 4);
  ASSERT_EQ(sys.cols, 4);
  EXPECT_EQ(sys.rhs.norm(), 0.0);

  // int gamma v u_t - v_t u_t + (eta u_tx + xi^2 u_x) v_x with the same Gauss rule
  const QuadratureRule r = tensor_rule(6, m.element(0).bounds);
  const FieldTable t = eval_basis(s.local(0).basis, r.points);
  const double gamma = 90.0, eta = 2e-7, xi2 = 1.47 * 1.47;
  const Eigen::MatrixXd a = sys.to_dense();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = 0.0;
      for (Eigen::Index q = 0; q < r.size(); ++q) {
        v += r.weights(q) * (gamma * t.val(q, i) * t.dt(q, j) - t.dt(q, i) * t.dt(q, j) +
                             (eta * t.grad_dt[0](q, j) + xi2 * t.grad[0](q, j)) * t.grad[0](q, i));
      }
      EXPECT_NEAR(a(i, j), v, 1e-12 * std::max(1.0, std::abs(v)));
    }
  }
}

TEST(Assembly, XiSquaredBlockIsSymmetric) {
  // only -v_t u_t + xi^2 grad u . grad v and the symmetric interior penalty faces remain
  DvweProblem p = example_2d().problem;
  p.gamma = detail::constant(0.0);
  p.eta = detail::constant(0.0);
  const SpaceTimeMesh m = build_mesh(BoxDomain::unit(2), 0.5, 2, {2, 2, 1}, BoundaryPartitionSpec::all(BoundaryKind::Dirichlet));
  const DiscreteSpace s = raw_space_for(m, 6);
  MethodConfig cfg = small_cfg(Scheme::LrnnDg);
  cfg.terms.temporal = false;
  cfg.terms.spatial_eta = false;
  const Eigen::MatrixXd a = assemble(m, s, p, cfg).to_dense();
  EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
}

TEST(Assembly, GalerkinBlockCouplesOnlyNeighbours) {
  const ManufacturedCase mc = example_2d();
  const SpaceTimeMesh m = build_mesh(mc.domain, mc.final_time, 2, {3, 3, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m, 3);
  const AssembledSystem sys = assemble(m, s, mc.problem, small_cfg(Scheme::LrnnDg));
  EXPECT_EQ(sys.rows, sys.cols);
  std::vector<Eigen::Index> k(m.num_elements(), 3);
  EXPECT_EQ(static_cast<double>(sys.nonzeros()), galerkin_nonzeros(m, k));
  EXPECT_TRUE(sys.all_finite());
}

TEST(Assembly, ConstraintRowCounts) {
  const ManufacturedCase mc = example_1d();
  const SpaceTimeMesh m = build_mesh(mc.domain, 1.0, 2, {2, 1, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m, 7);
  const Eigen::Index g = s.total();
  // 2 interior spatial faces, 2 interior slab interfaces, 2 initial cells, 4 Dirichlet faces; 5 points each
  const AssembledSystem c0 = assemble(m, s, mc.problem, small_cfg(Scheme::LrnnC0Dg));
  EXPECT_EQ(c0.galerkin_rows(), g);
  EXPECT_EQ(c0.rows, g + 5 * 10);
  const AssembledSystem c1 = assemble(m, s, mc.problem, small_cfg(Scheme::LrnnC1Dg));
  EXPECT_EQ(c1.rows, g + 5 * 14);
  const AssembledSystem dg = assemble(m, s, mc.problem, small_cfg(Scheme::LrnnDg));
  EXPECT_EQ(dg.rows, g);
  int initial = 0;
  for (const RowTag& t : c0.tags) initial += t.kind == RowKind::ConstraintInitial;
  EXPECT_EQ(initial, 10);
}

TEST(Assembly, C0SpatialJumpRow) {
  const ManufacturedCase mc = example_2d();
  const SpaceTimeMesh m = build_mesh(mc.domain, mc.final_time, 1, {2, 1, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m, 5);
  MethodConfig cfg = small_cfg(Scheme::LrnnC0Dg);
  cfg.constraint_weight = 2.0;
  const AssembledSystem sys = assemble(m, s, mc.problem, cfg);
  const Eigen::MatrixXd a = sys.to_dense();
  const auto it = std::find_if(sys.tags.begin(), sys.tags.end(),
                               [](const RowTag& t) { return t.kind == RowKind::ConstraintSpatialC0; });
  ASSERT_NE(it, sys.tags.end());
  const Eigen::Index row = it - sys.tags.begin();
  const SpatialFace& f = m.spatial_faces()[it->owner];
  ASSERT_TRUE(f.interior());
  const QuadratureRule pts = detail::collocation_rule(f.geometry, cfg.colloc_spatial);
  const Eigen::MatrixXd p = pts.points.row(it->index);
  const Eigen::RowVectorXd vp = eval_basis(s.local(f.plus_element).basis, p).val.row(0);
  const Eigen::RowVectorXd vm = eval_basis(s.local(f.minus_element).basis, p).val.row(0);
  EXPECT_LT((a.row(row).segment(s.offset(f.plus_element), 5) - 2.0 * vp).norm(), 1e-14);
  EXPECT_LT((a.row(row).segment(s.offset(f.minus_element), 5) + 2.0 * vm).norm(), 1e-14);
  EXPECT_EQ(sys.rhs(row), 0.0);
  // exactly two element blocks on the row
  EXPECT_NEAR(a.row(row).cwiseAbs().sum(), 2.0 * (vp.cwiseAbs().sum() + vm.cwiseAbs().sum()), 1e-13);
}

TEST(Assembly, C1TemporalDerivativeRow) {
  const ManufacturedCase mc = example_1d();
  const SpaceTimeMesh m = build_mesh(mc.domain, 1.0, 2, {1, 1, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m, 4);
  const AssembledSystem sys = assemble(m, s, mc.problem, small_cfg(Scheme::LrnnC1Dg));
  const Eigen::MatrixXd a = sys.to_dense();
  const auto it = std::find_if(sys.tags.begin(), sys.tags.end(),
                               [](const RowTag& t) { return t.kind == RowKind::ConstraintTemporalC1; });
  ASSERT_NE(it, sys.tags.end());
  const Eigen::Index row = it - sys.tags.begin();
  const TemporalInterface& tf = m.temporal_interfaces()[it->owner];
  const Eigen::MatrixXd p = detail::collocation_rule(tf.geometry, 5).points.row(it->index);
  EXPECT_EQ(p(0, 0), 0.5);
  // later slab minus earlier slab
  const Eigen::RowVectorXd later = eval_basis(s.local(tf.minus_element).basis, p).dt.row(0);
  const Eigen::RowVectorXd earlier = eval_basis(s.local(tf.plus_element).basis, p).dt.row(0);
  EXPECT_LT((a.row(row).segment(s.offset(tf.minus_element), 4) - later).norm(), 1e-14);
  EXPECT_LT((a.row(row).segment(s.offset(tf.plus_element), 4) + earlier).norm(), 1e-14);
}

TEST(Consistency, ExactSolutionSatisfiesGalerkinRows) {
  const CheckResult r = check_consistency({5, 10, 20});
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Consistency, HoldsForEverySchemeAndMixedBoundaries) {
  for (const auto& mc : {example_2d(), example_3d()}) {
    const SpaceTimeMesh m = build_mesh(mc.domain, mc.final_time, 2, {2, 2, 2}, mc.boundary);
    const DiscreteSpace s = raw_space_for(m, 8, 0.5);
    for (Scheme sc : {Scheme::LrnnDg, Scheme::LrnnC0Dg, Scheme::LrnnC1Dg}) {
      MethodConfig cfg = small_cfg(sc);
      cfg.quad_points = 14;
      const double res = consistency_residual(m, s, mc.problem, cfg).max_normalized;
      EXPECT_LT(res, 1e-9) << mc.name << " " << to_string(sc);
    }
  }
}

TEST(Consistency, LiteralInitialVelocitySignBreaksIt) {
  const ManufacturedCase mc = example_2d();
  const SpaceTimeMesh m = build_mesh(mc.domain, mc.final_time, 2, {2, 2, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m, 8, 0.5);
  MethodConfig cfg = small_cfg(Scheme::LrnnDg);
  cfg.quad_points = 14;
  cfg.literal_w0_sign = true;
  EXPECT_GT(consistency_residual(m, s, mc.problem, cfg).max_normalized, 1e-3);
}

TEST(Assembly, RejectsMismatchedInputs) {
  const ManufacturedCase mc = example_2d();
  const SpaceTimeMesh m1 = build_mesh(example_1d().domain, 1.0, 1, {2, 1, 1}, mc.boundary);
  const DiscreteSpace s = raw_space_for(m1, 3);
  EXPECT_THROW(assemble(m1, s, mc.problem, small_cfg(Scheme::LrnnDg)), Error);
  MethodConfig bad = small_cfg(Scheme::LrnnDg);
  bad.quad_points = 0;
  EXPECT_THROW(assemble(m1, s, example_1d().problem, bad), Error);
}

}  // namespace
}  // namespace lrnn
