#include <memory>
#include <sstream>

#include <gtest/gtest.h>

#include "lrnn/postproc.hpp"

namespace lrnn {
namespace {

struct Fixture {
  ManufacturedCase mc = example_2d();
  std::shared_ptr<SpaceTimeMesh> mesh;
  std::vector<LocalRnnBasis> bases;

  explicit Fixture(int neurons) {
    mesh = std::make_shared<SpaceTimeMesh>(build_mesh(mc.domain, mc.final_time, 2, {2, 2, 1}, mc.boundary));
    RnnConfig rc;
    rc.neurons = neurons;
    rc.init_range = 0.6;
    bases = build_local_bases(*mesh, rc);
  }

  /// Per-element least-squares fit of the exact values at Gauss points.
  Eigen::VectorXd fitted_alpha() const {
    Eigen::VectorXd alpha(static_cast<Eigen::Index>(bases.size()) * bases[0].size());
    for (const auto& el : mesh->elements()) {
      const QuadratureRule r = tensor_rule(10, el.bounds);
      const Eigen::MatrixXd phi = eval_basis(bases[el.id], r.points).val;
      Eigen::VectorXd u(r.size());
      for (Eigen::Index q = 0; q < r.size(); ++q) u(q) = mc.problem.exact(r.points(q, 0), {r.points(q, 1), r.points(q, 2), 0.0}).u;
      alpha.segment(el.id * bases[0].size(), bases[0].size()) = phi.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(u);
    }
    return alpha;
  }
};

TEST(Errors, ZeroSolutionHasUnitRelativeError) {
  Fixture f(10);
  const Solution sol = Solution::from_alpha(f.mesh, f.bases, Eigen::VectorXd::Zero(80));
  const ErrorReport e = global_errors(sol, f.mc.problem.exact, 8);
  EXPECT_NEAR(e.rel_l2, 1.0, 1e-14);
  EXPECT_NEAR(e.rel_h1, 1.0, 1e-14);
  EXPECT_EQ(e.dof_per_element, 10);
  EXPECT_NEAR(e.tau, 0.25, 1e-15);
  const SliceErrors s = slice_errors(sol, f.mc.problem.exact, 0.5, 8);
  EXPECT_NEAR(s.rel_l2, 1.0, 1e-14);
  EXPECT_THROW(slice_errors(sol, f.mc.problem.exact, 0.6, 8), Error);
}

TEST(Errors, FittedSolutionIsAccurate) {
  Fixture f(120);
  const Solution sol = Solution::from_alpha(f.mesh, f.bases, f.fitted_alpha());
  const ErrorReport e = global_errors(sol, f.mc.problem.exact, 12);
  EXPECT_LT(e.rel_l2, 5e-3);
  EXPECT_LT(e.rel_h1, 5e-2);
  EXPECT_LT(slice_errors(sol, f.mc.problem.exact, 0.5, 12).rel_l2, 1e-2);
}

TEST(Errors, ExactSolutionAgainstItselfIsZero) {
  Fixture f(4);
  const Solution sol = Solution::from_alpha(f.mesh, f.bases, Eigen::VectorXd::Zero(32));
  const JetField zero = [](double, const Vec3&) { return Jet{}; };
  const ErrorReport e = global_errors(sol, zero, 4);
  EXPECT_EQ(e.rel_l2, 0.0);
  EXPECT_THROW(global_errors(sol, JetField{}, 4), Error);
}

TEST(Evaluate, UsesTheLocatedElement) {
  Fixture f(6);
  Eigen::VectorXd alpha = Eigen::VectorXd::LinSpaced(48, -1.0, 1.0);
  const Solution sol = Solution::from_alpha(f.mesh, f.bases, alpha);
  Eigen::MatrixXd p(3, 3);
  p << 0.1, 0.2, 0.7, 0.4, 0.9, 0.9, 0.25, 0.5, 0.5;
  const PointValues v = evaluate(sol, p);
  for (Eigen::Index q = 0; q < 3; ++q) {
    const Eigen::VectorXd pt = p.row(q).transpose();
    const int e = f.mesh->locate(std::span<const double>(pt.data(), 3)).id;
    EXPECT_DOUBLE_EQ(v.value(q), sol.eval_on_element(e, p.row(q)).val(0, 0));
  }
  EXPECT_THROW(evaluate(sol, Eigen::MatrixXd::Zero(1, 2)), Error);
}

TEST(Samples, GridLayoutAndCsv) {
  Fixture f(4);
  const Solution sol = Solution::from_alpha(f.mesh, f.bases, Eigen::VectorXd::Zero(32));
  const SampleTable s = sample_grid(sol, {2, 3, 4}, f.mc.problem.exact);
  ASSERT_EQ(s.points.rows(), 24);
  EXPECT_EQ(s.points(0, 0), 0.0);
  EXPECT_EQ(s.points(23, 0), 0.5);
  EXPECT_EQ(s.points(1, 2), 1.0 / 3.0);
  EXPECT_EQ(s.points(4, 1), 0.5);
  EXPECT_NEAR(s.abs_error(5), std::abs(s.exact(5)), 1e-15);
  std::ostringstream os;
  write_csv(os, s);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "t,x,y,value,exact,abs_error");
  EXPECT_THROW(sample_grid(sol, {2, 3}), Error);
  EXPECT_THROW(sample_grid(sol, {2, 1, 4}), Error);
}

TEST(SolutionCtor, RejectsWrongLength) {
  Fixture f(4);
  EXPECT_THROW(Solution::from_alpha(f.mesh, f.bases, Eigen::VectorXd::Zero(5)), Error);
}

}  // namespace
}  // namespace lrnn
