#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lrnn/diagnostics.hpp"
#include "lrnn/problem.hpp"

namespace lrnn {
namespace {

TEST(Manufactured, PdeResidualAndDataAgreeWithDualNumberOracle) {
  const CheckResult r = check_manufactured(1000);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(DualNumbers, MixedThirdDerivative) {
  // u = t^2 x^3 sin(y): u_txx = 12 t x sin(y)
  auto u = [](const auto& t, const auto& x) { return t * t * x[0] * x[0] * x[0] * detail::sin_of(x[1]); };
  const Vec3 x{0.7, 0.3, 0.0};
  EXPECT_NEAR(detail::partial(u, 1.5, x, {0, 1, 1}), 12.0 * 1.5 * 0.7 * std::sin(0.3), 1e-13);
  EXPECT_NEAR(detail::partial(u, 1.5, x, {2, -1, -1}), 1.5 * 1.5 * 0.343 * std::cos(0.3), 1e-13);
  EXPECT_NEAR(detail::partial(u, 1.5, x, {-1, -1, -1}), 1.5 * 1.5 * 0.343 * std::sin(0.3), 1e-13);
}

TEST(Example2, ValuesAndData) {
  const ManufacturedCase c = example_2d();
  const DvweProblem& p = c.problem;
  const Vec3 x{0.25, 0.25, 0.0};
  EXPECT_NEAR(p.exact(0.0, x).u, 1.0, 1e-15);
  EXPECT_NEAR(p.exact(0.5, x).ut, -std::exp(-0.5), 1e-15);
  EXPECT_NEAR(p.u0(x), 1.0, 1e-15);
  EXPECT_NEAR(p.w0(x), -1.0, 1e-15);
  EXPECT_NEAR(p.g_D(0.2, Vec3{0.0, 0.4, 0.0}, Vec3{-1.0, 0.0, 0.0}), 0.0, 1e-15);
  EXPECT_EQ(c.final_time, 0.5);
}

TEST(Example3, NeumannAndRobinDataMatchExactFlux) {
  const ManufacturedCase c = example_3d();
  const DvweProblem& p = c.problem;
  EXPECT_EQ(c.boundary.facet(2, 0), BoundaryKind::Neumann);
  EXPECT_EQ(c.boundary.facet(2, 1), BoundaryKind::Robin);
  const double pi = std::numbers::pi;
  const double t = 1.3, x = 0.3, y = 0.6;
  const double s = std::sin(pi * x) * std::sin(pi * y);
  // z = 0, n = -e_z: du/dn = -t^2 pi s
  EXPECT_NEAR(p.g_N(t, Vec3{x, y, 0.0}, Vec3{0.0, 0.0, -1.0}), -t * t * pi * s, 1e-13);
  // z = 1, n = e_z: du/dn + kappa u = -t^2 pi s + 0
  EXPECT_NEAR(p.g_R(t, Vec3{x, y, 1.0}, Vec3{0.0, 0.0, 1.0}), -t * t * pi * s, 1e-13);
  EXPECT_NEAR(p.g_N_dt(t, Vec3{x, y, 0.0}, Vec3{0.0, 0.0, -1.0}), -2.0 * t * pi * s, 1e-13);
}

TEST(Example1, CoefficientsAndInitialData) {
  const ManufacturedCase c = example_1d();
  const DvweProblem& p = c.problem;
  const Vec3 x{0.4, 0.0, 0.0};
  EXPECT_EQ(p.gamma(x), 90.0);
  EXPECT_EQ(p.eta(x), 2e-7);
  EXPECT_EQ(p.xi(x), 1.47);
  EXPECT_NEAR(p.u0(x), p.exact(0.0, x).u, 1e-15);
  EXPECT_NEAR(p.w0(x), p.exact(0.0, x).ut, 1e-15);
}

TEST(ZeroCase, AllDataVanish) {
  for (int d = 1; d <= 3; ++d) {
    const ManufacturedCase c = zero_case(d);
    const Vec3 x{0.3, 0.2, 0.1}, n{1.0, 0.0, 0.0};
    EXPECT_EQ(c.problem.f(0.5, x), 0.0);
    EXPECT_EQ(c.problem.g_D(0.5, x, n), 0.0);
    EXPECT_EQ(c.problem.u0(x), 0.0);
    EXPECT_EQ(c.problem.w0(x), 0.0);
    EXPECT_EQ(c.problem.dim, d);
  }
}

}  // namespace
}  // namespace lrnn
