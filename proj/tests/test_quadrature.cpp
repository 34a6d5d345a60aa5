#include <cmath>

#include <gtest/gtest.h>

#include "lrnn/diagnostics.hpp"
#include "lrnn/quadrature.hpp"

namespace lrnn {
namespace {

TEST(GaussLegendre, TwoAndThreePointNodes) {
  const QuadratureRule r2 = gauss_1d(2);
  EXPECT_NEAR(r2.points(0, 0), -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.points(1, 0), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.weights(0), 1.0, 1e-15);

  const QuadratureRule r3 = gauss_1d(3);
  EXPECT_NEAR(r3.points(0, 0), -std::sqrt(0.6), 1e-15);
  EXPECT_EQ(r3.points(1, 0), 0.0);
  EXPECT_NEAR(r3.weights(0), 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(r3.weights(1), 8.0 / 9.0, 1e-15);
}

TEST(GaussLegendre, NodesAscendingAndWeightsSumToTwo) {
  for (int n = 1; n <= 64; ++n) {
    const QuadratureRule r = gauss_1d(n);
    EXPECT_NEAR(r.weights.sum(), 2.0, 1e-13) << n;
    for (Eigen::Index i = 1; i < r.size(); ++i) EXPECT_LT(r.points(i - 1, 0), r.points(i, 0)) << n;
    EXPECT_GT(r.weights.minCoeff(), 0.0) << n;
  }
}

TEST(GaussLegendre, RejectsUnsupportedCounts) {
  EXPECT_THROW(gauss_1d(0), Error);
  EXPECT_THROW(gauss_1d(65), Error);
}

TEST(GaussLegendre, ExactForDegreeTwoNMinusOne) {
  const CheckResult r = check_quadrature();
  EXPECT_TRUE(r.passed) << r.detail << " " << r.value;
}

TEST(TensorRule, AffineInvarianceOnBox) {
  Box b;
  b.dims = 3;
  b.lo = {0.5, -1.0, 2.0, 0.0};
  b.hi = {1.5, 0.5, 2.25, 0.0};
  const QuadratureRule r = tensor_rule(4, b);
  EXPECT_EQ(r.size(), 64);
  EXPECT_NEAR(r.weights.sum(), b.measure(), 1e-14);
  // int t x^2 y^3 over the box factorizes
  double num = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    num += r.weights(i) * r.points(i, 0) * std::pow(r.points(i, 1), 2) * std::pow(r.points(i, 2), 3);
  }
  const double it = (1.5 * 1.5 - 0.5 * 0.5) / 2.0;
  const double ix = (std::pow(0.5, 3) - std::pow(-1.0, 3)) / 3.0;
  const double iy = (std::pow(2.25, 4) - std::pow(2.0, 4)) / 4.0;
  EXPECT_NEAR(num, it * ix * iy, 1e-13);
}

TEST(TensorRule, RejectsDegenerateBox) {
  Box b;
  b.dims = 2;
  b.hi = {1.0, 0.0};
  EXPECT_THROW(tensor_rule(3, b), Error);
}

TEST(FaceRule, HoldsFixedCoordinateAndFaceMeasure) {
  Box face;
  face.dims = 3;
  face.lo = {0.0, 0.25, 0.0, 0.0};
  face.hi = {0.5, 0.25, 2.0, 0.0};
  const QuadratureRule r = detail::embedded_tensor_rule({5, 5, 5}, face);
  EXPECT_EQ(r.size(), 25);
  EXPECT_NEAR(r.weights.sum(), 1.0, 1e-14);
  for (Eigen::Index i = 0; i < r.size(); ++i) EXPECT_EQ(r.points(i, 1), 0.25);
}

TEST(PerAxisCount, RoundsUp) {
  EXPECT_EQ(per_axis_count(13, 1), 13);
  EXPECT_EQ(per_axis_count(39, 2), 7);
  EXPECT_EQ(per_axis_count(36, 2), 6);
  EXPECT_EQ(per_axis_count(41, 3), 4);
  EXPECT_THROW(per_axis_count(0, 2), Error);
}

}  // namespace
}  // namespace lrnn
