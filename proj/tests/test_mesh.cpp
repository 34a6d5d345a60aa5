#include <random>
#include <set>

#include <gtest/gtest.h>

#include "lrnn/diagnostics.hpp"
#include "lrnn/mesh.hpp"

namespace lrnn {
namespace {

SpaceTimeMesh mesh_2d(BoundaryPartitionSpec bc = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet)) {
  BoxDomain d;
  d.dim = 2;
  d.upper = {3.0, 1.0, 0.0};
  return build_mesh(d, 2.0, 4, {3, 2, 1}, bc);
}

TEST(Mesh, Counts) {
  const SpaceTimeMesh m = mesh_2d();
  EXPECT_EQ(m.num_elements(), 24);
  EXPECT_EQ(m.num_slabs(), 4);
  EXPECT_EQ(m.num_cells(), 6);
  // per slab: 4 * 2 faces normal to x, 3 * 3 normal to y
  EXPECT_EQ(m.spatial_faces().size(), 4u * 17u);
  EXPECT_EQ(m.temporal_interfaces().size(), 5u * 6u);
  EXPECT_NEAR(m.time().tau, 0.5, 1e-15);
  EXPECT_NEAR(m.grid().h, std::sqrt(1.0 + 0.25), 1e-15);
}

TEST(Mesh, EveryElementHasTwoFacesPerAxis) {
  const SpaceTimeMesh m = mesh_2d();
  for (const auto& el : m.elements()) {
    const auto& refs = m.element_faces(el.id);
    ASSERT_EQ(refs.size(), 4u);
    std::multiset<int> axes;
    for (const FaceRef& r : refs) {
      const SpatialFace& f = m.spatial_faces()[r.face];
      axes.insert(f.axis);
      EXPECT_EQ(r.plus ? f.plus_element : f.minus_element, el.id);
      EXPECT_EQ(f.time_index, el.time_index);
    }
    EXPECT_EQ(axes.count(0), 2u);
    EXPECT_EQ(axes.count(1), 2u);
  }
}

TEST(Mesh, FacesSeparateTheirElements) {
  const SpaceTimeMesh m = mesh_2d();
  for (const auto& f : m.spatial_faces()) {
    const Box& p = m.element(f.plus_element).bounds;
    const int a = f.axis + 1;
    EXPECT_TRUE(f.geometry.degenerate(a));
    EXPECT_EQ(f.position, f.normal_sign > 0 ? p.hi[a] : p.lo[a]);
    if (f.interior()) {
      const Box& q = m.element(f.minus_element).bounds;
      EXPECT_EQ(f.position, f.normal_sign > 0 ? q.lo[a] : q.hi[a]);
    }
  }
  for (const auto& tf : m.temporal_interfaces()) {
    if (tf.plus_element >= 0) EXPECT_EQ(m.element(tf.plus_element).bounds.hi[0], tf.time);
    if (tf.minus_element >= 0) EXPECT_EQ(m.element(tf.minus_element).bounds.lo[0], tf.time);
    EXPECT_EQ(tf.kind == TemporalKind::Initial, tf.plus_element < 0);
    EXPECT_EQ(tf.kind == TemporalKind::Final, tf.minus_element < 0);
  }
}

TEST(Mesh, BoundaryKindsFollowFacets) {
  BoundaryPartitionSpec bc = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet);
  bc.set(1, 0, BoundaryKind::Neumann).set(1, 1, BoundaryKind::Robin);
  const SpaceTimeMesh m = mesh_2d(bc);
  int neumann = 0, robin = 0;
  for (const auto& f : m.spatial_faces()) {
    if (f.kind == FaceKind::Neumann) {
      ++neumann;
      EXPECT_EQ(f.axis, 1);
      EXPECT_EQ(f.position, 0.0);
      EXPECT_EQ(f.normal_sign, -1);
    }
    if (f.kind == FaceKind::Robin) {
      ++robin;
      EXPECT_EQ(f.position, 1.0);
      EXPECT_EQ(f.normal_sign, 1);
    }
  }
  EXPECT_EQ(neumann, 12);
  EXPECT_EQ(robin, 12);
}

TEST(Mesh, LocateResolvesInterfacesToLowerElement) {
  const SpaceTimeMesh m = mesh_2d();
  const std::array<double, 3> p{0.5, 1.0, 0.5};
  const auto& el = m.locate(p);
  EXPECT_EQ(el.time_index, 0);
  EXPECT_EQ(el.cell_index[0], 0);
  EXPECT_EQ(el.cell_index[1], 0);
  const std::array<double, 3> q{1.9, 2.9, 0.9};
  EXPECT_EQ(m.locate(q).id, m.num_elements() - 1);
  const std::array<double, 3> out{2.5, 0.0, 0.0};
  EXPECT_THROW(m.locate(out), Error);
}

TEST(Mesh, RejectsInvalidInput) {
  BoxDomain d = BoxDomain::unit(2);
  const auto bc = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet);
  EXPECT_THROW(build_mesh(d, 1.0, 1, {0, 1, 1}, bc), Error);
  d.upper[1] = 0.0;
  EXPECT_THROW(build_mesh(d, 1.0, 1, {1, 1, 1}, bc), Error);
  d.dim = 4;
  EXPECT_THROW(build_mesh(d, 1.0, 1, {1, 1, 1}, bc), Error);
}

TEST(Traces, SpatialJumpAndAverage) {
  const std::array<double, 2> n{0.0, -1.0};
  const ScalarTrace s = jump_average_spatial(3.0, 1.0, n);
  EXPECT_EQ(s.jump[1], -2.0);
  EXPECT_EQ(s.average, 2.0);
  const std::array<double, 2> qp{1.0, 4.0}, qm{0.0, 2.0};
  const VectorTrace v = jump_average_spatial(qp, qm, n);
  EXPECT_EQ(v.jump, -2.0);
  EXPECT_EQ(v.average[1], 3.0);
  const VectorTrace b = jump_average_boundary(qp, n);
  EXPECT_EQ(b.jump, -4.0);
}

TEST(Traces, TemporalConventions) {
  EXPECT_EQ(jump_average_temporal(0.0, 2.0, TemporalKind::Initial).jump, -2.0);
  EXPECT_EQ(jump_average_temporal(5.0, 0.0, TemporalKind::Final).jump, 5.0);
  const TemporalTrace t = jump_average_temporal(5.0, 2.0, TemporalKind::Interior);
  EXPECT_EQ(t.jump, 3.0);
  EXPECT_EQ(t.average, 3.5);
}

TEST(Traces, ContinuousFieldHasNoInteriorJumps) {
  const std::array<double, 3> n{1.0, 0.0, 0.0};
  const ScalarTrace s = jump_average_spatial(0.7, 0.7, n);
  for (double j : s.jump) EXPECT_EQ(j, 0.0);
  EXPECT_EQ(jump_average_temporal(0.7, 0.7, TemporalKind::Interior).jump, 0.0);
}

TEST(Identities, ElementwiseMatchesFacewise) {
  const CheckResult r = check_identities(10, 10);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Identities, HoldOnAnisotropicMixedBoundaryMesh) {
  std::mt19937_64 rng(3);
  BoundaryPartitionSpec bc = BoundaryPartitionSpec::all(BoundaryKind::Robin);
  bc.set(0, 0, BoundaryKind::Neumann);
  BoxDomain d;
  d.dim = 2;
  d.lower = {-1.0, 0.0, 0.0};
  d.upper = {2.0, 0.25, 0.0};
  const SpaceTimeMesh m = build_mesh(d, 3.0, 3, {4, 1, 1}, bc);
  const detail::PiecewiseField v(m, 1, rng), q(m, 2, rng);
  const IdentityDiscrepancy dsc = identity_discrepancy(m, v, q, 5);
  EXPECT_LT(dsc.spatial, 1e-12);
  EXPECT_LT(dsc.temporal, 1e-12);
}

}  // namespace
}  // namespace lrnn
