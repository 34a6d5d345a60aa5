#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "lrnn/basis.hpp"
#include "lrnn/error.hpp"
#include "lrnn/mesh.hpp"
#include "lrnn/problem.hpp"
#include "lrnn/quadrature.hpp"

namespace lrnn {

/// Solved output weights together with the mesh and local spaces they belong to.
class Solution {
 public:
  Solution(std::shared_ptr<const SpaceTimeMesh> mesh, std::shared_ptr<const DiscreteSpace> space,
           const Eigen::VectorXd& coeffs)
      : mesh_(std::move(mesh)), space_(std::move(space)) {
    if (coeffs.size() != space_->total()) fail(ErrorKind::DimensionMismatch, "solution: coefficient length mismatch");
    alpha_offsets_.assign(space_->num_elements() + 1, 0);
    for (int e = 0; e < space_->num_elements(); ++e) {
      alpha_offsets_[e + 1] = alpha_offsets_[e] + space_->local(e).basis.size();
    }
    alpha_ = space_->expand(coeffs);
  }

  /// Directly from per-element output weights (length N_e * M).
  static Solution from_alpha(std::shared_ptr<const SpaceTimeMesh> mesh, std::vector<LocalRnnBasis> bases,
                             const Eigen::VectorXd& alpha) {
    std::vector<LocalSpace> spaces;
    for (auto& b : bases) spaces.push_back(raw_space(std::move(b)));
    auto space = std::make_shared<const DiscreteSpace>(std::move(spaces));
    return Solution(std::move(mesh), std::move(space), alpha);
  }

  const SpaceTimeMesh& mesh() const { return *mesh_; }
  const DiscreteSpace& space() const { return *space_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }

  Eigen::VectorXd element_alpha(int e) const {
    return alpha_.segment(alpha_offsets_[e], alpha_offsets_[e + 1] - alpha_offsets_[e]);
  }

  /// u and its derivatives at points all inside the closure of element e.
  FieldTable eval_on_element(int e, const Eigen::MatrixXd& points) const {
    return eval_linear_combination(space_->local(e).basis, element_alpha(e), points);
  }

 private:
  std::shared_ptr<const SpaceTimeMesh> mesh_;
  std::shared_ptr<const DiscreteSpace> space_;
  Eigen::VectorXd alpha_;
  std::vector<Eigen::Index> alpha_offsets_;
};

struct PointValues {
  Eigen::VectorXd value;
  Eigen::VectorXd dt;
  std::array<Eigen::VectorXd, kMaxSpaceDim> grad;
};

/// Values at arbitrary points (rows (t, x...)); each point uses its located element.
inline PointValues evaluate(const Solution& sol, const Eigen::MatrixXd& points) {
  const SpaceTimeMesh& mesh = sol.mesh();
  const int d = mesh.dim();
  if (points.cols() != d + 1) fail(ErrorKind::DimensionMismatch, "evaluate: points must have d + 1 columns");
  PointValues out;
  out.value.resize(points.rows());
  out.dt.resize(points.rows());
  for (int k = 0; k < d; ++k) out.grad[k].resize(points.rows());

  std::vector<std::vector<Eigen::Index>> by_element(mesh.num_elements());
  for (Eigen::Index q = 0; q < points.rows(); ++q) {
    const Eigen::VectorXd p = points.row(q).transpose();
    by_element[mesh.locate(std::span<const double>(p.data(), p.size())).id].push_back(q);
  }
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& idx = by_element[e];
    if (idx.empty()) continue;
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(idx.size()), d + 1);
    for (std::size_t i = 0; i < idx.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = points.row(idx[i]);
    const FieldTable t = sol.eval_on_element(e, sub);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      out.value(idx[i]) = t.val(r, 0);
      out.dt(idx[i]) = t.dt(r, 0);
      for (int k = 0; k < d; ++k) out.grad[k](idx[i]) = t.grad[k](r, 0);
    }
  }
  return out;
}

struct ErrorReport {
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;
  std::optional<double> slice_l2;
  std::optional<double> slice_h1;
  int dof_per_element = 0;
  double tau = 0.0;
  double h = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  return std::sqrt(num) / std::sqrt(std::max(den, std::numeric_limits<double>::min()));
}

}  // namespace detail

/// Relative space-time L2 error and the H1-type error built from (u_t, grad u) only.
inline ErrorReport global_errors(const Solution& sol, const JetField& exact, int quad_points) {
  if (!exact) fail(ErrorKind::ExactSolutionMissing, "global_errors needs an exact solution");
  const SpaceTimeMesh& mesh = sol.mesh();
  const int d = mesh.dim();
  double l2_num = 0.0, l2_den = 0.0, h1_num = 0.0, h1_den = 0.0;
  for (const auto& el : mesh.elements()) {
    const QuadratureRule rule = tensor_rule(quad_points, el.bounds);
    const FieldTable u = sol.eval_on_element(el.id, rule.points);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      Vec3 x{};
      for (int k = 0; k < d; ++k) x[k] = rule.points(q, k + 1);
      const Jet j = exact(rule.points(q, 0), x);
      const double w = rule.weights(q);
      const double e0 = u.val(q, 0) - j.u;
      const double et = u.dt(q, 0) - j.ut;
      l2_num += w * e0 * e0;
      l2_den += w * j.u * j.u;
      double gn = et * et, gd = j.ut * j.ut;
      for (int k = 0; k < d; ++k) {
        const double eg = u.grad[k](q, 0) - j.grad[k];
        gn += eg * eg;
        gd += j.grad[k] * j.grad[k];
      }
      h1_num += w * gn;
      h1_den += w * gd;
    }
  }
  ErrorReport r;
  r.rel_l2 = detail::ratio(l2_num, l2_den);
  r.rel_h1 = detail::ratio(h1_num, h1_den);
  r.dof_per_element = sol.space().num_elements() ? sol.space().local(0).basis.size() : 0;
  r.tau = mesh.time().tau;
  r.h = mesh.grid().h;
  return r;
}

struct SliceErrors {
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;  // full H1 norm: value plus spatial gradient
};

/// Spatial relative errors at a fixed time; elements are picked by the locate tie-break.
inline SliceErrors slice_errors(const Solution& sol, const JetField& exact, double t, int quad_points) {
  if (!exact) fail(ErrorKind::ExactSolutionMissing, "slice_errors needs an exact solution");
  const SpaceTimeMesh& mesh = sol.mesh();
  const int d = mesh.dim();
  const double t_end = mesh.time().final_time();
  if (!(t >= 0.0 && t <= t_end)) fail(ErrorKind::OutOfDomain, "slice time outside [0, T]");
  const int slab = detail::locate_interval(mesh.time().nodes, t);
  double l2_num = 0.0, l2_den = 0.0, h1_num = 0.0, h1_den = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const int e = mesh.element_id(slab, c);
    Box cut = mesh.element(e).bounds;
    cut.lo[0] = cut.hi[0] = t;
    const QuadratureRule rule = detail::embedded_tensor_rule(std::vector<int>(cut.dims, quad_points), cut);
    const FieldTable u = sol.eval_on_element(e, rule.points);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      Vec3 x{};
      for (int k = 0; k < d; ++k) x[k] = rule.points(q, k + 1);
      const Jet j = exact(t, x);
      const double w = rule.weights(q);
      const double e0 = u.val(q, 0) - j.u;
      l2_num += w * e0 * e0;
      l2_den += w * j.u * j.u;
      double gn = e0 * e0, gd = j.u * j.u;
      for (int k = 0; k < d; ++k) {
        const double eg = u.grad[k](q, 0) - j.grad[k];
        gn += eg * eg;
        gd += j.grad[k] * j.grad[k];
      }
      h1_num += w * gn;
      h1_den += w * gd;
    }
  }
  return {detail::ratio(l2_num, l2_den), detail::ratio(h1_num, h1_den)};
}

struct SampleTable {
  int dim = 1;
  Eigen::MatrixXd points;  // rows (t, x...)
  Eigen::VectorXd value;
  Eigen::VectorXd exact;      // NaN without an exact solution
  Eigen::VectorXd abs_error;  // NaN without an exact solution
};

/// Uniform tensor sampling of the closed space-time box; lexicographic order with t slowest.
inline SampleTable sample_grid(const Solution& sol, const std::vector<int>& resolution, const JetField& exact = {}) {
  const SpaceTimeMesh& mesh = sol.mesh();
  const int d = mesh.dim();
  if (static_cast<int>(resolution.size()) != d + 1) {
    fail(ErrorKind::DimensionMismatch, "sample_grid: one resolution per space-time axis expected");
  }
  for (int r : resolution) {
    if (r < 2) fail(ErrorKind::InvalidCount, "sample_grid: resolution must be >= 2");
  }
  const Box box = mesh.domain_box();
  Eigen::Index total = 1;
  for (int r : resolution) total *= r;
  SampleTable s;
  s.dim = d;
  s.points.resize(total, d + 1);
  for (Eigen::Index q = 0; q < total; ++q) {
    Eigen::Index rem = q;
    for (int a = d; a >= 0; --a) {
      const int n = resolution[a];
      const Eigen::Index i = rem % n;
      rem /= n;
      s.points(q, a) = i == n - 1 ? box.hi[a] : box.lo[a] + box.extent(a) * static_cast<double>(i) / (n - 1);
    }
  }
  s.value = evaluate(sol, s.points).value;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.exact = Eigen::VectorXd::Constant(total, nan);
  s.abs_error = Eigen::VectorXd::Constant(total, nan);
  if (exact) {
    for (Eigen::Index q = 0; q < total; ++q) {
      Vec3 x{};
      for (int k = 0; k < d; ++k) x[k] = s.points(q, k + 1);
      s.exact(q) = exact(s.points(q, 0), x).u;
      s.abs_error(q) = std::abs(s.value(q) - s.exact(q));
    }
  }
  return s;
}

inline void write_csv(std::ostream& os, const SampleTable& s) {
  static constexpr const char* names[] = {"x", "y", "z"};
  os << "t";
  for (int k = 0; k < s.dim; ++k) os << ',' << names[k];
  os << ",value,exact,abs_error\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index q = 0; q < s.points.rows(); ++q) {
    for (Eigen::Index a = 0; a < s.points.cols(); ++a) os << (a ? "," : "") << s.points(q, a);
    os << ',' << s.value(q) << ',' << s.exact(q) << ',' << s.abs_error(q) << '\n';
  }
}

}  // namespace lrnn
