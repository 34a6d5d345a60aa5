#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lrnn/error.hpp"
#include "lrnn/geometry.hpp"
#include "lrnn/mesh.hpp"

namespace lrnn {

/// Points are stored one per row.
struct QuadratureRule {
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
  int dims() const { return static_cast<int>(points.cols()); }
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
inline QuadratureRule gauss_1d(int n) {
  if (n < 1 || n > 64) fail(ErrorKind::UnsupportedCount, "gauss_1d supports 1..64 points");
  QuadratureRule rule;
  rule.points.resize(n, 1);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    // P_n(x) and P_n'(x) by the three-term recurrence
    auto legendre = [n](double z) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      return std::pair{p1, n * (z * p1 - p0) / (z * z - 1.0)};
    };
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, dpn] = legendre(x);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points(i, 0) = -x;
    rule.points(n - 1 - i, 0) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.points(n / 2, 0) = 0.0;
  return rule;
}

namespace detail {

// Tensor rule over the non-degenerate axes of `box`; degenerate axes are held at box.lo.
// Axis 0 varies slowest.
inline QuadratureRule embedded_tensor_rule(const std::vector<int>& n_per_axis, const Box& box) {
  std::vector<QuadratureRule> rules(box.dims);
  Eigen::Index total = 1;
  for (int a = 0; a < box.dims; ++a) {
    if (box.degenerate(a)) continue;
    rules[a] = gauss_1d(n_per_axis[a]);
    total *= rules[a].size();
  }
  QuadratureRule out;
  out.points.resize(total, box.dims);
  out.weights.resize(total);
  for (Eigen::Index q = 0; q < total; ++q) {
    Eigen::Index rem = q;
    double w = 1.0;
    for (int a = box.dims - 1; a >= 0; --a) {
      if (box.degenerate(a)) {
        out.points(q, a) = box.lo[a];
        continue;
      }
      const Eigen::Index n = rules[a].size();
      const Eigen::Index i = rem % n;
      rem /= n;
      const double half = 0.5 * box.extent(a);
      out.points(q, a) = box.lo[a] + half * (rules[a].points(i, 0) + 1.0);
      w *= half * rules[a].weights(i);
    }
    out.weights(q) = w;
  }
  return out;
}

}  // namespace detail

/// Affinely mapped tensor Gauss-Legendre rule on a non-degenerate box.
inline QuadratureRule tensor_rule(const std::vector<int>& n_per_axis, const Box& box) {
  if (static_cast<int>(n_per_axis.size()) != box.dims) {
    fail(ErrorKind::DimensionMismatch, "tensor_rule: one point count per axis expected");
  }
  for (int a = 0; a < box.dims; ++a) {
    if (box.degenerate(a)) fail(ErrorKind::DegenerateBox, "tensor_rule: box has zero extent");
  }
  return detail::embedded_tensor_rule(n_per_axis, box);
}

inline QuadratureRule tensor_rule(int n, const Box& box) {
  return tensor_rule(std::vector<int>(box.dims, n), box);
}

/// Rule over slab x (d-1)-face; points carry all d + 1 space-time coordinates.
inline QuadratureRule face_rule(const SpatialFace& face, int n) {
  return detail::embedded_tensor_rule(std::vector<int>(face.geometry.dims, n), face.geometry);
}

/// Rule over {t_k} x K; points carry all d + 1 space-time coordinates.
inline QuadratureRule face_rule(const TemporalInterface& face, int n) {
  return detail::embedded_tensor_rule(std::vector<int>(face.geometry.dims, n), face.geometry);
}

/// Smallest per-axis count whose tensor product holds at least `total` points in `dims` axes.
inline int per_axis_count(int total, int dims) {
  if (total < 1) fail(ErrorKind::InvalidCount, "point count must be >= 1");
  int n = 1;
  while (true) {
    long long p = 1;
    for (int i = 0; i < dims; ++i) p *= n;
    if (p >= total) return n;
    ++n;
  }
}

}  // namespace lrnn
