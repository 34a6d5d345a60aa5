#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "lrnn/error.hpp"
#include "lrnn/mesh.hpp"
#include "lrnn/quadrature.hpp"

namespace lrnn {

enum class Activation { Tanh, Sin, Gaussian };

/// How (t, x) is fed to an element's hidden layer.
///   Global          raw space-time coordinates
///   ElementLocal    affine map of the element onto [0, 1]^{d+1}
///   ElementCentered affine map of the element onto [-1, 1]^{d+1}
enum class InputScaling { Global, ElementLocal, ElementCentered };

struct RnnConfig {
  int neurons = 80;  // M, output weights per element
  double init_range = 1.0;  // r, hidden parameters ~ U(-r, r)
  Activation activation = Activation::Tanh;
  std::uint64_t seed = 1;
  InputScaling input_scaling = InputScaling::ElementCentered;
};

/// Values and first/mixed derivatives of a set of functions at a set of points.
/// Each matrix is (points x functions); grad[k] is d/dx_k, grad_dt[k] is d2/(dt dx_k).
struct FieldTable {
  Eigen::MatrixXd val;
  Eigen::MatrixXd dt;
  std::array<Eigen::MatrixXd, kMaxSpaceDim> grad;
  std::array<Eigen::MatrixXd, kMaxSpaceDim> grad_dt;

  Eigen::Index points() const { return val.rows(); }
  Eigen::Index cols() const { return val.cols(); }

  FieldTable times(const Eigen::MatrixXd& right, int dim) const {
    FieldTable out;
    out.val.noalias() = val * right;
    out.dt.noalias() = dt * right;
    for (int k = 0; k < dim; ++k) {
      out.grad[k].noalias() = grad[k] * right;
      out.grad_dt[k].noalias() = grad_dt[k] * right;
    }
    return out;
  }
};

/// One element's hidden layer: phi_j(z) = act(w_j . s(z) + b_j) with s the input map.
struct LocalRnnBasis {
  int element = 0;
  int space_dim = 1;
  Activation activation = Activation::Tanh;
  Eigen::MatrixXd weights;  // M x (d + 1), drawn from U(-r, r)
  Eigen::VectorXd biases;   // M, drawn from U(-r, r)
  // weights/biases composed with the input map, acting on raw (t, x)
  Eigen::MatrixXd input_weights;
  Eigen::VectorXd input_biases;

  int size() const { return static_cast<int>(weights.rows()); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t element_stream_seed(std::uint64_t seed, std::uint64_t element) {
  return splitmix64(splitmix64(seed) ^ splitmix64(element + 0x632be59bd9b4e019ULL));
}

}  // namespace detail

inline LocalRnnBasis make_local_basis(const SpaceTimeElement& element, int space_dim, const RnnConfig& config) {
  if (config.neurons < 1) fail(ErrorKind::InvalidCount, "neurons per element must be >= 1");
  if (!(config.init_range > 0.0)) fail(ErrorKind::ValidationError, "init range r must be positive");
  const int in = space_dim + 1;
  LocalRnnBasis b;
  b.element = element.id;
  b.space_dim = space_dim;
  b.activation = config.activation;
  b.weights.resize(config.neurons, in);
  b.biases.resize(config.neurons);

  std::mt19937_64 rng(detail::element_stream_seed(config.seed, static_cast<std::uint64_t>(element.id)));
  std::uniform_real_distribution<double> dist(-config.init_range, config.init_range);
  for (int j = 0; j < config.neurons; ++j) {
    for (int k = 0; k < in; ++k) b.weights(j, k) = dist(rng);
    b.biases(j) = dist(rng);
  }

  // s(z)_k = scale_k * z_k + shift_k
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(in);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(in);
  for (int k = 0; k < in; ++k) {
    const double lo = element.bounds.lo[k];
    const double ext = element.bounds.extent(k);
    switch (config.input_scaling) {
      case InputScaling::Global: break;
      case InputScaling::ElementLocal:
        scale(k) = 1.0 / ext;
        shift(k) = -lo / ext;
        break;
      case InputScaling::ElementCentered:
        scale(k) = 2.0 / ext;
        shift(k) = -2.0 * lo / ext - 1.0;
        break;
    }
  }
  b.input_weights = b.weights * scale.asDiagonal();
  b.input_biases = b.biases + b.weights * shift;
  return b;
}

/// One basis per element; element e draws from a stream keyed by (seed, e), so the result
/// does not depend on construction order.
inline std::vector<LocalRnnBasis> build_local_bases(const SpaceTimeMesh& mesh, const RnnConfig& config) {
  std::vector<LocalRnnBasis> bases;
  bases.reserve(mesh.num_elements());
  for (const auto& e : mesh.elements()) bases.push_back(make_local_basis(e, mesh.dim(), config));
  return bases;
}

/// Table of phi_j and its derivatives at `points` (rows are (t, x...)).
inline FieldTable eval_basis(const LocalRnnBasis& basis, const Eigen::MatrixXd& points) {
  const int d = basis.space_dim;
  if (points.cols() != d + 1) fail(ErrorKind::DimensionMismatch, "eval_basis: points must have d + 1 columns");
  Eigen::MatrixXd a = points * basis.input_weights.transpose();
  a.rowwise() += basis.input_biases.transpose();

  Eigen::MatrixXd s0(a.rows(), a.cols()), s1(a.rows(), a.cols()), s2(a.rows(), a.cols());
  switch (basis.activation) {
    case Activation::Tanh:
      s0 = a.array().tanh();
      s1 = 1.0 - s0.array().square();
      s2 = -2.0 * s0.array() * s1.array();
      break;
    case Activation::Sin:
      s0 = a.array().sin();
      s1 = a.array().cos();
      s2 = -s0.array();
      break;
    case Activation::Gaussian:
      s0 = (-a.array().square()).exp();
      s1 = -2.0 * a.array() * s0.array();
      s2 = (4.0 * a.array().square() - 2.0) * s0.array();
      break;
  }

  const auto wt = basis.input_weights.col(0);
  FieldTable t;
  t.dt = s1 * wt.asDiagonal();
  for (int k = 0; k < d; ++k) {
    const auto wk = basis.input_weights.col(k + 1);
    t.grad[k] = s1 * wk.asDiagonal();
    t.grad_dt[k] = s2 * wt.cwiseProduct(wk).asDiagonal();
  }
  t.val = std::move(s0);
  return t;
}

/// u = sum_j alpha_j phi_j and its derivatives; one column.
inline FieldTable eval_linear_combination(const LocalRnnBasis& basis, const Eigen::VectorXd& alpha,
                                          const Eigen::MatrixXd& points) {
  if (alpha.size() != basis.size()) {
    fail(ErrorKind::DimensionMismatch, "eval_linear_combination: alpha must have M entries");
  }
  return eval_basis(basis, points).times(alpha, basis.space_dim);
}

/// The function space actually handed to assembly: either the raw hidden-layer outputs or
/// an orthonormalized subspace psi = phi * transform that drops numerically dependent
/// directions of phi.
struct LocalSpace {
  LocalRnnBasis basis;
  Eigen::MatrixXd transform;  // M x m; empty means identity

  bool reduced() const { return transform.size() != 0; }
  int size() const { return reduced() ? static_cast<int>(transform.cols()) : basis.size(); }

  FieldTable eval(const Eigen::MatrixXd& points) const {
    FieldTable t = eval_basis(basis, points);
    return reduced() ? t.times(transform, basis.space_dim) : t;
  }

  /// Output weights alpha (length M) of the function with coefficients c in this space.
  Eigen::VectorXd expand(const Eigen::VectorXd& c) const { return reduced() ? Eigen::VectorXd(transform * c) : c; }
};

inline LocalSpace raw_space(LocalRnnBasis basis) { return {std::move(basis), {}}; }

/// Right singular vectors and singular values of phi sampled in the mean-L2 inner product
/// of the element (n-point tensor Gauss rule).
struct LocalSpectrum {
  Eigen::MatrixXd v;
  Eigen::VectorXd s;

  /// Number of directions with s > tol * s_max (at least one).
  Eigen::Index rank(double tol) const {
    Eigen::Index keep = 0;
    while (keep < s.size() && s(keep) > tol * s(0)) ++keep;
    return std::max<Eigen::Index>(keep, 1);
  }
};

inline LocalSpectrum local_spectrum(const LocalRnnBasis& basis, const Box& bounds, int n_per_axis) {
  const QuadratureRule rule = tensor_rule(n_per_axis, bounds);
  const Eigen::VectorXd sw = (rule.weights / bounds.measure()).cwiseSqrt();
  const Eigen::MatrixXd sample = sw.asDiagonal() * eval_basis(basis, rule.points).val;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(sample, Eigen::ComputeThinV);
  return {svd.matrixV(), svd.singularValues()};
}

/// Restricts the basis to the leading right singular directions. The transform has
/// orthonormal columns, so |c| = |alpha| and minimum-norm solves keep their meaning.
inline LocalSpace reduced_space(LocalRnnBasis basis, const LocalSpectrum& spectrum, double tol) {
  LocalSpace space;
  space.transform = spectrum.v.leftCols(spectrum.rank(tol));
  space.basis = std::move(basis);
  return space;
}

inline LocalSpace reduced_space(LocalRnnBasis basis, const Box& bounds, int n_per_axis, double tol) {
  const LocalSpectrum spectrum = local_spectrum(basis, bounds, n_per_axis);
  return reduced_space(std::move(basis), spectrum, tol);
}

/// Sampling density used by reduced_space: enough points per axis to resolve M functions.
inline int reduction_points_per_axis(int neurons, int space_dim, int quad_points) {
  const int n = per_axis_count(neurons, space_dim + 1) + 2;
  return std::min(64, std::max(n, quad_points));
}

/// Per-element local spaces laid out consecutively: element e owns columns
/// [offset(e), offset(e) + size(e)).
class DiscreteSpace {
 public:
  DiscreteSpace() = default;
  explicit DiscreteSpace(std::vector<LocalSpace> spaces) : spaces_(std::move(spaces)) {
    offsets_.assign(spaces_.size() + 1, 0);
    for (std::size_t e = 0; e < spaces_.size(); ++e) offsets_[e + 1] = offsets_[e] + spaces_[e].size();
  }

  int num_elements() const { return static_cast<int>(spaces_.size()); }
  int size(int e) const { return spaces_[e].size(); }
  Eigen::Index offset(int e) const { return offsets_[e]; }
  Eigen::Index total() const { return offsets_.back(); }
  const std::vector<Eigen::Index>& offsets() const { return offsets_; }
  const LocalSpace& local(int e) const { return spaces_[e]; }
  FieldTable eval(int e, const Eigen::MatrixXd& points) const { return spaces_[e].eval(points); }

  /// Output weights alpha of every element, concatenated (N_e * M entries).
  Eigen::VectorXd expand(const Eigen::VectorXd& coeffs) const {
    if (coeffs.size() != total()) fail(ErrorKind::DimensionMismatch, "expand: coefficient length mismatch");
    Eigen::Index m_total = 0;
    for (const auto& s : spaces_) m_total += s.basis.size();
    Eigen::VectorXd alpha(m_total);
    Eigen::Index at = 0;
    for (int e = 0; e < num_elements(); ++e) {
      const int m = spaces_[e].basis.size();
      alpha.segment(at, m) = spaces_[e].expand(coeffs.segment(offsets_[e], size(e)));
      at += m;
    }
    return alpha;
  }

 private:
  std::vector<LocalSpace> spaces_;
  std::vector<Eigen::Index> offsets_;
};

/// reduce_tol <= 0 keeps the raw hidden-layer functions.
/// Nonzeros of the square Galerkin block for local sizes k: every element couples to itself
/// and to its face and slab neighbours.
inline double galerkin_nonzeros(const SpaceTimeMesh& mesh, const std::vector<Eigen::Index>& k) {
  double n = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) n += static_cast<double>(k[e]) * static_cast<double>(k[e]);
  auto pair = [&](int a, int b) {
    if (a >= 0 && b >= 0) n += 2.0 * static_cast<double>(k[a]) * static_cast<double>(k[b]);
  };
  for (const auto& f : mesh.spatial_faces()) pair(f.plus_element, f.minus_element);
  for (const auto& tf : mesh.temporal_interfaces()) pair(tf.plus_element, tf.minus_element);
  return n;
}

struct BuiltSpace {
  DiscreteSpace space;
  double reduce_tol = 0.0;  // tolerance actually used
};

/// Compressed local spaces at reduce_tol, or at the smallest tolerance reduce_tol * 10^k
/// (k <= 4) whose Galerkin block stays within max_nonzeros. reduce_tol <= 0 keeps the raw basis.
inline BuiltSpace build_space(const SpaceTimeMesh& mesh, std::vector<LocalRnnBasis> bases, double reduce_tol,
                              int quad_points, double max_nonzeros = std::numeric_limits<double>::infinity()) {
  std::vector<LocalSpace> spaces;
  spaces.reserve(bases.size());
  if (!(reduce_tol > 0.0)) {
    for (auto& b : bases) spaces.push_back(raw_space(std::move(b)));
    return {DiscreteSpace(std::move(spaces)), 0.0};
  }
  std::vector<LocalSpectrum> spectra;
  spectra.reserve(bases.size());
  for (const auto& b : bases) {
    const int n = reduction_points_per_axis(b.size(), mesh.dim(), quad_points);
    spectra.push_back(local_spectrum(b, mesh.element(b.element).bounds, n));
  }
  double tol = reduce_tol;
  for (int step = 0; step < 4; ++step) {
    std::vector<Eigen::Index> k;
    for (const auto& sp : spectra) k.push_back(sp.rank(tol));
    if (galerkin_nonzeros(mesh, k) <= max_nonzeros) break;
    tol *= 10.0;
  }
  for (std::size_t e = 0; e < bases.size(); ++e) spaces.push_back(reduced_space(std::move(bases[e]), spectra[e], tol));
  return {DiscreteSpace(std::move(spaces)), tol};
}

}  // namespace lrnn
