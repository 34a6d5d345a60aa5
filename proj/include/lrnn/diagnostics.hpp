#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lrnn/assembly.hpp"
#include "lrnn/basis.hpp"
#include "lrnn/linsolve.hpp"
#include "lrnn/mesh.hpp"
#include "lrnn/problem.hpp"
#include "lrnn/quadrature.hpp"

// Property suites shared by the `check` subcommand and the acceptance binary. Each suite
// compares library output against an independent oracle and reports its worst discrepancy.

namespace lrnn {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // worst observed discrepancy
  double tolerance = 0.0;
  std::string detail;
};

namespace detail {

inline CheckResult verdict(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value <= tol, value, tol, std::move(detail)};
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a - b) / scale;
}

// ---------------------------------------------------------------------------------------
// Forward-mode dual numbers; nesting three levels gives mixed derivatives up to order three.

template <class T>
struct Dual {
  T a{};  // value
  T b{};  // derivative part
};

template <class T> Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) { return {x.a + y.a, x.b + y.b}; }
template <class T> Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) { return {x.a - y.a, x.b - y.b}; }
template <class T> Dual<T> operator-(const Dual<T>& x) { return {-x.a, -x.b}; }
template <class T> Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
template <class T> Dual<T> operator+(const Dual<T>& x, double c) { return {x.a + c, x.b}; }
template <class T> Dual<T> operator+(double c, const Dual<T>& x) { return {x.a + c, x.b}; }
template <class T> Dual<T> operator-(const Dual<T>& x, double c) { return {x.a - c, x.b}; }
template <class T> Dual<T> operator*(const Dual<T>& x, double c) { return {x.a * c, x.b * c}; }
template <class T> Dual<T> operator*(double c, const Dual<T>& x) { return {x.a * c, x.b * c}; }

inline double sin_of(double x) { return std::sin(x); }
inline double cos_of(double x) { return std::cos(x); }
inline double exp_of(double x) { return std::exp(x); }

template <class T> Dual<T> sin_of(const Dual<T>& x) { return {sin_of(x.a), cos_of(x.a) * x.b}; }
template <class T> Dual<T> cos_of(const Dual<T>& x) { return {cos_of(x.a), -1.0 * (sin_of(x.a) * x.b)}; }
template <class T> Dual<T> exp_of(const Dual<T>& x) {
  const T e = exp_of(x.a);
  return {e, e * x.b};
}

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

/// Variable with value v and unit seeds s1, s2, s3 in the three infinitesimal directions.
inline D3 seeded(double v, double s1, double s2, double s3) { return D3{D2{D1{v, s3}, D1{s2, 0.0}}, D2{D1{s1, 0.0}, D1{}}}; }

template <class T> T u_example1(const T& t, const std::array<T, 3>& x) {
  const double pi = std::numbers::pi;
  const T th = 27.0 * (x[0] * x[0] + t * t) + (8.0 * pi - 24.0);
  return exp_of(cos_of(th)) * (0.5 * (x[0] * x[0] + 1.0)) * (0.5 * (t * t + 1.0));
}

template <class T> T u_example2(const T& t, const std::array<T, 3>& x) {
  const double k = 2.0 * std::numbers::pi;
  return exp_of(-1.0 * t) * sin_of(k * x[0]) * sin_of(k * x[1]);
}

template <class T> T u_example3(const T& t, const std::array<T, 3>& x) {
  const double pi = std::numbers::pi;
  return t * t * sin_of(pi * x[0]) * sin_of(pi * x[1]) * sin_of(pi * x[2]);
}

/// Mixed partial of u along up to three variables (0 = t, k = x_k); -1 marks an unused slot.
template <class F>
double partial(F&& u, double t, const Vec3& x, std::array<int, 3> dirs) {
  auto seed_of = [&](int var, int slot) { return dirs[slot] == var ? 1.0 : 0.0; };
  const D3 tt = seeded(t, seed_of(0, 0), seed_of(0, 1), seed_of(0, 2));
  std::array<D3, 3> xx;
  for (int k = 0; k < 3; ++k) xx[k] = seeded(x[k], seed_of(k + 1, 0), seed_of(k + 1, 1), seed_of(k + 1, 2));
  const D3 r = u(tt, xx);
  const bool s1 = dirs[0] >= 0, s2 = dirs[1] >= 0, s3 = dirs[2] >= 0;
  const D2& l1 = s1 ? r.b : r.a;
  const D1& l2 = s2 ? l1.b : l1.a;
  return s3 ? l2.b : l2.a;
}

struct OracleCase {
  ManufacturedCase mc;
  double (*u)(double, const Vec3&, std::array<int, 3>);
};

inline std::vector<OracleCase> oracle_cases() {
  auto wrap1 = [](double t, const Vec3& x, std::array<int, 3> d) {
    return partial([](const D3& a, const std::array<D3, 3>& b) { return u_example1(a, b); }, t, x, d);
  };
  auto wrap2 = [](double t, const Vec3& x, std::array<int, 3> d) {
    return partial([](const D3& a, const std::array<D3, 3>& b) { return u_example2(a, b); }, t, x, d);
  };
  auto wrap3 = [](double t, const Vec3& x, std::array<int, 3> d) {
    return partial([](const D3& a, const std::array<D3, 3>& b) { return u_example3(a, b); }, t, x, d);
  };
  return {{example_1d(), wrap1}, {example_2d(), wrap2}, {example_3d(), wrap3}};
}

/// Uniform random point of the closed space-time box of a case.
inline std::pair<double, Vec3> random_point(const ManufacturedCase& mc, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Vec3 x{};
  for (int k = 0; k < mc.domain.dim; ++k) {
    x[k] = mc.domain.lower[k] + u01(rng) * (mc.domain.upper[k] - mc.domain.lower[k]);
  }
  return {u01(rng) * mc.final_time, x};
}

}  // namespace detail

/// Strong-form residual u_tt + gamma u_t - eta lap u_t - xi^2 lap u - f of each manufactured
/// case with derivatives from dual numbers, relative to the sum of term magnitudes. Also
/// compares the closed-form jets and the boundary data against the same oracle.
inline CheckResult check_manufactured(int points = 1000, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  double worst_pde = 0.0, worst_jet = 0.0, worst_bc = 0.0;
  for (const auto& oc : detail::oracle_cases()) {
    const ManufacturedCase& mc = oc.mc;
    const DvweProblem& p = mc.problem;
    const int d = mc.domain.dim;
    for (int i = 0; i < points; ++i) {
      const auto [t, x] = detail::random_point(mc, rng);
      const double ut = oc.u(t, x, {0, -1, -1});
      const double utt = oc.u(t, x, {0, 0, -1});
      double lap = 0.0, lap_t = 0.0;
      for (int k = 1; k <= d; ++k) {
        lap += oc.u(t, x, {k, k, -1});
        lap_t += oc.u(t, x, {0, k, k});
      }
      const double g = p.gamma(x), eta = p.eta(x), xi2 = p.xi(x) * p.xi(x);
      const double f = p.f(t, x);
      const std::array<double, 5> terms{utt, g * ut, -eta * lap_t, -xi2 * lap, -f};
      double sum = 0.0, mag = 0.0;
      for (double v : terms) {
        sum += v;
        mag += std::abs(v);
      }
      worst_pde = std::max(worst_pde, std::abs(sum) / std::max(mag, 1e-300));

      const Jet j = p.exact(t, x);
      const double u = oc.u(t, x, {-1, -1, -1});
      double jet_scale = std::abs(u) + std::abs(ut);
      double jet_err = std::abs(j.u - u) + std::abs(j.ut - ut);
      for (int k = 0; k < d; ++k) {
        const double gk = oc.u(t, x, {k + 1, -1, -1});
        const double gtk = oc.u(t, x, {0, k + 1, -1});
        jet_err += std::abs(j.grad[k] - gk) + std::abs(j.grad_t[k] - gtk);
        jet_scale += std::abs(gk) + std::abs(gtk);
      }
      worst_jet = std::max(worst_jet, jet_err / std::max(jet_scale, 1.0));
    }

    // boundary data on every facet
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int axis = 0; axis < d; ++axis) {
      for (int side = 0; side < 2; ++side) {
        Vec3 n{};
        n[axis] = side ? 1.0 : -1.0;
        for (int i = 0; i < points / (2 * d); ++i) {
          auto [t, x] = detail::random_point(mc, rng);
          x[axis] = side ? mc.domain.upper[axis] : mc.domain.lower[axis];
          const double u = oc.u(t, x, {-1, -1, -1});
          const double dn = n[axis] * oc.u(t, x, {axis + 1, -1, -1});
          const double scale = std::max({std::abs(u), std::abs(dn), 1.0});
          switch (mc.boundary.facet(axis, side)) {
            case BoundaryKind::Dirichlet: worst_bc = std::max(worst_bc, std::abs(p.g_D(t, x, n) - u) / scale); break;
            case BoundaryKind::Neumann: worst_bc = std::max(worst_bc, std::abs(p.g_N(t, x, n) - dn) / scale); break;
            case BoundaryKind::Robin:
              worst_bc = std::max(worst_bc, std::abs(p.g_R(t, x, n) - (dn + p.kappa(x) * u)) / scale);
              break;
          }
        }
      }
    }
    // initial data
    for (int i = 0; i < points / 10; ++i) {
      auto [t, x] = detail::random_point(mc, rng);
      (void)t;
      const double u0 = oc.u(0.0, x, {-1, -1, -1});
      const double w0 = oc.u(0.0, x, {0, -1, -1});
      worst_bc = std::max(worst_bc, std::abs(p.u0(x) - u0) / std::max(std::abs(u0), 1.0));
      worst_bc = std::max(worst_bc, std::abs(p.w0(x) - w0) / std::max(std::abs(w0), 1.0));
    }
  }
  std::ostringstream s;
  s << "pde " << worst_pde << ", jets " << worst_jet << ", boundary/initial " << worst_bc;
  return detail::verdict("manufactured-residual", std::max({worst_pde, worst_jet, worst_bc}), 1e-8, s.str());
}

/// Analytic basis derivatives against fourth-order central differences on random
/// (neuron, point) pairs; error relative to max(|analytic|, 1e-3).
inline CheckResult check_basis_derivatives(int pairs = 500, std::uint64_t seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  int done = 0;
  while (done < pairs) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const Activation act = static_cast<Activation>(rng() % 3);
    const InputScaling sc = static_cast<InputScaling>(rng() % 3);
    BoxDomain dom = BoxDomain::unit(d);
    const SpaceTimeMesh mesh = build_mesh(dom, 1.0, 2, {2, 2, 2}, BoundaryPartitionSpec::all(BoundaryKind::Dirichlet));
    RnnConfig rc;
    rc.neurons = 16;
    rc.init_range = 0.2 + 1.3 * u01(rng);
    rc.activation = act;
    rc.input_scaling = sc;
    rc.seed = rng();
    const auto& el = mesh.element(static_cast<int>(rng() % mesh.num_elements()));
    const LocalRnnBasis basis = make_local_basis(el, d, rc);
    Eigen::MatrixXd p(1, d + 1);
    for (int a = 0; a <= d; ++a) p(0, a) = el.bounds.lo[a] + (0.1 + 0.8 * u01(rng)) * el.bounds.extent(a);
    const FieldTable exact = eval_basis(basis, p);
    const int j = static_cast<int>(rng() % basis.size());

    auto shifted = [&](int axis, double h) {
      Eigen::MatrixXd q = p;
      q(0, axis) += h;
      return eval_basis(basis, q);
    };
    // fourth-order central difference of column j of table `pick` along `axis`
    auto fd = [&](int axis, auto pick) {
      const double h = 1e-3 * el.bounds.extent(axis);
      const double f1 = pick(shifted(axis, h)), f_1 = pick(shifted(axis, -h));
      const double f2 = pick(shifted(axis, 2 * h)), f_2 = pick(shifted(axis, -2 * h));
      return (8.0 * (f1 - f_1) - (f2 - f_2)) / (12.0 * h);
    };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-3); };
    worst = std::max(worst, rel(exact.dt(0, j), fd(0, [j](const FieldTable& t) { return t.val(0, j); })));
    for (int k = 0; k < d; ++k) {
      worst = std::max(worst, rel(exact.grad[k](0, j), fd(k + 1, [j](const FieldTable& t) { return t.val(0, j); })));
      worst = std::max(worst,
                       rel(exact.grad_dt[k](0, j), fd(k + 1, [j](const FieldTable& t) { return t.dt(0, j); })));
    }
    ++done;
  }
  return detail::verdict("basis-derivatives", worst, 1e-6, std::to_string(pairs) + " (neuron, point) pairs");
}

/// dgelsd against the pseudo-inverse from a Jacobi SVD with the same cutoff, plus the
/// normal-equation and minimum-norm properties, on random systems up to 20 x 20.
inline CheckResult check_least_squares(int systems = 100, std::uint64_t seed = 13) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_pinv = 0.0, worst_normal = 0.0, worst_null = 0.0;
  for (int s = 0; s < systems; ++s) {
    const int m = 1 + static_cast<int>(rng() % 20), n = 1 + static_cast<int>(rng() % 20);
    const int r = 1 + static_cast<int>(rng() % std::min(m, n));
    // A = U diag(sigma) V^T with exact rank r and singular values in [0.1, 10]
    auto random_orthonormal = [&](int rows, int cols) {
      Eigen::MatrixXd g(rows, cols);
      std::normal_distribution<double> nd;
      for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = nd(rng);
      return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(rows, cols));
    };
    const Eigen::MatrixXd u = random_orthonormal(m, r), v = random_orthonormal(n, r);
    Eigen::VectorXd sigma(r);
    for (int i = 0; i < r; ++i) sigma(i) = std::pow(10.0, -1.0 + 2.0 * u01(rng));
    const Eigen::MatrixXd a = u * sigma.asDiagonal() * v.transpose();
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b(i) = 2.0 * u01(rng) - 1.0;

    const double rcond = 1e-10;
    const LeastSquaresReport rep = solve_least_squares(a, b, rcond);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > rcond * sv(0)) inv(i) = 1.0 / sv(i);
    }
    const Eigen::VectorXd x_pinv =
        svd.matrixV().leftCols(sv.size()) * inv.asDiagonal() * svd.matrixU().leftCols(sv.size()).transpose() * b;
    worst_pinv = std::max(worst_pinv, (rep.solution - x_pinv).norm() / std::max(x_pinv.norm(), 1e-300));
    const double an = sv(0);
    worst_normal = std::max(worst_normal,
                            (a.transpose() * (a * rep.solution - b)).norm() / (an * an * rep.solution.norm() + an * b.norm()));
    // minimum norm: no component in the null space of A
    if (r < n) {
      const Eigen::MatrixXd null = svd.matrixV().rightCols(n - r);
      worst_null = std::max(worst_null, (null.transpose() * rep.solution).norm() / std::max(rep.solution.norm(), 1e-300));
    }
  }
  std::ostringstream s;
  s << "pinv " << worst_pinv << ", normal equations " << worst_normal << ", null-space component " << worst_null;
  return detail::verdict("least-squares", std::max({worst_pinv, worst_normal, worst_null}), 1e-10, s.str());
}

namespace detail {

/// Random box mesh with random partition and boundary kinds.
inline SpaceTimeMesh random_mesh(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int d = 1 + static_cast<int>(rng() % 3);
  BoxDomain dom;
  dom.dim = d;
  std::array<int, kMaxSpaceDim> cells{1, 1, 1};
  BoundaryPartitionSpec bc;
  for (int k = 0; k < d; ++k) {
    dom.lower[k] = -1.0 + u01(rng);
    dom.upper[k] = dom.lower[k] + 0.5 + u01(rng);
    cells[k] = 1 + static_cast<int>(rng() % (d == 3 ? 2 : 3));
    for (int side = 0; side < 2; ++side) bc.set(k, side, static_cast<BoundaryKind>(rng() % 3));
  }
  const int nt = 1 + static_cast<int>(rng() % 3);
  return build_mesh(dom, 0.5 + 2.0 * u01(rng), nt, cells, bc);
}

/// Piecewise field: one random output-weight vector per element and component.
struct PiecewiseField {
  std::vector<LocalRnnBasis> bases;
  std::vector<std::vector<Eigen::VectorXd>> alpha;  // [element][component]

  PiecewiseField(const SpaceTimeMesh& mesh, int components, std::mt19937_64& rng) {
    RnnConfig rc;
    rc.neurons = 6;
    rc.init_range = 1.0;
    rc.seed = rng();
    bases = build_local_bases(mesh, rc);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    alpha.resize(bases.size());
    for (auto& a : alpha) {
      for (int c = 0; c < components; ++c) {
        Eigen::VectorXd v(rc.neurons);
        for (int j = 0; j < rc.neurons; ++j) v(j) = sym(rng);
        a.push_back(v);
      }
    }
  }

  /// values[c](q) of component c at the points, from element e's local function
  std::vector<Eigen::VectorXd> eval(int e, const Eigen::MatrixXd& points) const {
    std::vector<Eigen::VectorXd> out;
    for (const auto& a : alpha[e]) out.push_back(eval_linear_combination(bases[e], a, points).val.col(0));
    return out;
  }
};

}  // namespace detail

struct IdentityDiscrepancy {
  double spatial = 0.0;
  double temporal = 0.0;
};

/// Element-wise against face-wise evaluation of
///   sum_K int_dK v q.n_K = int_E [[v]].{q} + int_Ei {v}[q]
///   sum_i (v w)|_{t_{i-1}}^{t_i} = sum_{i=0}^{N} [v]{w} + sum_{i=1}^{N-1} {v}[w]
/// (the temporal one integrated over each spatial cell), as relative differences.
inline IdentityDiscrepancy identity_discrepancy(const SpaceTimeMesh& mesh, const detail::PiecewiseField& v,
                                                const detail::PiecewiseField& q, int quad) {
  const int d = mesh.dim();
  IdentityDiscrepancy out;

  // spatial, element-wise
  double elem = 0.0;
  for (const auto& el : mesh.elements()) {
    for (const FaceRef& ref : mesh.element_faces(el.id)) {
      const SpatialFace& f = mesh.spatial_faces()[ref.face];
      const double sign = ref.plus ? f.normal_sign : -f.normal_sign;  // outward from el
      const QuadratureRule r = face_rule(f, quad);
      const auto vv = v.eval(el.id, r.points);
      const auto qq = q.eval(el.id, r.points);
      elem += r.weights.dot(vv[0].cwiseProduct(qq[f.axis])) * sign;
    }
  }
  // spatial, face-wise through the trace operators
  double face = 0.0;
  for (const auto& f : mesh.spatial_faces()) {
    const QuadratureRule r = face_rule(f, quad);
    const Vec3 n = f.normal();
    const std::span<const double> ns(n.data(), d);
    const auto vp = v.eval(f.plus_element, r.points);
    const auto qp = q.eval(f.plus_element, r.points);
    std::vector<Eigen::VectorXd> vm, qm;
    if (f.interior()) {
      vm = v.eval(f.minus_element, r.points);
      qm = q.eval(f.minus_element, r.points);
    }
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      std::array<double, kMaxSpaceDim> qpi{}, qmi{};
      for (int k = 0; k < d; ++k) {
        qpi[k] = qp[k](i);
        if (f.interior()) qmi[k] = qm[k](i);
      }
      const std::span<const double> qps(qpi.data(), d), qms(qmi.data(), d);
      double integrand = 0.0;
      if (f.interior()) {
        const ScalarTrace sv = jump_average_spatial(vp[0](i), vm[0](i), ns);
        const VectorTrace tq = jump_average_spatial(qps, qms, ns);
        for (int k = 0; k < d; ++k) integrand += sv.jump[k] * tq.average[k];
        integrand += sv.average * tq.jump;
      } else {
        const ScalarTrace sv = jump_average_boundary(vp[0](i), ns);
        const VectorTrace tq = jump_average_boundary(qps, ns);
        for (int k = 0; k < d; ++k) integrand += sv.jump[k] * tq.average[k];
      }
      face += r.weights(i) * integrand;
    }
  }
  out.spatial = detail::rel_diff(elem, face);

  // temporal, element-wise: (v w) at the top minus at the bottom of every element
  double slabs = 0.0;
  for (const auto& el : mesh.elements()) {
    for (int side = 0; side < 2; ++side) {
      Box b = el.bounds;
      b.lo[0] = b.hi[0] = side ? el.bounds.hi[0] : el.bounds.lo[0];
      const QuadratureRule r = detail::embedded_tensor_rule(std::vector<int>(b.dims, quad), b);
      const auto vv = v.eval(el.id, r.points);
      const auto ww = q.eval(el.id, r.points);
      slabs += (side ? 1.0 : -1.0) * r.weights.dot(vv[0].cwiseProduct(ww[0]));
    }
  }
  // temporal, interface-wise
  double nodes = 0.0;
  for (const auto& tf : mesh.temporal_interfaces()) {
    const QuadratureRule r = face_rule(tf, quad);
    const Eigen::Index nq = r.size();
    Eigen::VectorXd vp = Eigen::VectorXd::Zero(nq), vm = vp, wp = vp, wm = vp;
    if (tf.plus_element >= 0) {
      vp = v.eval(tf.plus_element, r.points)[0];
      wp = q.eval(tf.plus_element, r.points)[0];
    }
    if (tf.minus_element >= 0) {
      vm = v.eval(tf.minus_element, r.points)[0];
      wm = q.eval(tf.minus_element, r.points)[0];
    }
    for (Eigen::Index i = 0; i < nq; ++i) {
      const TemporalTrace tv = jump_average_temporal(vp(i), vm(i), tf.kind);
      const TemporalTrace tw = jump_average_temporal(wp(i), wm(i), tf.kind);
      double integrand = tv.jump * tw.average;
      if (tf.kind == TemporalKind::Interior) integrand += tv.average * tw.jump;
      nodes += r.weights(i) * integrand;
    }
  }
  out.temporal = detail::rel_diff(slabs, nodes);
  return out;
}

inline CheckResult check_identities(int meshes = 10, int fields = 10, std::uint64_t seed = 17) {
  std::mt19937_64 rng(seed);
  double worst_s = 0.0, worst_t = 0.0;
  for (int m = 0; m < meshes; ++m) {
    const SpaceTimeMesh mesh = detail::random_mesh(rng);
    for (int f = 0; f < fields; ++f) {
      const detail::PiecewiseField v(mesh, 1, rng);
      const detail::PiecewiseField q(mesh, mesh.dim(), rng);
      const IdentityDiscrepancy dsc = identity_discrepancy(mesh, v, q, 4);
      worst_s = std::max(worst_s, dsc.spatial);
      worst_t = std::max(worst_t, dsc.temporal);
    }
  }
  std::ostringstream s;
  s << "spatial " << worst_s << ", temporal " << worst_t;
  return detail::verdict("dg-identities", std::max(worst_s, worst_t), 1e-12, s.str());
}

/// Galerkin rows of the penalty scheme applied to the exact solution of the 2-D case, at
/// several quadrature orders. Passes when the finest order is below 1e-8 and the residual
/// decreases with the order.
inline CheckResult check_consistency(const std::vector<int>& orders = {5, 10, 20}, int neurons = 40,
                                     std::uint64_t seed = 1) {
  const ManufacturedCase mc = example_2d();
  const SpaceTimeMesh mesh = build_mesh(mc.domain, mc.final_time, 2, {2, 2, 2}, mc.boundary);
  RnnConfig rc;
  rc.neurons = neurons;
  rc.init_range = 0.6;
  rc.seed = seed;
  const DiscreteSpace space = build_space(mesh, build_local_bases(mesh, rc), 0.0, 1).space;
  MethodConfig cfg;
  cfg.beta1 = cfg.beta2 = 5.0;
  std::vector<double> res;
  std::ostringstream s;
  for (int q : orders) {
    cfg.quad_points = q;
    res.push_back(consistency_residual(mesh, space, mc.problem, cfg).max_normalized);
    s << (s.tellp() > 0 ? ", " : "") << "quad " << q << ": " << res.back();
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < res.size(); ++i) decreasing = decreasing && res[i] < res[i - 1];
  CheckResult r = detail::verdict("consistency", res.back(), 1e-8, s.str());
  r.passed = r.passed && decreasing;
  if (!decreasing) r.detail += " (not decreasing)";
  return r;
}

/// Gauss-Legendre rules integrate monomials up to degree 2n - 1 on random intervals.
inline CheckResult check_quadrature(std::uint64_t seed = 19) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int n = 1; n <= 30; ++n) {
    Box box;
    box.dims = 1;
    box.lo[0] = -2.0 + 2.0 * u01(rng);
    box.hi[0] = box.lo[0] + 0.1 + 2.0 * u01(rng);
    const QuadratureRule r = tensor_rule(n, box);
    const double c = 0.5 * (box.lo[0] + box.hi[0]);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double num = 0.0;
      for (Eigen::Index i = 0; i < r.size(); ++i) num += r.weights(i) * std::pow(r.points(i, 0) - c, p);
      const double h = 0.5 * box.extent(0);
      const double exact = p % 2 ? 0.0 : 2.0 * std::pow(h, p + 1) / (p + 1);
      worst = std::max(worst, std::abs(num - exact) / std::max(std::pow(h, p + 1), 1e-300));
    }
  }
  return detail::verdict("quadrature", worst, 1e-12, "monomials up to degree 2n-1, n = 1..30");
}

inline std::vector<CheckResult> run_all_checks() {
  return {check_quadrature(), check_identities(), check_basis_derivatives(), check_least_squares(),
          check_manufactured(), check_consistency()};
}

}  // namespace lrnn
