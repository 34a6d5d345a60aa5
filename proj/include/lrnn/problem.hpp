#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "lrnn/error.hpp"
#include "lrnn/mesh.hpp"

namespace lrnn {

using Vec3 = std::array<double, kMaxSpaceDim>;  // unused trailing entries are 0

using SpaceField = std::function<double(const Vec3& x)>;
using SpaceTimeField = std::function<double(double t, const Vec3& x)>;
using BoundaryField = std::function<double(double t, const Vec3& x, const Vec3& n)>;

/// u together with the derivatives the bilinear forms consume.
struct Jet {
  double u = 0.0;
  double ut = 0.0;
  Vec3 grad{};
  Vec3 grad_t{};
};

using JetField = std::function<Jet(double t, const Vec3& x)>;

/// u_tt + gamma u_t - div(eta grad u_t) - div(xi^2 grad u) = f on (0, T) x Omega
/// with Dirichlet / Neumann / Robin data on the boundary facets and u = u0, u_t = w0 at t = 0.
/// g_N_dt and g_R_dt are the time derivatives of g_N and g_R; only the C1 scheme needs them.
struct DvweProblem {
  int dim = 1;
  SpaceField gamma, eta, xi, kappa;
  SpaceTimeField f;
  BoundaryField g_D, g_N, g_R, g_N_dt, g_R_dt;
  SpaceField u0, w0;
  JetField exact;  // empty when no closed form is known

  bool has_exact() const { return static_cast<bool>(exact); }
};

struct ManufacturedCase {
  std::string name;
  BoxDomain domain;
  double final_time = 1.0;
  BoundaryPartitionSpec boundary;
  DvweProblem problem;
};

inline double dot(const Vec3& a, const Vec3& b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += a[k] * b[k];
  return s;
}

namespace detail {

inline SpaceField constant(double c) {
  return [c](const Vec3&) { return c; };
}

/// Boundary data, initial data and source all read off the exact solution.
/// `source` must be consistent with `exact` for the given coefficients.
inline DvweProblem problem_from_exact(int dim, double gamma, double eta, double xi, double kappa, JetField exact,
                                      SpaceTimeField source) {
  DvweProblem p;
  p.dim = dim;
  p.gamma = constant(gamma);
  p.eta = constant(eta);
  p.xi = constant(xi);
  p.kappa = constant(kappa);
  p.f = std::move(source);
  p.exact = exact;
  p.g_D = [exact](double t, const Vec3& x, const Vec3&) { return exact(t, x).u; };
  p.g_N = [exact, dim](double t, const Vec3& x, const Vec3& n) { return dot(exact(t, x).grad, n, dim); };
  p.g_N_dt = [exact, dim](double t, const Vec3& x, const Vec3& n) { return dot(exact(t, x).grad_t, n, dim); };
  p.g_R = [exact, dim, kappa](double t, const Vec3& x, const Vec3& n) {
    const Jet j = exact(t, x);
    return dot(j.grad, n, dim) + kappa * j.u;
  };
  p.g_R_dt = [exact, dim, kappa](double t, const Vec3& x, const Vec3& n) {
    const Jet j = exact(t, x);
    return dot(j.grad_t, n, dim) + kappa * j.ut;
  };
  p.u0 = [exact](const Vec3& x) { return exact(0.0, x).u; };
  p.w0 = [exact](const Vec3& x) { return exact(0.0, x).ut; };
  return p;
}

// Derivatives of u = exp(cos(27 x^2 + 27 t^2 + 8 pi - 24)) (x^2 + 1)/2 (t^2 + 1)/2.
struct Example1Derivs {
  double u, ut, ux, utx, utt, uxx, utxx;
};

inline Example1Derivs example1_derivs(double t, double x) {
  const double th = 27.0 * (x * x + t * t) + 8.0 * std::numbers::pi - 24.0;
  const double s = std::sin(th), c = std::cos(th);
  const double tht = 54.0 * t, thx = 54.0 * x, th2 = 54.0;  // theta_tt = theta_xx = 54, theta_tx = 0

  // g = cos(theta)
  const double gt = -s * tht, gx = -s * thx;
  const double gtt = -c * tht * tht - s * th2;
  const double gxx = -c * thx * thx - s * th2;
  const double gtx = -c * tht * thx;
  const double gtxx = s * tht * thx * thx - c * th2 * tht;

  // E = exp(g)
  const double e = std::exp(c);
  const double et = e * gt, ex = e * gx;
  const double ett = e * (gtt + gt * gt);
  const double exx = e * (gxx + gx * gx);
  const double etx = e * (gtx + gt * gx);
  const double etxx = e * (gtxx + gxx * gt + 2.0 * gtx * gx + gt * gx * gx);

  // R = P(x) Q(t)
  const double p = 0.5 * (x * x + 1.0), px = x, pxx = 1.0;
  const double q = 0.5 * (t * t + 1.0), qt = t, qtt = 1.0;
  const double r = p * q, rt = p * qt, rx = px * q, rtx = px * qt, rtt = p * qtt, rxx = pxx * q, rtxx = pxx * qt;

  Example1Derivs d{};
  d.u = e * r;
  d.ut = et * r + e * rt;
  d.ux = ex * r + e * rx;
  d.utx = etx * r + et * rx + ex * rt + e * rtx;
  d.utt = ett * r + 2.0 * et * rt + e * rtt;
  d.uxx = exx * r + 2.0 * ex * rx + e * rxx;
  d.utxx = etxx * r + exx * rt + 2.0 * (etx * rx + ex * rtx) + et * rxx + e * rtxx;
  return d;
}

}  // namespace detail

/// Oscillatory 1-D case, water-saturated rock coefficients, all-Dirichlet.
inline ManufacturedCase example_1d() {
  constexpr double gamma = 90.0, eta = 2e-7, xi = 1.47;
  ManufacturedCase c;
  c.name = "example1";
  c.domain = BoxDomain::unit(1);
  c.final_time = 1.0;
  c.boundary = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet);
  JetField exact = [](double t, const Vec3& x) {
    const auto d = detail::example1_derivs(t, x[0]);
    Jet j;
    j.u = d.u;
    j.ut = d.ut;
    j.grad[0] = d.ux;
    j.grad_t[0] = d.utx;
    return j;
  };
  SpaceTimeField f = [](double t, const Vec3& x) {
    const auto d = detail::example1_derivs(t, x[0]);
    return d.utt + gamma * d.ut - eta * d.utxx - xi * xi * d.uxx;
  };
  c.problem = detail::problem_from_exact(1, gamma, eta, xi, 1.0, std::move(exact), std::move(f));
  return c;
}

/// u = exp(-t) sin(2 pi x) sin(2 pi y) on (0, 0.5) x (0, 1)^2, all-Dirichlet.
inline ManufacturedCase example_2d() {
  constexpr double gamma = 1.0, eta = 0.01, xi = 0.1;
  constexpr double k = 2.0 * std::numbers::pi;
  ManufacturedCase c;
  c.name = "example2";
  c.domain = BoxDomain::unit(2);
  c.final_time = 0.5;
  c.boundary = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet);
  JetField exact = [](double t, const Vec3& x) {
    const double e = std::exp(-t);
    const double sx = std::sin(k * x[0]), cx = std::cos(k * x[0]);
    const double sy = std::sin(k * x[1]), cy = std::cos(k * x[1]);
    Jet j;
    j.u = e * sx * sy;
    j.ut = -j.u;
    j.grad[0] = e * k * cx * sy;
    j.grad[1] = e * k * sx * cy;
    j.grad_t[0] = -j.grad[0];
    j.grad_t[1] = -j.grad[1];
    return j;
  };
  SpaceTimeField f = [](double t, const Vec3& x) {
    const double u = std::exp(-t) * std::sin(k * x[0]) * std::sin(k * x[1]);
    return u * (1.0 - gamma - 2.0 * k * k * eta + 2.0 * k * k * xi * xi);
  };
  c.problem = detail::problem_from_exact(2, gamma, eta, xi, 1.0, std::move(exact), std::move(f));
  return c;
}

/// u = t^2 sin(pi x) sin(pi y) sin(pi z) on (0, 5) x (0, 1)^3, dry sandstone coefficients.
/// Lateral facets Dirichlet, z = 0 Neumann, z = 1 Robin.
inline ManufacturedCase example_3d() {
  constexpr double gamma = 56.0, eta = 5.6e-8, xi = 1.19, kappa = 1.0;
  constexpr double pi = std::numbers::pi;
  ManufacturedCase c;
  c.name = "example3";
  c.domain = BoxDomain::unit(3);
  c.final_time = 5.0;
  c.boundary = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet);
  c.boundary.set(2, 0, BoundaryKind::Neumann);
  c.boundary.set(2, 1, BoundaryKind::Robin);
  JetField exact = [](double t, const Vec3& x) {
    Vec3 s, co;
    for (int a = 0; a < 3; ++a) {
      s[a] = std::sin(pi * x[a]);
      co[a] = std::cos(pi * x[a]);
    }
    const double prod = s[0] * s[1] * s[2];
    const Vec3 dprod{pi * co[0] * s[1] * s[2], pi * s[0] * co[1] * s[2], pi * s[0] * s[1] * co[2]};
    Jet j;
    j.u = t * t * prod;
    j.ut = 2.0 * t * prod;
    for (int a = 0; a < 3; ++a) {
      j.grad[a] = t * t * dprod[a];
      j.grad_t[a] = 2.0 * t * dprod[a];
    }
    return j;
  };
  SpaceTimeField f = [](double t, const Vec3& x) {
    const double s = std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(pi * x[2]);
    return s * (2.0 + 2.0 * gamma * t + 6.0 * pi * pi * eta * t + 3.0 * pi * pi * xi * xi * t * t);
  };
  c.problem = detail::problem_from_exact(3, gamma, eta, xi, kappa, std::move(exact), std::move(f));
  return c;
}

/// All data zero; the exact solution is u = 0.
inline ManufacturedCase zero_case(int dim) {
  ManufacturedCase c;
  c.name = "zero";
  c.domain = BoxDomain::unit(dim);
  c.final_time = 1.0;
  c.boundary = BoundaryPartitionSpec::all(BoundaryKind::Dirichlet);
  c.problem = detail::problem_from_exact(dim, 1.0, 1.0, 1.0, 1.0, [](double, const Vec3&) { return Jet{}; },
                                         [](double, const Vec3&) { return 0.0; });
  return c;
}

}  // namespace lrnn
