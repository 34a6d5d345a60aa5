#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lrnn/basis.hpp"
#include "lrnn/error.hpp"
#include "lrnn/mesh.hpp"
#include "lrnn/problem.hpp"
#include "lrnn/quadrature.hpp"
#include "lrnn/system.hpp"

namespace lrnn {

enum class Scheme { LrnnDg, LrnnC0Dg, LrnnC1Dg };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::LrnnDg: return "lrnn_dg";
    case Scheme::LrnnC0Dg: return "lrnn_c0dg";
    case Scheme::LrnnC1Dg: return "lrnn_c1dg";
  }
  return "unknown";
}

/// Switches individual groups of bilinear-form terms off; used by tests that isolate a block.
struct TermMask {
  bool volume = true;
  bool temporal = true;     // slab-interface terms
  bool spatial_eta = true;  // eta * grad(u_t) face terms
  bool spatial_xi = true;   // xi^2 face terms (consistency, symmetry, penalty)
  bool robin = true;        // kappa terms on Robin faces
  bool rhs = true;
};

struct MethodConfig {
  Scheme scheme = Scheme::LrnnDg;
  double beta1 = 7.0;
  double beta2 = 7.0;
  int colloc_spatial = 13;
  int colloc_temporal = 13;
  int colloc_initial = 13;
  int colloc_dirichlet = 13;
  int quad_points = 15;
  double constraint_weight = 1.0;
  // Use -int w0 v(0) on the right-hand side as printed; the default +int w0 v(0) is the sign
  // for which the exact solution satisfies the discrete equations.
  bool literal_w0_sign = false;
  TermMask terms;
};

inline void validate(const MethodConfig& c) {
  if (!(c.beta1 >= 0.0) || !(c.beta2 >= 0.0)) fail(ErrorKind::ValidationError, "beta1, beta2 must be >= 0");
  if (c.quad_points < 1 || c.quad_points > 64) fail(ErrorKind::ValidationError, "quad_points must be in 1..64");
  if (c.scheme != Scheme::LrnnDg) {
    if (c.colloc_spatial < 1 || c.colloc_temporal < 1 || c.colloc_initial < 1 || c.colloc_dirichlet < 1) {
      fail(ErrorKind::ValidationError, "collocation counts must be >= 1");
    }
  }
  if (!(c.constraint_weight > 0.0)) fail(ErrorKind::ValidationError, "constraint_weight must be positive");
}

/// A closed-form field standing in for the trial space: one column per element whose value
/// on element e is the field itself. Assembling against it gives B(u, phi_i) as row sums.
struct ExactTrial {
  JetField field;
  int dim = 1;
  int elements = 0;

  int size(int) const { return 1; }
  Eigen::Index offset(int e) const { return e; }
  Eigen::Index total() const { return elements; }

  FieldTable eval(int, const Eigen::MatrixXd& points) const {
    const Eigen::Index q = points.rows();
    FieldTable t;
    t.val.resize(q, 1);
    t.dt.resize(q, 1);
    for (int k = 0; k < dim; ++k) {
      t.grad[k].resize(q, 1);
      t.grad_dt[k].resize(q, 1);
    }
    for (Eigen::Index i = 0; i < q; ++i) {
      Vec3 x{};
      for (int k = 0; k < dim; ++k) x[k] = points(i, k + 1);
      const Jet j = field(points(i, 0), x);
      t.val(i, 0) = j.u;
      t.dt(i, 0) = j.ut;
      for (int k = 0; k < dim; ++k) {
        t.grad[k](i, 0) = j.grad[k];
        t.grad_dt[k](i, 0) = j.grad_t[k];
      }
    }
    return t;
  }
};

namespace detail {

inline Vec3 point_x(const Eigen::MatrixXd& p, Eigen::Index q) {
  Vec3 x{};
  for (Eigen::Index k = 1; k < p.cols(); ++k) x[k - 1] = p(q, k);
  return x;
}

inline Eigen::VectorXd sample(const SpaceField& f, const Eigen::MatrixXd& p) {
  Eigen::VectorXd v(p.rows());
  for (Eigen::Index q = 0; q < p.rows(); ++q) v(q) = f(point_x(p, q));
  return v;
}

inline Eigen::VectorXd sample(const SpaceTimeField& f, const Eigen::MatrixXd& p) {
  Eigen::VectorXd v(p.rows());
  for (Eigen::Index q = 0; q < p.rows(); ++q) v(q) = f(p(q, 0), point_x(p, q));
  return v;
}

inline Eigen::VectorXd sample(const BoundaryField& f, const Eigen::MatrixXd& p, const Vec3& n) {
  Eigen::VectorXd v(p.rows());
  for (Eigen::Index q = 0; q < p.rows(); ++q) v(q) = f(p(q, 0), point_x(p, q), n);
  return v;
}

/// V^T diag(w) U
inline Eigen::MatrixXd wgram(const Eigen::MatrixXd& v, const Eigen::VectorXd& w, const Eigen::MatrixXd& u) {
  return v.transpose() * (w.asDiagonal() * u);
}

/// Output-weight coordinates of a trial space (no compression for closed-form trials).
inline const Eigen::MatrixXd* transform_of(const DiscreteSpace& s, int e) {
  return s.local(e).reduced() ? &s.local(e).transform : nullptr;
}
inline const Eigen::MatrixXd* transform_of(const ExactTrial&, int) { return nullptr; }

/// Tables in output-weight coordinates, before any compression is applied.
inline FieldTable raw_eval(const DiscreteSpace& s, int e, const Eigen::MatrixXd& points) {
  return eval_basis(s.local(e).basis, points);
}
inline FieldTable raw_eval(const ExactTrial& s, int e, const Eigen::MatrixXd& points) { return s.eval(e, points); }

/// Galerkin rows grouped by test element; each test element holds one dense block per
/// coupled trial element. Terms are staged in output-weight coordinates and projected onto
/// the compressed local spaces by flush(), so each block is projected once per face or volume.
class GalerkinRows {
 public:
  using TransformOf = std::function<const Eigen::MatrixXd*(int)>;

  GalerkinRows(const DiscreteSpace& test, TransformOf trial_transform)
      : test_(test), trial_transform_(std::move(trial_transform)), blocks_(test.num_elements()),
        rhs_(test.num_elements()) {}

  Eigen::MatrixXd& block(int test, int trial, Eigen::Index rows, Eigen::Index cols) {
    for (auto& [key, m] : staged_) {
      if (key == std::pair{test, trial}) return m;
    }
    staged_.emplace_back(std::pair{test, trial}, Eigen::MatrixXd::Zero(rows, cols));
    return staged_.back().second;
  }

  Eigen::VectorXd& rhs(int test, Eigen::Index rows) {
    for (auto& [e, v] : staged_rhs_) {
      if (e == test) return v;
    }
    staged_rhs_.emplace_back(test, Eigen::VectorXd::Zero(rows));
    return staged_rhs_.back().second;
  }

  void flush() {
    for (auto& [key, raw] : staged_) {
      const auto [te, tr] = key;
      const Eigen::MatrixXd* tt = transform_of(test_, te);
      const Eigen::MatrixXd* ut = trial_transform_(tr);
      Eigen::MatrixXd left = tt ? Eigen::MatrixXd(tt->transpose() * raw) : std::move(raw);
      Eigen::MatrixXd m = ut ? Eigen::MatrixXd(left * *ut) : std::move(left);
      accumulate(te, tr, m);
    }
    for (auto& [te, raw] : staged_rhs_) {
      const Eigen::MatrixXd* tt = transform_of(test_, te);
      Eigen::VectorXd v = tt ? Eigen::VectorXd(tt->transpose() * raw) : std::move(raw);
      if (rhs_[te].size() == 0) {
        rhs_[te] = std::move(v);
      } else {
        rhs_[te] += v;
      }
    }
    staged_.clear();
    staged_rhs_.clear();
  }

  std::vector<std::vector<std::pair<int, Eigen::MatrixXd>>> blocks_;
  std::vector<Eigen::VectorXd> rhs_;

 private:
  void accumulate(int te, int tr, Eigen::MatrixXd& m) {
    for (auto& [e, b] : blocks_[te]) {
      if (e == tr) {
        b += m;
        return;
      }
    }
    blocks_[te].emplace_back(tr, std::move(m));
  }

  const DiscreteSpace& test_;
  TransformOf trial_transform_;
  std::vector<std::pair<std::pair<int, int>, Eigen::MatrixXd>> staged_;
  std::vector<std::pair<int, Eigen::VectorXd>> staged_rhs_;
};

/// One side of a face: test and trial tables at the face points plus the jump/average weights
/// of that side.
struct SideTables {
  int element = -1;
  double jump = 1.0;
  double avg = 1.0;
  FieldTable test;
  std::optional<FieldTable> trial_storage;  // empty when trial and test spaces coincide

  const FieldTable& trial() const { return trial_storage ? *trial_storage : test; }
};

template <class Trial>
SideTables make_side(int element, double jump, double avg, const DiscreteSpace& test, const Trial& trial,
                     const Eigen::MatrixXd& points) {
  SideTables s;
  s.element = element;
  s.jump = jump;
  s.avg = avg;
  s.test = raw_eval(test, element, points);
  if constexpr (std::is_same_v<Trial, DiscreteSpace>) {
    if (&trial == &test) return s;
  }
  s.trial_storage = raw_eval(trial, element, points);
  return s;
}

inline void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::MissingBoundaryData, what);
}

inline void check_data(const SpaceTimeMesh& mesh, const DvweProblem& p, Scheme scheme) {
  require(p.gamma && p.eta && p.xi && p.kappa && p.f && p.u0 && p.w0, "coefficients, source and initial data required");
  for (const auto& f : mesh.spatial_faces()) {
    switch (f.kind) {
      case FaceKind::Interior: break;
      case FaceKind::Dirichlet: require(static_cast<bool>(p.g_D), "Dirichlet face without g_D"); break;
      case FaceKind::Neumann:
        require(static_cast<bool>(p.g_N), "Neumann face without g_N");
        if (scheme == Scheme::LrnnC1Dg) require(static_cast<bool>(p.g_N_dt), "Neumann face without d/dt g_N");
        break;
      case FaceKind::Robin:
        require(static_cast<bool>(p.g_R), "Robin face without g_R");
        if (scheme == Scheme::LrnnC1Dg) require(static_cast<bool>(p.g_R_dt), "Robin face without d/dt g_R");
        break;
    }
  }
}

// -int u_t v_t + gamma u_t v + eta grad u_t . grad v + xi^2 grad u . grad v, and int f v.
template <class Trial>
void add_volume(const SpaceTimeElement& el, const DiscreteSpace& test, const Trial& trial, const DvweProblem& p,
                const MethodConfig& cfg, int dim, GalerkinRows& rows) {
  const QuadratureRule rule = tensor_rule(cfg.quad_points, el.bounds);
  SideTables s = make_side(el.id, 1.0, 1.0, test, trial, rule.points);
  const FieldTable& v = s.test;
  const FieldTable& u = s.trial();
  const Eigen::VectorXd& w = rule.weights;
  if (cfg.terms.volume) {
    const Eigen::VectorXd wg = w.cwiseProduct(sample(p.gamma, rule.points));
    const Eigen::VectorXd we = w.cwiseProduct(sample(p.eta, rule.points));
    const Eigen::VectorXd wx = w.cwiseProduct(sample(p.xi, rule.points).cwiseAbs2());
    Eigen::MatrixXd& a = rows.block(el.id, el.id, v.cols(), u.cols());
    a.noalias() += v.val.transpose() * (wg.asDiagonal() * u.dt);
    a.noalias() -= v.dt.transpose() * (w.asDiagonal() * u.dt);
    for (int k = 0; k < dim; ++k) {
      Eigen::MatrixXd flux = we.asDiagonal() * u.grad_dt[k];
      flux.noalias() += wx.asDiagonal() * u.grad[k];
      a.noalias() += v.grad[k].transpose() * flux;
    }
  }
  if (cfg.terms.rhs) {
    const Eigen::VectorXd wf = w.cwiseProduct(sample(p.f, rule.points));
    rows.rhs(el.id, v.cols()).noalias() += v.val.transpose() * wf;
  }
}

inline double w0_sign(const MethodConfig& cfg) { return cfg.literal_w0_sign ? -1.0 : 1.0; }

// Spatial face terms. symmetric_terms adds -xi^2 [[u]].{grad v} and the beta2 penalty of the
// penalty scheme; without it only the terms shared with the C0 scheme remain.
template <class Trial>
void add_spatial_face_dg(const SpatialFace& face, const DiscreteSpace& test, const Trial& trial,
                         const DvweProblem& p, const MethodConfig& cfg, bool symmetric_terms, GalerkinRows& rows) {
  const QuadratureRule rule = face_rule(face, cfg.quad_points);
  const Eigen::VectorXd& w = rule.weights;
  const int ax = face.axis;
  const double sg = face.normal_sign;
  const Vec3 n = face.normal();
  const bool interior = face.interior();
  const double avg = interior ? 0.5 : 1.0;

  std::vector<SideTables> sides;
  sides.push_back(make_side(face.plus_element, 1.0, avg, test, trial, rule.points));
  if (interior) sides.push_back(make_side(face.minus_element, -1.0, avg, test, trial, rule.points));

  const Eigen::VectorXd eta = sample(p.eta, rule.points);
  const Eigen::VectorXd xi2 = sample(p.xi, rule.points).cwiseAbs2();
  const bool xi_face = interior || face.kind == FaceKind::Dirichlet;

  for (const SideTables& sv : sides) {
    const Eigen::MatrixXd vn = sg * sv.test.grad[ax];  // n . grad v
    for (const SideTables& su : sides) {
      const FieldTable& u = su.trial();
      Eigen::MatrixXd& a = rows.block(sv.element, su.element, sv.test.cols(), u.cols());
      if (cfg.terms.spatial_eta) {
        // -eta [[v]] . {grad u_t}
        a.noalias() -= (sv.jump * su.avg) * wgram(sv.test.val, w.cwiseProduct(eta), sg * u.grad_dt[ax]);
      }
      if (cfg.terms.spatial_xi && xi_face) {
        const Eigen::VectorXd wx = w.cwiseProduct(xi2);
        // -xi^2 [[v]] . {grad u}
        a.noalias() -= (sv.jump * su.avg) * wgram(sv.test.val, wx, sg * u.grad[ax]);
        if (symmetric_terms) {
          // -xi^2 [[u]] . {grad v} + beta2 xi^2 [[u]] . [[v]]
          a.noalias() -= (su.jump * sv.avg) * wgram(vn, wx, u.val);
          a.noalias() += (cfg.beta2 * sv.jump * su.jump) * wgram(sv.test.val, wx, u.val);
        }
      }
      if (cfg.terms.robin && face.kind == FaceKind::Robin) {
        const Eigen::VectorXd wk = w.cwiseProduct(xi2).cwiseProduct(sample(p.kappa, rule.points));
        a.noalias() += wgram(sv.test.val, wk, u.val);
      }
    }
  }

  if (!cfg.terms.rhs || interior) return;
  const SideTables& sv = sides.front();
  Eigen::VectorXd& b = rows.rhs(sv.element, sv.test.cols());
  const Eigen::VectorXd wx = w.cwiseProduct(xi2);
  switch (face.kind) {
    case FaceKind::Dirichlet:
      if (symmetric_terms) {
        const Eigen::VectorXd gd = wx.cwiseProduct(sample(p.g_D, rule.points, n));
        b.noalias() -= (sg * sv.test.grad[ax]).transpose() * gd;
        b.noalias() += cfg.beta2 * (sv.test.val.transpose() * gd);
      }
      break;
    case FaceKind::Neumann: b.noalias() += sv.test.val.transpose() * wx.cwiseProduct(sample(p.g_N, rule.points, n)); break;
    case FaceKind::Robin: b.noalias() += sv.test.val.transpose() * wx.cwiseProduct(sample(p.g_R, rule.points, n)); break;
    case FaceKind::Interior: break;
  }
}

// Slab-interface terms. The plus side ends at the node, the minus side starts there;
// [w] = w+ - w- inside, -w at t_0 and +w at t_N; {w} = mean inside, w at t_0 and t_N.
template <class Trial>
void add_temporal_dg(const TemporalInterface& tf, const DiscreteSpace& test, const Trial& trial,
                     const DvweProblem& p, const MethodConfig& cfg, bool full_dg, GalerkinRows& rows) {
  const QuadratureRule rule = face_rule(tf, cfg.quad_points);
  const Eigen::VectorXd& w = rule.weights;
  const bool inner = tf.kind == TemporalKind::Interior;
  const double avg = inner ? 0.5 : 1.0;

  std::vector<SideTables> sides;
  if (tf.plus_element >= 0) sides.push_back(make_side(tf.plus_element, 1.0, avg, test, trial, rule.points));
  if (tf.minus_element >= 0) sides.push_back(make_side(tf.minus_element, -1.0, avg, test, trial, rule.points));

  if (cfg.terms.temporal) {
    const bool not_final = tf.kind != TemporalKind::Final;
    const bool not_initial = tf.kind != TemporalKind::Initial;
    for (const SideTables& sv : sides) {
      for (const SideTables& su : sides) {
        const FieldTable& u = su.trial();
        Eigen::MatrixXd& a = rows.block(sv.element, su.element, sv.test.cols(), u.cols());
        if (full_dg && not_final) {
          a.noalias() += (sv.avg * su.jump) * wgram(sv.test.dt, w, u.val);                  // [u]{v_t}
          a.noalias() -= (cfg.beta1 * sv.jump * su.jump) * wgram(sv.test.val, w, u.val);   // -beta1 [u][v]
        }
        if (not_initial) a.noalias() += (sv.jump * su.avg) * wgram(sv.test.val, w, u.dt);  // [v]{u_t}
      }
    }
  }

  if (!cfg.terms.rhs || tf.kind != TemporalKind::Initial) return;
  const SideTables& sv = sides.front();
  Eigen::VectorXd& b = rows.rhs(sv.element, sv.test.cols());
  const Eigen::VectorXd wu0 = w.cwiseProduct(sample(p.u0, rule.points));
  const Eigen::VectorXd ww0 = w.cwiseProduct(sample(p.w0, rule.points));
  b.noalias() += w0_sign(cfg) * (sv.test.val.transpose() * ww0);
  if (full_dg) {
    b.noalias() -= sv.test.dt.transpose() * wu0;
    b.noalias() -= cfg.beta1 * (sv.test.val.transpose() * wu0);
  }
}

// Element-local boundary terms of the C1 weak form: -int (eta grad u_t + xi^2 grad u) . n_K v
// on the lateral boundary, with Neumann/Robin data substituted.
template <class Trial>
void add_spatial_face_c1(const SpatialFace& face, const DiscreteSpace& test, const Trial& trial,
                         const DvweProblem& p, const MethodConfig& cfg, GalerkinRows& rows) {
  const QuadratureRule rule = face_rule(face, cfg.quad_points);
  const Eigen::VectorXd& w = rule.weights;
  const int ax = face.axis;
  const Vec3 n = face.normal();
  const Eigen::VectorXd we = w.cwiseProduct(sample(p.eta, rule.points));
  const Eigen::VectorXd wx = w.cwiseProduct(sample(p.xi, rule.points).cwiseAbs2());

  auto own_traces = [&](int element, double sg) {
    SideTables s = make_side(element, 1.0, 1.0, test, trial, rule.points);
    const FieldTable& u = s.trial();
    Eigen::MatrixXd& a = rows.block(element, element, s.test.cols(), u.cols());
    if (cfg.terms.spatial_eta) a.noalias() -= wgram(s.test.val, we, sg * u.grad_dt[ax]);
    if (cfg.terms.spatial_xi) a.noalias() -= wgram(s.test.val, wx, sg * u.grad[ax]);
  };

  switch (face.kind) {
    case FaceKind::Interior:
      own_traces(face.plus_element, face.normal_sign);
      own_traces(face.minus_element, -face.normal_sign);
      return;
    case FaceKind::Dirichlet:
      own_traces(face.plus_element, face.normal_sign);
      return;
    case FaceKind::Neumann: {
      if (!cfg.terms.rhs) return;
      const Eigen::MatrixXd v = raw_eval(test, face.plus_element, rule.points).val;
      Eigen::VectorXd g = Eigen::VectorXd::Zero(w.size());
      if (cfg.terms.spatial_eta) g += we.cwiseProduct(sample(p.g_N_dt, rule.points, n));
      if (cfg.terms.spatial_xi) g += wx.cwiseProduct(sample(p.g_N, rule.points, n));
      rows.rhs(face.plus_element, v.cols()).noalias() += v.transpose() * g;
      return;
    }
    case FaceKind::Robin: {
      SideTables s = make_side(face.plus_element, 1.0, 1.0, test, trial, rule.points);
      const FieldTable& u = s.trial();
      const Eigen::VectorXd kap = sample(p.kappa, rule.points);
      if (cfg.terms.robin) {
        Eigen::MatrixXd& a = rows.block(s.element, s.element, s.test.cols(), u.cols());
        if (cfg.terms.spatial_eta) a.noalias() += wgram(s.test.val, we.cwiseProduct(kap), u.dt);
        if (cfg.terms.spatial_xi) a.noalias() += wgram(s.test.val, wx.cwiseProduct(kap), u.val);
      }
      if (cfg.terms.rhs) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(w.size());
        if (cfg.terms.spatial_eta) g += we.cwiseProduct(sample(p.g_R_dt, rule.points, n));
        if (cfg.terms.spatial_xi) g += wx.cwiseProduct(sample(p.g_R, rule.points, n));
        rows.rhs(s.element, s.test.cols()).noalias() += s.test.val.transpose() * g;
      }
      return;
    }
  }
}

// int_K u_t v |_{t_{i-1}}^{t_i} with own traces; w0 replaces u_t at t_0.
template <class Trial>
void add_temporal_c1(const TemporalInterface& tf, const DiscreteSpace& test, const Trial& trial,
                     const DvweProblem& p, const MethodConfig& cfg, GalerkinRows& rows) {
  const QuadratureRule rule = face_rule(tf, cfg.quad_points);
  const Eigen::VectorXd& w = rule.weights;
  if (tf.plus_element >= 0 && cfg.terms.temporal) {
    SideTables s = make_side(tf.plus_element, 1.0, 1.0, test, trial, rule.points);
    rows.block(s.element, s.element, s.test.cols(), s.trial().cols()).noalias() += wgram(s.test.val, w, s.trial().dt);
  }
  if (tf.minus_element < 0) return;
  if (tf.kind == TemporalKind::Initial) {
    if (!cfg.terms.rhs) return;
    const Eigen::MatrixXd v = raw_eval(test, tf.minus_element, rule.points).val;
    rows.rhs(tf.minus_element, v.cols()).noalias() +=
        w0_sign(cfg) * (v.transpose() * w.cwiseProduct(sample(p.w0, rule.points)));
  } else if (cfg.terms.temporal) {
    SideTables s = make_side(tf.minus_element, 1.0, 1.0, test, trial, rule.points);
    rows.block(s.element, s.element, s.test.cols(), s.trial().cols()).noalias() -= wgram(s.test.val, w, s.trial().dt);
  }
}

/// Constraint rows collected per face before being laid out below the Galerkin block.
struct ConstraintGroup {
  RowKind kind = RowKind::ConstraintSpatialC0;
  int owner = 0;
  std::vector<std::pair<int, Eigen::MatrixXd>> blocks;  // (trial element, rows x cols)
  Eigen::VectorXd rhs;
};

inline QuadratureRule collocation_rule(const Box& geometry, int count) {
  const int n = per_axis_count(count, geometry.active_dims());
  return embedded_tensor_rule(std::vector<int>(geometry.dims, n), geometry);
}

enum class Trace { Value, TimeDerivative };

template <class Trial>
std::vector<ConstraintGroup> constraint_rows(const SpaceTimeMesh& mesh, const Trial& trial, const DvweProblem& p,
                                             const MethodConfig& cfg, bool c1) {
  const int dim = mesh.dim();
  const double cw = cfg.constraint_weight;
  std::vector<ConstraintGroup> out;
  const auto& faces = mesh.spatial_faces();
  const auto& tfs = mesh.temporal_interfaces();

  auto spatial_jump = [&](RowKind kind, bool gradient) {
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
      const SpatialFace& f = faces[fi];
      if (!f.interior()) continue;
      const QuadratureRule r = collocation_rule(f.geometry, cfg.colloc_spatial);
      ConstraintGroup g{kind, fi, {}, {}};
      const Eigen::Index np = r.points.rows();
      const int comps = gradient ? dim : 1;
      g.rhs = Eigen::VectorXd::Zero(np * comps);
      for (const auto& [e, s] : {std::pair{f.plus_element, cw}, std::pair{f.minus_element, -cw}}) {
        const FieldTable t = trial.eval(e, r.points);
        Eigen::MatrixXd m(np * comps, t.cols());
        for (Eigen::Index q = 0; q < np; ++q) {
          for (int k = 0; k < comps; ++k) m.row(q * comps + k) = s * (gradient ? t.grad[k].row(q) : t.val.row(q));
        }
        g.blocks.emplace_back(e, std::move(m));
      }
      out.push_back(std::move(g));
    }
  };

  // later slab minus earlier slab
  auto temporal_jump = [&](RowKind kind, Trace trace) {
    for (int ti = 0; ti < static_cast<int>(tfs.size()); ++ti) {
      const TemporalInterface& tf = tfs[ti];
      if (tf.kind != TemporalKind::Interior) continue;
      const QuadratureRule r = collocation_rule(tf.geometry, cfg.colloc_temporal);
      ConstraintGroup g{kind, ti, {}, Eigen::VectorXd::Zero(r.points.rows())};
      for (const auto& [e, s] : {std::pair{tf.minus_element, cw}, std::pair{tf.plus_element, -cw}}) {
        const FieldTable t = trial.eval(e, r.points);
        g.blocks.emplace_back(e, s * (trace == Trace::Value ? t.val : t.dt));
      }
      out.push_back(std::move(g));
    }
  };

  spatial_jump(RowKind::ConstraintSpatialC0, false);
  temporal_jump(RowKind::ConstraintTemporalC0, Trace::Value);
  if (c1) {
    spatial_jump(RowKind::ConstraintSpatialC1, true);
    temporal_jump(RowKind::ConstraintTemporalC1, Trace::TimeDerivative);
  }

  for (int ti = 0; ti < static_cast<int>(tfs.size()); ++ti) {
    const TemporalInterface& tf = tfs[ti];
    if (tf.kind != TemporalKind::Initial) continue;
    const QuadratureRule r = collocation_rule(tf.geometry, cfg.colloc_initial);
    ConstraintGroup g{RowKind::ConstraintInitial, ti, {}, cw * sample(p.u0, r.points)};
    g.blocks.emplace_back(tf.minus_element, cw * trial.eval(tf.minus_element, r.points).val);
    out.push_back(std::move(g));
  }

  for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
    const SpatialFace& f = faces[fi];
    if (f.kind != FaceKind::Dirichlet) continue;
    const QuadratureRule r = collocation_rule(f.geometry, cfg.colloc_dirichlet);
    ConstraintGroup g{RowKind::ConstraintDirichlet, fi, {}, cw * sample(p.g_D, r.points, f.normal())};
    g.blocks.emplace_back(f.plus_element, cw * trial.eval(f.plus_element, r.points).val);
    out.push_back(std::move(g));
  }
  return out;
}

template <class Trial>
AssembledSystem finish(const SpaceTimeMesh& mesh, const DiscreteSpace& test, const Trial& trial, GalerkinRows& rows,
                       std::vector<ConstraintGroup> constraints) {
  AssembledSystem sys;
  const int ne = mesh.num_elements();
  sys.cols = trial.total();
  sys.col_offsets.resize(ne + 1);
  for (int e = 0; e < ne; ++e) sys.col_offsets[e] = trial.offset(e);
  sys.col_offsets[ne] = trial.total();

  Eigen::Index n_rows = test.total();
  for (const auto& g : constraints) n_rows += g.rhs.size();
  sys.rows = n_rows;
  sys.rhs = Eigen::VectorXd::Zero(n_rows);
  sys.tags.reserve(n_rows);

  for (int e = 0; e < ne; ++e) {
    const Eigen::Index r0 = test.offset(e);
    for (int i = 0; i < test.size(e); ++i) sys.tags.push_back({RowKind::Galerkin, e, i});
    if (rows.rhs_[e].size()) sys.rhs.segment(r0, test.size(e)) = rows.rhs_[e];
    auto& blocks = rows.blocks_[e];
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [tr, m] : blocks) sys.blocks.push_back({r0, trial.offset(tr), std::move(m)});
  }

  Eigen::Index r0 = test.total();
  for (auto& g : constraints) {
    const Eigen::Index nr = g.rhs.size();
    for (Eigen::Index i = 0; i < nr; ++i) sys.tags.push_back({g.kind, g.owner, static_cast<int>(i)});
    sys.rhs.segment(r0, nr) = g.rhs;
    for (auto& [e, m] : g.blocks) sys.blocks.push_back({r0, trial.offset(e), std::move(m)});
    r0 += nr;
  }
  return sys;
}

}  // namespace detail

/// Rows of any of the three schemes with `test` as test space and `trial` as trial space.
/// Trial is a DiscreteSpace (the usual square Galerkin block) or an ExactTrial.
template <class Trial>
AssembledSystem assemble_with(const SpaceTimeMesh& mesh, const DiscreteSpace& test, const Trial& trial,
                              const DvweProblem& problem, const MethodConfig& cfg) {
  validate(cfg);
  if (test.num_elements() != mesh.num_elements()) {
    fail(ErrorKind::DimensionMismatch, "one local space per element expected");
  }
  if (problem.dim != mesh.dim()) fail(ErrorKind::DimensionMismatch, "problem and mesh dimensions differ");
  detail::check_data(mesh, problem, cfg.scheme);

  detail::GalerkinRows rows(test, [&trial](int e) { return detail::transform_of(trial, e); });
  for (const auto& el : mesh.elements()) {
    detail::add_volume(el, test, trial, problem, cfg, mesh.dim(), rows);
    rows.flush();
  }

  std::vector<detail::ConstraintGroup> constraints;
  switch (cfg.scheme) {
    case Scheme::LrnnDg:
      for (const auto& f : mesh.spatial_faces()) {
        detail::add_spatial_face_dg(f, test, trial, problem, cfg, true, rows);
        rows.flush();
      }
      for (const auto& tf : mesh.temporal_interfaces()) {
        detail::add_temporal_dg(tf, test, trial, problem, cfg, true, rows);
        rows.flush();
      }
      break;
    case Scheme::LrnnC0Dg:
      for (const auto& f : mesh.spatial_faces()) {
        detail::add_spatial_face_dg(f, test, trial, problem, cfg, false, rows);
        rows.flush();
      }
      for (const auto& tf : mesh.temporal_interfaces()) {
        detail::add_temporal_dg(tf, test, trial, problem, cfg, false, rows);
        rows.flush();
      }
      constraints = detail::constraint_rows(mesh, trial, problem, cfg, false);
      break;
    case Scheme::LrnnC1Dg:
      for (const auto& f : mesh.spatial_faces()) {
        detail::add_spatial_face_c1(f, test, trial, problem, cfg, rows);
        rows.flush();
      }
      for (const auto& tf : mesh.temporal_interfaces()) {
        detail::add_temporal_c1(tf, test, trial, problem, cfg, rows);
        rows.flush();
      }
      constraints = detail::constraint_rows(mesh, trial, problem, cfg, true);
      break;
  }
  return detail::finish(mesh, test, trial, rows, std::move(constraints));
}

inline AssembledSystem assemble(const SpaceTimeMesh& mesh, const DiscreteSpace& space, const DvweProblem& problem,
                                const MethodConfig& cfg) {
  return assemble_with(mesh, space, space, problem, cfg);
}

inline AssembledSystem assemble_lrnn_dg(const SpaceTimeMesh& mesh, const DiscreteSpace& space,
                                        const DvweProblem& problem, MethodConfig cfg) {
  cfg.scheme = Scheme::LrnnDg;
  return assemble(mesh, space, problem, cfg);
}

inline AssembledSystem assemble_lrnn_c0dg(const SpaceTimeMesh& mesh, const DiscreteSpace& space,
                                          const DvweProblem& problem, MethodConfig cfg) {
  cfg.scheme = Scheme::LrnnC0Dg;
  return assemble(mesh, space, problem, cfg);
}

inline AssembledSystem assemble_lrnn_c1dg(const SpaceTimeMesh& mesh, const DiscreteSpace& space,
                                          const DvweProblem& problem, MethodConfig cfg) {
  cfg.scheme = Scheme::LrnnC1Dg;
  return assemble(mesh, space, problem, cfg);
}

struct ConsistencyReport {
  double max_normalized = 0.0;
  Eigen::VectorXd residual;  // B(u*, v_i) - l(v_i) over Galerkin rows
};

/// Galerkin rows evaluated on the exact solution: max_i |B(u*, v_i) - l(v_i)| / max(|B|, |l|, 1).
inline ConsistencyReport consistency_residual(const SpaceTimeMesh& mesh, const DiscreteSpace& space,
                                              const DvweProblem& problem, const MethodConfig& cfg) {
  if (!problem.has_exact()) fail(ErrorKind::ExactSolutionMissing, "consistency check needs an exact solution");
  const ExactTrial exact{problem.exact, mesh.dim(), mesh.num_elements()};
  const AssembledSystem sys = assemble_with(mesh, space, exact, problem, cfg);
  const Eigen::Index ng = space.total();
  const Eigen::VectorXd b = sys.apply(Eigen::VectorXd::Ones(sys.cols)).head(ng);
  const Eigen::VectorXd l = sys.rhs.head(ng);
  ConsistencyReport r;
  r.residual = b - l;
  for (Eigen::Index i = 0; i < ng; ++i) {
    const double scale = std::max({std::abs(b(i)), std::abs(l(i)), 1.0});
    r.max_normalized = std::max(r.max_normalized, std::abs(r.residual(i)) / scale);
  }
  return r;
}

}  // namespace lrnn
