#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "lrnn/error.hpp"
#include "lrnn/geometry.hpp"

namespace lrnn {

enum class BoundaryKind { Dirichlet, Neumann, Robin };
enum class FaceKind { Interior, Dirichlet, Neumann, Robin };
enum class TemporalKind { Initial, Interior, Final };

inline FaceKind to_face_kind(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Dirichlet: return FaceKind::Dirichlet;
    case BoundaryKind::Neumann: return FaceKind::Neumann;
    case BoundaryKind::Robin: return FaceKind::Robin;
  }
  return FaceKind::Dirichlet;
}

/// Boundary condition type of each box facet, indexed by 2 * axis + side (side 0 = lower).
struct BoundaryPartitionSpec {
  std::array<BoundaryKind, 2 * kMaxSpaceDim> facets{};

  static BoundaryPartitionSpec all(BoundaryKind kind) {
    BoundaryPartitionSpec spec;
    spec.facets.fill(kind);
    return spec;
  }

  BoundaryKind facet(int axis, int side) const { return facets[2 * axis + side]; }

  BoundaryPartitionSpec& set(int axis, int side, BoundaryKind kind) {
    facets[2 * axis + side] = kind;
    return *this;
  }
};

struct BoxDomain {
  int dim = 1;
  std::array<double, kMaxSpaceDim> lower{};
  std::array<double, kMaxSpaceDim> upper{};

  static BoxDomain unit(int dim) {
    BoxDomain d;
    d.dim = dim;
    for (int a = 0; a < dim; ++a) d.upper[a] = 1.0;
    return d;
  }
};

namespace detail {

inline std::vector<double> uniform_nodes(double lo, double hi, int n) {
  std::vector<double> nodes(n + 1);
  for (int i = 0; i <= n; ++i) nodes[i] = lo + (hi - lo) * static_cast<double>(i) / n;
  nodes[n] = hi;
  return nodes;
}

// Interval containing v; points on an internal node go to the lower interval.
inline int locate_interval(const std::vector<double>& nodes, double v) {
  const int n = static_cast<int>(nodes.size()) - 1;
  const double eps = 1e-12 * (nodes.back() - nodes.front());
  auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), v - eps);
  int i = static_cast<int>(it - (nodes.begin() + 1));
  return std::clamp(i, 0, n - 1);
}

}  // namespace detail

struct TimePartition {
  std::vector<double> nodes;
  double tau = 0.0;

  int num_intervals() const { return static_cast<int>(nodes.size()) - 1; }
  double final_time() const { return nodes.back(); }

  static TimePartition uniform(double T, int n) {
    if (n < 1) fail(ErrorKind::InvalidCount, "time partition needs at least one interval");
    if (!(T > 0.0)) fail(ErrorKind::InvalidDomain, "final time must be positive");
    TimePartition p;
    p.nodes = detail::uniform_nodes(0.0, T, n);
    for (int i = 1; i <= n; ++i) p.tau = std::max(p.tau, p.nodes[i] - p.nodes[i - 1]);
    return p;
  }
};

struct SpatialGrid {
  int dim = 1;
  std::array<double, kMaxSpaceDim> lower{};
  std::array<double, kMaxSpaceDim> upper{};
  std::array<int, kMaxSpaceDim> cells{1, 1, 1};
  std::array<std::vector<double>, kMaxSpaceDim> nodes;
  double h = 0.0;  // max cell diameter

  int num_cells() const {
    int n = 1;
    for (int a = 0; a < dim; ++a) n *= cells[a];
    return n;
  }

  double width(int axis) const { return (upper[axis] - lower[axis]) / cells[axis]; }

  double max_width() const {
    double w = 0.0;
    for (int a = 0; a < dim; ++a) w = std::max(w, width(a));
    return w;
  }

  int stride(int axis) const {
    int s = 1;
    for (int a = 0; a < axis; ++a) s *= cells[a];
    return s;
  }

  std::array<int, kMaxSpaceDim> multi_index(int cell) const {
    std::array<int, kMaxSpaceDim> idx{};
    for (int a = 0; a < dim; ++a) {
      idx[a] = cell % cells[a];
      cell /= cells[a];
    }
    return idx;
  }

  int linear_index(const std::array<int, kMaxSpaceDim>& idx) const {
    int c = 0;
    for (int a = dim - 1; a >= 0; --a) c = c * cells[a] + idx[a];
    return c;
  }
};

struct SpaceTimeElement {
  int id = 0;
  int time_index = 0;
  int cell = 0;
  std::array<int, kMaxSpaceDim> cell_index{};
  Box bounds;  // dims = d + 1, axis 0 is time
};

/// Spatial face times one time slab. The plus side is the lower-index cell; on the
/// boundary it is the only adjacent cell. normal_sign * e_axis is the plus side's outward normal.
struct SpatialFace {
  int time_index = 0;
  int axis = 0;  // spatial axis of the normal
  double position = 0.0;
  FaceKind kind = FaceKind::Interior;
  int plus_element = -1;
  int minus_element = -1;
  int normal_sign = 1;
  Box geometry;  // space-time box with axis + 1 degenerate

  bool interior() const { return kind == FaceKind::Interior; }

  std::array<double, kMaxSpaceDim> normal() const {
    std::array<double, kMaxSpaceDim> n{};
    n[axis] = static_cast<double>(normal_sign);
    return n;
  }
};

/// {t_k} x K. The plus element is the slab ending at t_k and the minus element the slab
/// starting there, so +e_t is the plus side's outward normal (as for spatial faces).
/// Only the minus element exists at t_0 and only the plus element at t_{N_t}.
struct TemporalInterface {
  int node = 0;
  int cell = 0;
  TemporalKind kind = TemporalKind::Interior;
  double time = 0.0;
  int plus_element = -1;
  int minus_element = -1;
  Box geometry;  // space-time box with axis 0 degenerate
};

struct FaceRef {
  int face = 0;
  bool plus = true;  // element sits on the plus side of the face
};

class SpaceTimeMesh {
 public:
  SpaceTimeMesh() = default;

  int dim() const { return grid_.dim; }
  const TimePartition& time() const { return time_; }
  const SpatialGrid& grid() const { return grid_; }
  const BoundaryPartitionSpec& boundary() const { return boundary_; }

  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_slabs() const { return time_.num_intervals(); }
  int num_cells() const { return grid_.num_cells(); }
  const std::vector<SpaceTimeElement>& elements() const { return elements_; }
  const SpaceTimeElement& element(int id) const { return elements_.at(id); }
  int element_id(int slab, int cell) const { return slab * grid_.num_cells() + cell; }

  const std::vector<SpatialFace>& spatial_faces() const { return spatial_faces_; }
  const std::vector<TemporalInterface>& temporal_interfaces() const { return temporal_; }
  const std::vector<FaceRef>& element_faces(int id) const { return element_faces_.at(id); }

  /// Space-time bounding box of the whole domain.
  Box domain_box() const {
    Box b;
    b.dims = dim() + 1;
    b.lo[0] = time_.nodes.front();
    b.hi[0] = time_.nodes.back();
    for (int a = 0; a < dim(); ++a) {
      b.lo[a + 1] = grid_.lower[a];
      b.hi[a + 1] = grid_.upper[a];
    }
    return b;
  }

  /// Element containing (t, x...). Points on internal interfaces resolve to the lower slab/cell.
  const SpaceTimeElement& locate(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim() + 1) {
      fail(ErrorKind::DimensionMismatch, "locate: point must have d + 1 coordinates");
    }
    const Box box = domain_box();
    for (int a = 0; a <= dim(); ++a) {
      const double tol = 1e-12 * box.extent(a);
      if (!(point[a] >= box.lo[a] - tol && point[a] <= box.hi[a] + tol)) {
        fail(ErrorKind::OutOfDomain, "locate: point outside the space-time domain");
      }
    }
    const int slab = detail::locate_interval(time_.nodes, point[0]);
    std::array<int, kMaxSpaceDim> idx{};
    for (int a = 0; a < dim(); ++a) idx[a] = detail::locate_interval(grid_.nodes[a], point[a + 1]);
    return elements_[element_id(slab, grid_.linear_index(idx))];
  }

  friend SpaceTimeMesh build_mesh(const BoxDomain&, double, int, const std::array<int, kMaxSpaceDim>&,
                                  const BoundaryPartitionSpec&);

 private:
  TimePartition time_;
  SpatialGrid grid_;
  BoundaryPartitionSpec boundary_;
  std::vector<SpaceTimeElement> elements_;
  std::vector<SpatialFace> spatial_faces_;
  std::vector<TemporalInterface> temporal_;
  std::vector<std::vector<FaceRef>> element_faces_;
};

/// Uniform space-time tensor mesh of a box. Only the first domain.dim entries of `cells` are used.
inline SpaceTimeMesh build_mesh(const BoxDomain& domain, double T, int num_slabs,
                                const std::array<int, kMaxSpaceDim>& cells,
                                const BoundaryPartitionSpec& boundary) {
  const int d = domain.dim;
  if (d < 1 || d > kMaxSpaceDim) fail(ErrorKind::InvalidDomain, "spatial dimension must be 1, 2 or 3");
  for (int a = 0; a < d; ++a) {
    if (!(domain.upper[a] > domain.lower[a])) {
      fail(ErrorKind::InvalidDomain, "domain extent must be positive along axis " + std::to_string(a));
    }
    if (cells[a] < 1) fail(ErrorKind::InvalidCount, "cell count must be >= 1 along axis " + std::to_string(a));
  }

  SpaceTimeMesh mesh;
  mesh.time_ = TimePartition::uniform(T, num_slabs);
  mesh.boundary_ = boundary;

  SpatialGrid& g = mesh.grid_;
  g.dim = d;
  for (int a = 0; a < d; ++a) {
    g.lower[a] = domain.lower[a];
    g.upper[a] = domain.upper[a];
    g.cells[a] = cells[a];
    g.nodes[a] = detail::uniform_nodes(domain.lower[a], domain.upper[a], cells[a]);
  }
  {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += g.width(a) * g.width(a);
    g.h = std::sqrt(s);
  }

  const int ns = g.num_cells();
  const int nt = num_slabs;
  const auto& tn = mesh.time_.nodes;

  mesh.elements_.resize(static_cast<std::size_t>(nt) * ns);
  for (int i = 0; i < nt; ++i) {
    for (int c = 0; c < ns; ++c) {
      SpaceTimeElement& e = mesh.elements_[mesh.element_id(i, c)];
      e.id = mesh.element_id(i, c);
      e.time_index = i;
      e.cell = c;
      e.cell_index = g.multi_index(c);
      e.bounds.dims = d + 1;
      e.bounds.lo[0] = tn[i];
      e.bounds.hi[0] = tn[i + 1];
      for (int a = 0; a < d; ++a) {
        e.bounds.lo[a + 1] = g.nodes[a][e.cell_index[a]];
        e.bounds.hi[a + 1] = g.nodes[a][e.cell_index[a] + 1];
      }
    }
  }

  mesh.element_faces_.assign(mesh.elements_.size(), {});
  auto add_face = [&](SpatialFace f) {
    const int idx = static_cast<int>(mesh.spatial_faces_.size());
    mesh.element_faces_[f.plus_element].push_back({idx, true});
    if (f.minus_element >= 0) mesh.element_faces_[f.minus_element].push_back({idx, false});
    mesh.spatial_faces_.push_back(f);
  };

  for (int i = 0; i < nt; ++i) {
    for (int a = 0; a < d; ++a) {
      for (int c = 0; c < ns; ++c) {
        const SpaceTimeElement& e = mesh.elements_[mesh.element_id(i, c)];
        auto face_at = [&](int node_index) {
          SpatialFace f;
          f.time_index = i;
          f.axis = a;
          f.position = g.nodes[a][node_index];
          f.geometry = e.bounds;
          f.geometry.lo[a + 1] = f.position;
          f.geometry.hi[a + 1] = f.position;
          return f;
        };
        const int k = e.cell_index[a];
        if (k == 0) {
          SpatialFace f = face_at(0);
          f.kind = to_face_kind(boundary.facet(a, 0));
          f.plus_element = e.id;
          f.normal_sign = -1;
          add_face(f);
        } else {
          SpatialFace f = face_at(k);
          f.kind = FaceKind::Interior;
          f.plus_element = mesh.element_id(i, c - g.stride(a));
          f.minus_element = e.id;
          f.normal_sign = 1;
          add_face(f);
        }
        if (k == g.cells[a] - 1) {
          SpatialFace f = face_at(k + 1);
          f.kind = to_face_kind(boundary.facet(a, 1));
          f.plus_element = e.id;
          f.normal_sign = 1;
          add_face(f);
        }
      }
    }
  }

  for (int k = 0; k <= nt; ++k) {
    for (int c = 0; c < ns; ++c) {
      TemporalInterface f;
      f.node = k;
      f.cell = c;
      f.time = tn[k];
      f.kind = k == 0 ? TemporalKind::Initial : (k == nt ? TemporalKind::Final : TemporalKind::Interior);
      f.plus_element = k > 0 ? mesh.element_id(k - 1, c) : -1;
      f.minus_element = k < nt ? mesh.element_id(k, c) : -1;
      f.geometry = mesh.elements_[mesh.element_id(std::min(k, nt - 1), c)].bounds;
      f.geometry.lo[0] = tn[k];
      f.geometry.hi[0] = tn[k];
      mesh.temporal_.push_back(f);
    }
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// Trace operators

struct ScalarTrace {
  std::array<double, kMaxSpaceDim> jump{};  // [[v]] = v+ n+ + v- n-
  double average = 0.0;                     // {v}
};

struct VectorTrace {
  double jump = 0.0;                           // [q] = q+ . n+ + q- . n-
  std::array<double, kMaxSpaceDim> average{};  // {q}
};

/// Interior face: n- = -n+.
inline ScalarTrace jump_average_spatial(double v_plus, double v_minus, std::span<const double> n_plus) {
  ScalarTrace r;
  for (std::size_t a = 0; a < n_plus.size(); ++a) r.jump[a] = (v_plus - v_minus) * n_plus[a];
  r.average = 0.5 * (v_plus + v_minus);
  return r;
}

inline VectorTrace jump_average_spatial(std::span<const double> q_plus, std::span<const double> q_minus,
                                        std::span<const double> n_plus) {
  if (q_plus.size() != n_plus.size() || q_minus.size() != n_plus.size()) {
    fail(ErrorKind::DimensionMismatch, "jump_average_spatial: vector sizes differ");
  }
  VectorTrace r;
  for (std::size_t a = 0; a < n_plus.size(); ++a) {
    r.jump += (q_plus[a] - q_minus[a]) * n_plus[a];
    r.average[a] = 0.5 * (q_plus[a] + q_minus[a]);
  }
  return r;
}

/// Boundary face: [[v]] = v n, {v} = v.
inline ScalarTrace jump_average_boundary(double v, std::span<const double> n) {
  ScalarTrace r;
  for (std::size_t a = 0; a < n.size(); ++a) r.jump[a] = v * n[a];
  r.average = v;
  return r;
}

/// Boundary face: {q} = q; the jump slot carries the one-sided flux q . n.
inline VectorTrace jump_average_boundary(std::span<const double> q, std::span<const double> n) {
  if (q.size() != n.size()) fail(ErrorKind::DimensionMismatch, "jump_average_boundary: vector sizes differ");
  VectorTrace r;
  for (std::size_t a = 0; a < n.size(); ++a) {
    r.jump += q[a] * n[a];
    r.average[a] = q[a];
  }
  return r;
}

struct TemporalTrace {
  double jump = 0.0;
  double average = 0.0;
};

/// w_plus is the trace from the slab ending at the node, w_minus from the slab starting there.
/// At t_0 only w_minus is read ([w] = -w), at t_N only w_plus ([w] = w).
inline TemporalTrace jump_average_temporal(double w_plus, double w_minus, TemporalKind kind) {
  switch (kind) {
    case TemporalKind::Initial: return {-w_minus, w_minus};
    case TemporalKind::Final: return {w_plus, w_plus};
    case TemporalKind::Interior: return {w_plus - w_minus, 0.5 * (w_plus + w_minus)};
  }
  return {};
}

}  // namespace lrnn
