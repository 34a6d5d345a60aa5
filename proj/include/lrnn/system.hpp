#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lrnn/error.hpp"

namespace lrnn {

enum class RowKind {
  Galerkin,
  ConstraintSpatialC0,
  ConstraintTemporalC0,
  ConstraintSpatialC1,
  ConstraintTemporalC1,
  ConstraintInitial,
  ConstraintDirichlet,
};

inline std::string_view to_string(RowKind k) {
  switch (k) {
    case RowKind::Galerkin: return "galerkin";
    case RowKind::ConstraintSpatialC0: return "spatial-c0";
    case RowKind::ConstraintTemporalC0: return "temporal-c0";
    case RowKind::ConstraintSpatialC1: return "spatial-c1";
    case RowKind::ConstraintTemporalC1: return "temporal-c1";
    case RowKind::ConstraintInitial: return "initial";
    case RowKind::ConstraintDirichlet: return "dirichlet";
  }
  return "unknown";
}

/// Galerkin rows: owner = test element, index = test function.
/// Constraint rows: owner = spatial face or temporal interface id, index = point (times
/// component count for vector conditions).
struct RowTag {
  RowKind kind = RowKind::Galerkin;
  int owner = 0;
  int index = 0;
};

/// Dense block of the global matrix anchored at (row0, col0). Blocks never overlap.
struct MatrixBlock {
  Eigen::Index row0 = 0;
  Eigen::Index col0 = 0;
  Eigen::MatrixXd values;
};

/// Global least-squares system stored as non-overlapping dense blocks. Column block e
/// starts at col_offsets[e]; Galerkin rows come first, constraint rows follow.
struct AssembledSystem {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<Eigen::Index> col_offsets;  // size N_e + 1
  std::vector<MatrixBlock> blocks;
  Eigen::VectorXd rhs;
  std::vector<RowTag> tags;

  Eigen::Index galerkin_rows() const {
    Eigen::Index n = 0;
    for (const auto& t : tags) n += t.kind == RowKind::Galerkin ? 1 : 0;
    return n;
  }

  Eigen::Index nonzeros() const {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.values.size();
    return n;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& b : blocks) a.block(b.row0, b.col0, b.values.rows(), b.values.cols()) += b.values;
    return a;
  }

  Eigen::SparseMatrix<double> to_sparse() const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(nonzeros()));
    for (const auto& b : blocks) {
      for (Eigen::Index j = 0; j < b.values.cols(); ++j) {
        for (Eigen::Index i = 0; i < b.values.rows(); ++i) {
          const double v = b.values(i, j);
          if (v != 0.0) trip.emplace_back(b.row0 + i, b.col0 + j, v);
        }
      }
    }
    Eigen::SparseMatrix<double> a(rows, cols);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    if (x.size() != cols) fail(ErrorKind::DimensionMismatch, "apply: vector length differs from column count");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
    for (const auto& b : blocks) {
      y.segment(b.row0, b.values.rows()).noalias() += b.values * x.segment(b.col0, b.values.cols());
    }
    return y;
  }

  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& y) const {
    if (y.size() != rows) fail(ErrorKind::DimensionMismatch, "apply_transpose: vector length differs from row count");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
    for (const auto& b : blocks) {
      x.segment(b.col0, b.values.cols()).noalias() += b.values.transpose() * y.segment(b.row0, b.values.rows());
    }
    return x;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const { return apply(x) - rhs; }

  /// Blocks of each column block (element), ordered by first row.
  std::vector<std::vector<const MatrixBlock*>> blocks_by_column() const {
    std::vector<std::vector<const MatrixBlock*>> out(col_offsets.empty() ? 0 : col_offsets.size() - 1);
    for (const auto& b : blocks) {
      const auto e = std::upper_bound(col_offsets.begin(), col_offsets.end(), b.col0) - col_offsets.begin() - 1;
      out[static_cast<std::size_t>(e)].push_back(&b);
    }
    for (auto& v : out) {
      std::sort(v.begin(), v.end(), [](const MatrixBlock* a, const MatrixBlock* b) { return a->row0 < b->row0; });
    }
    return out;
  }

  bool all_finite() const {
    for (const auto& b : blocks) {
      if (!b.values.allFinite()) return false;
    }
    return rhs.allFinite();
  }
};

/// Text dump: "rows cols" header, then one matrix row per line, optionally followed by the
/// rhs entry as an extra column.
inline void write_system(std::ostream& os, const AssembledSystem& sys, bool with_rhs) {
  const Eigen::MatrixXd a = sys.to_dense();
  os << a.rows() << ' ' << (a.cols() + (with_rhs ? 1 : 0)) << '\n';
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      os << a(i, j);
    }
    if (with_rhs) os << ' ' << sys.rhs(i);
    os << '\n';
  }
}

}  // namespace lrnn
