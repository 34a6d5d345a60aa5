#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace lrnn {

inline constexpr int kMaxSpaceDim = 3;
inline constexpr int kMaxBoxDim = kMaxSpaceDim + 1;

/// Axis-aligned box of up to four dimensions. In space-time boxes axis 0 is time.
/// An axis with lo == hi is degenerate (a face's fixed coordinate).
struct Box {
  int dims = 0;
  std::array<double, kMaxBoxDim> lo{};
  std::array<double, kMaxBoxDim> hi{};

  double extent(int axis) const { return hi[axis] - lo[axis]; }
  bool degenerate(int axis) const { return !(hi[axis] > lo[axis]); }

  /// Product of non-degenerate extents.
  double measure() const {
    double m = 1.0;
    for (int a = 0; a < dims; ++a) {
      if (!degenerate(a)) m *= extent(a);
    }
    return m;
  }

  int active_dims() const {
    int n = 0;
    for (int a = 0; a < dims; ++a) n += degenerate(a) ? 0 : 1;
    return n;
  }

  double diameter() const {
    double s = 0.0;
    for (int a = 0; a < dims; ++a) s += extent(a) * extent(a);
    return std::sqrt(s);
  }
};

}  // namespace lrnn
