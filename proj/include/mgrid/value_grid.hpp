#pragma once

#include <vector>

#include "mgrid/common.hpp"

namespace mgrid {

struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  double step() const { return (hi - lo) / double(points - 1); }
  double coord(int i) const { return lo + step() * double(i); }
};

/// Per-stage tabulated value function over a 1-D (h) or 2-D (b,h) state box
/// with multilinear interpolation. Stage index runs 0..T inclusive.
class ValueGrid {
 public:
  ValueGrid() = default;
  ValueGrid(int horizon, int dims, GridAxis axis_b, GridAxis axis_h);

  int horizon() const { return horizon_; }
  int dims() const { return dims_; }
  const GridAxis& axis_b() const { return axis_b_; }
  const GridAxis& axis_h() const { return axis_h_; }
  int points_per_stage() const {
    return dims_ == 2 ? axis_b_.points * axis_h_.points : axis_h_.points;
  }

  double& at(int t, int ib, int ih) {
    return values_[size_t(t)][size_t(flat(ib, ih))];
  }
  double at(int t, int ib, int ih) const {
    return values_[size_t(t)][size_t(flat(ib, ih))];
  }
  std::vector<double>& stage(int t) { return values_[size_t(t)]; }
  const std::vector<double>& stage(int t) const { return values_[size_t(t)]; }

  // Multilinear interpolation; exact at grid points. States outside the box
  // are clamped to it when clamp is true, otherwise rejected.
  double eval(int t, double b, double h, bool clamp = true) const;
  double eval1(int t, double h, bool clamp = true) const { return eval(t, 0.0, h, clamp); }

 private:
  int flat(int ib, int ih) const {
    return dims_ == 2 ? ib * axis_h_.points + ih : ih;
  }
  int horizon_ = 0;
  int dims_ = 1;
  GridAxis axis_b_, axis_h_;
  std::vector<std::vector<double>> values_;
};

}  // namespace mgrid
