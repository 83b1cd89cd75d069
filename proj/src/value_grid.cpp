#include "mgrid/value_grid.hpp"

#include <algorithm>
#include <cmath>

namespace mgrid {

ValueGrid::ValueGrid(int horizon, int dims, GridAxis axis_b, GridAxis axis_h)
    : horizon_(horizon), dims_(dims), axis_b_(axis_b), axis_h_(axis_h) {
  if (horizon < 1) throw Error(ErrorCode::invalid_argument, "horizon < 1");
  if (dims != 1 && dims != 2)
    throw Error(ErrorCode::invalid_argument, "grid dims must be 1 or 2");
  if (axis_h_.points < 2 || (dims == 2 && axis_b_.points < 2))
    throw Error(ErrorCode::invalid_argument, "grid needs >= 2 points per axis");
  values_.assign(size_t(horizon + 1),
                 std::vector<double>(size_t(points_per_stage()), 0.0));
}

namespace {

// Index and fractional weight along one axis; weight is exactly 0 at grid
// points so a sentinel neighbor cannot leak into on-grid evaluations.
inline void locate(const GridAxis& ax, double x, bool clamp, int& i0,
                   double& frac) {
  double lo = ax.lo, hi = ax.hi;
  if (x < lo || x > hi) {
    if (!clamp && (x < lo - 1e-9 || x > hi + 1e-9))
      throw Error(ErrorCode::invalid_argument, "state outside grid box");
    x = std::clamp(x, lo, hi);
  }
  double u = (x - lo) / ax.step();
  i0 = int(std::floor(u));
  if (i0 >= ax.points - 1) i0 = ax.points - 2;
  if (i0 < 0) i0 = 0;
  frac = u - double(i0);
  if (frac < 0.0) frac = 0.0;
  if (frac > 1.0) frac = 1.0;
}

inline double mix(double a, double b, double w) {
  if (w == 0.0) return a;
  if (w == 1.0) return b;
  return (1.0 - w) * a + w * b;
}

}  // namespace

double ValueGrid::eval(int t, double b, double h, bool clamp) const {
  int ih;
  double fh;
  locate(axis_h_, h, clamp, ih, fh);
  if (dims_ == 1) {
    return mix(at(t, 0, ih), at(t, 0, ih + 1), fh);
  }
  int ib;
  double fb;
  locate(axis_b_, b, clamp, ib, fb);
  double v0 = mix(at(t, ib, ih), at(t, ib, ih + 1), fh);
  double v1 = mix(at(t, ib + 1, ih), at(t, ib + 1, ih + 1), fh);
  return mix(v0, v1, fb);
}

}  // namespace mgrid
