#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mgrid {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error codes shared with the C API (see include/mgrid.h).
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  invalid_config = 2,
  infeasible = 3,
  numeric_failure = 4,
  io_failure = 5,
  too_large = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Sentinel for infeasible grid points; grids must stay total.
inline constexpr double kInfeasibleValue = 1e9;

inline bool is_infeasible_value(double v) { return v >= 0.5 * kInfeasibleValue; }

// Flat index for (stage, node) vectors laid out stage-major.
inline int stage_node_index(int t, int node, int n_nodes) {
  return t * n_nodes + node;
}

}  // namespace mgrid
