#pragma once

#include <string>

#include "mgrid/common.hpp"

namespace mgrid {

/// Dense convex quadratic program
///   min 1/2 z' diag(q_diag) z + g' z   s.t.  A z = b,  G z <= h.
/// q_diag must be componentwise >= 0.
struct QpProblem {
  Vec q_diag;
  Vec g;
  Mat A;
  Vec b;
  Mat G;
  Vec h;

  int n() const { return int(g.size()); }
  int n_eq() const { return int(b.size()); }
  int n_ineq() const { return int(h.size()); }
};

struct QpOptions {
  int max_iterations = 80;
  double tolerance = 1e-10;  // relative KKT tolerance
};

struct QpResult {
  bool ok = false;
  std::string message;
  Vec z;
  Vec y;       // equality multipliers, gradient convention d(value)/db = -y
  Vec lambda;  // inequality multipliers, >= 0
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

// Primal-dual interior point (Mehrotra predictor-corrector).
QpResult solve_qp(const QpProblem& p, const QpOptions& opts = {});

}  // namespace mgrid
