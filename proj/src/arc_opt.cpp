#include "mgrid/arc_opt.hpp"

#include <Eigen/QR>

namespace mgrid {

ArcPriceSolution solve_arc_price(const std::vector<ArcCost>& costs,
                                 const Vec& p_stage_major,
                                 const NetworkTopology& topology, int horizon) {
  const int n = topology.n_nodes();
  const int na = topology.n_arcs();
  if (int(costs.size()) != na)
    throw Error(ErrorCode::invalid_argument, "arc cost count mismatch");
  if (p_stage_major.size() != long(horizon) * n)
    throw Error(ErrorCode::invalid_argument, "price vector length mismatch");
  ArcPriceSolution sol;
  sol.flows = Mat::Zero(horizon, na);
  sol.stage_values = Vec::Zero(horizon);
  for (int t = 0; t < horizon; ++t) {
    Vec p_t = p_stage_major.segment(long(t) * n, n);
    Vec beta = topology.incidence.transpose() * p_t;
    double stage = 0.0;
    for (int a = 0; a < na; ++a) {
      const ArcCost& c = costs[size_t(a)];
      c.validate();
      double coef = c.c1 + beta(a);
      double q = -coef / (2.0 * c.c2);
      sol.flows(t, a) = q;
      stage += c.eval(q) + beta(a) * q;
    }
    sol.stage_values(t) = stage;
    sol.value += stage;
  }
  return sol;
}

ArcResourceStage solve_arc_resource_stage(const std::vector<ArcCost>& costs,
                                          const NetworkTopology& topology,
                                          const Vec& r_t) {
  const int n = topology.n_nodes();
  const int na = topology.n_arcs();
  if (r_t.size() != n)
    throw Error(ErrorCode::invalid_argument, "resource vector length mismatch");
  double scale = 1.0 + r_t.cwiseAbs().maxCoeff();
  if (std::abs(r_t.sum()) > 1e-9 * scale)
    throw Error(ErrorCode::infeasible,
                "resource not in im(C): per-stage node sum is nonzero");

  const Mat& C = topology.incidence;
  Vec dinv(na), c1(na);
  for (int a = 0; a < na; ++a) {
    costs[size_t(a)].validate();
    dinv(a) = 1.0 / (2.0 * costs[size_t(a)].c2);
    c1(a) = costs[size_t(a)].c1;
  }
  Mat lap = C * dinv.asDiagonal() * C.transpose();
  Vec rhs = r_t - C * dinv.cwiseProduct(c1);

  // Minimum-norm solution is orthogonal to ker(L) = span(1), which fixes
  // the zero-sum gauge on xi.
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(lap);
  ArcResourceStage out;
  out.xi = cod.solve(rhs);
  out.xi.array() -= out.xi.mean();  // exact gauge against numerical drift
  out.q = -dinv.cwiseProduct(c1 + C.transpose() * out.xi);
  Vec residual = C * out.q + r_t;
  if (residual.cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw Error(ErrorCode::numeric_failure,
                "arc resource KKT residual too large");
  out.value = 0.0;
  for (int a = 0; a < na; ++a) out.value += costs[size_t(a)].eval(out.q(a));
  return out;
}

ArcResourceSolution solve_arc_resource(const std::vector<ArcCost>& costs,
                                       const Vec& r_stage_major,
                                       const NetworkTopology& topology,
                                       int horizon) {
  const int n = topology.n_nodes();
  if (r_stage_major.size() != long(horizon) * n)
    throw Error(ErrorCode::invalid_argument, "resource vector length mismatch");
  ArcResourceSolution sol;
  sol.flows = Mat::Zero(horizon, topology.n_arcs());
  sol.xi = Mat::Zero(horizon, n);
  sol.stage_values = Vec::Zero(horizon);
  for (int t = 0; t < horizon; ++t) {
    ArcResourceStage st = solve_arc_resource_stage(
        costs, topology, r_stage_major.segment(long(t) * n, n));
    sol.flows.row(t) = st.q.transpose();
    sol.xi.row(t) = st.xi.transpose();
    sol.stage_values(t) = st.value;
    sol.value += st.value;
  }
  return sol;
}

}  // namespace mgrid
