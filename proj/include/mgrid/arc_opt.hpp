#pragma once

#include <vector>

#include "mgrid/common.hpp"
#include "mgrid/network.hpp"

namespace mgrid {

/// Quadratic transport cost c2 q^2 + c1 q + c0 per arc, stationary in time.
struct ArcCost {
  double c2 = 0.1;
  double c1 = 0.01;
  double c0 = 0.0;

  double eval(double q) const { return (c2 * q + c1) * q + c0; }
  void validate() const {
    if (c2 <= 0.0)
      throw Error(ErrorCode::invalid_config, "arc cost needs c2 > 0");
  }
};

struct ArcPriceSolution {
  Mat flows;        // T x |A|
  Vec stage_values; // includes the <C'p, q> coupling term
  double value = 0.0;
};

// Separable analytic minimization of sum_a l(q) + <C' p_t, q> per stage.
ArcPriceSolution solve_arc_price(const std::vector<ArcCost>& costs,
                                 const Vec& p_stage_major,
                                 const NetworkTopology& topology, int horizon);

struct ArcResourceStage {
  Vec q;            // |A| flows
  Vec xi;           // |N| multipliers, zero-sum gauge; xi = d(value)/d r_t
  double value = 0.0;
};

// min sum_a l(q) s.t. C q = -r_t, via the weighted-Laplacian normal
// equations; the one-dimensional multiplier gauge is fixed by sum(xi)=0.
ArcResourceStage solve_arc_resource_stage(const std::vector<ArcCost>& costs,
                                          const NetworkTopology& topology,
                                          const Vec& r_t);

struct ArcResourceSolution {
  Mat flows;  // T x |A|
  Mat xi;     // T x |N|
  Vec stage_values;
  double value = 0.0;
};

ArcResourceSolution solve_arc_resource(const std::vector<ArcCost>& costs,
                                       const Vec& r_stage_major,
                                       const NetworkTopology& topology,
                                       int horizon);

}  // namespace mgrid
