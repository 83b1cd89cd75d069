#pragma once

#include <optional>

#include "mgrid/common.hpp"

namespace mgrid {

struct BatteryParams {
  double alpha_b = 0.99;   // per-stage retention, in (0,1]
  double rho_c = 0.95;     // charge yield
  double rho_d = 0.95;     // discharge yield
  double b_max = 3.0;      // kWh
  double u_b_max = 4.5;    // kW, |u_b| bound
};

struct TankParams {
  double alpha_h = 0.98;   // retention
  double beta_h = 0.9;     // electric-to-heat conversion
  double h_max = 8.0;      // kWh
  double u_t_max = 4.0;    // kW
};

struct TerminalPenalty {
  double kappa = 1.8;      // euros/kWh shortfall weight
  double h_ref = 4.0;      // kWh end-of-day tank target
};

/// Per-node device parameters. State dimension is 2 with a battery, else 1.
struct NodeModel {
  bool has_battery = false;
  bool has_solar = false;
  BatteryParams battery;
  TankParams tank;
  TerminalPenalty terminal;
  double delta_t = 0.25;   // hours per stage

  int state_dim() const { return has_battery ? 2 : 1; }
  void validate() const;
};

struct NodalState {
  double b = 0.0;  // kWh, ignored without a battery
  double h = 0.0;  // kWh
};

struct NodalControl {
  double u_b = 0.0;   // kW, battery charge (>0) / discharge (<0)
  double u_t = 0.0;   // kW, tank heating
  double u_ne = 0.0;  // kW, external grid exchange
};

struct NodalNoise {
  double d_hw = 0.0;  // hot-water demand, >= 0
  double d_el = 0.0;  // electric demand net of solar, may be negative
};

struct DynamicsResult {
  NodalState next;
  bool feasible = true;  // next state inside its box
};

// Storage dynamics. Infeasible transitions are reported, not clamped;
// feasibility is enforced by restricting the admissible control set in the
// DP layers.
DynamicsResult nodal_dynamics(const NodalState& x, const NodalControl& u,
                              const NodalNoise& w, const NodeModel& m);

// Delta = u_ne - d_el - u_b - u_t; negative means the node imports from
// adjacent nodes.
double load_balance(const NodalControl& u, const NodalNoise& w,
                    const NodeModel& m);

// Stage grid-exchange cost: tariff * u_ne, or max(0, tariff * u_ne) when
// resale revenue is disabled.
double stage_cost(double u_ne, double tariff, bool no_resale);

// One-sided terminal shortfall kappa * max(0, h_ref - h_T).
double terminal_cost(const NodalState& x_T, const NodeModel& m);

}  // namespace mgrid
