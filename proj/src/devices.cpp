#include "mgrid/devices.hpp"

#include <algorithm>

namespace mgrid {

void NodeModel::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (has_battery) {
    if (!in_unit(battery.alpha_b) || !in_unit(battery.rho_c) ||
        !in_unit(battery.rho_d))
      throw Error(ErrorCode::invalid_config,
                  "battery rates must lie in (0,1]");
    if (battery.b_max <= 0.0 || battery.u_b_max <= 0.0)
      throw Error(ErrorCode::invalid_config, "battery sizes must be positive");
  }
  if (!in_unit(tank.alpha_h) || !in_unit(tank.beta_h))
    throw Error(ErrorCode::invalid_config, "tank rates must lie in (0,1]");
  if (tank.h_max <= 0.0 || tank.u_t_max < 0.0)
    throw Error(ErrorCode::invalid_config, "tank sizes must be positive");
  if (delta_t <= 0.0)
    throw Error(ErrorCode::invalid_config, "delta_t must be positive");
  if (terminal.kappa < 0.0 || terminal.h_ref < 0.0 ||
      terminal.h_ref > tank.h_max)
    throw Error(ErrorCode::invalid_config, "terminal penalty out of range");
}

DynamicsResult nodal_dynamics(const NodalState& x, const NodalControl& u,
                              const NodalNoise& w, const NodeModel& m) {
  DynamicsResult r;
  const double eps = 1e-9;
  if (m.has_battery) {
    double charge = std::max(0.0, u.u_b);
    double discharge = std::max(0.0, -u.u_b);
    r.next.b = m.battery.alpha_b * x.b +
               m.delta_t * (m.battery.rho_c * charge -
                            discharge / m.battery.rho_d);
    if (r.next.b < -eps || r.next.b > m.battery.b_max + eps) r.feasible = false;
  }
  r.next.h = m.tank.alpha_h * x.h +
             m.delta_t * (m.tank.beta_h * u.u_t - w.d_hw);
  if (r.next.h < -eps || r.next.h > m.tank.h_max + eps) r.feasible = false;
  return r;
}

double load_balance(const NodalControl& u, const NodalNoise& w,
                    const NodeModel& m) {
  double u_b = m.has_battery ? u.u_b : 0.0;
  return u.u_ne - w.d_el - u_b - u.u_t;
}

double stage_cost(double u_ne, double tariff, bool no_resale) {
  double c = tariff * u_ne;
  return no_resale ? std::max(0.0, c) : c;
}

double terminal_cost(const NodalState& x_T, const NodeModel& m) {
  return m.terminal.kappa * std::max(0.0, m.terminal.h_ref - x_T.h);
}

}  // namespace mgrid
