#pragma once

#include <vector>

#include "mgrid/common.hpp"
#include "mgrid/devices.hpp"

namespace mgrid {

struct NoiseAtom {
  NodalNoise w;
  double prob = 1.0;
};

/// Finite stagewise- and node-wise independent noise. atoms[t][n] is the
/// marginal of the noise observed before the decision at stage t.
struct NoiseModel {
  int horizon = 0;
  int n_nodes = 0;
  std::vector<std::vector<std::vector<NoiseAtom>>> atoms;

  const std::vector<NoiseAtom>& marginal(int t, int node) const {
    return atoms.at(size_t(t)).at(size_t(node));
  }
  void validate() const;
  // Product of marginal support sizes at stage t, as a double (may be huge).
  double joint_support_size(int t) const;
  int max_marginal_size() const;
};

/// One drawn realization per (stage, node).
struct Scenario {
  std::vector<std::vector<NodalNoise>> draws;  // [t][n]
  const NodalNoise& at(int t, int node) const {
    return draws.at(size_t(t)).at(size_t(node));
  }
};

/// Joint distribution of one stage's noise across all nodes.
struct JointAtom {
  std::vector<NodalNoise> w;  // per node
  double prob = 1.0;
};
using JointDist = std::vector<JointAtom>;

struct SyntheticNoiseParams {
  int atoms_per_stage = 10;
  double base_el = 0.6;        // kW, mean electric demand level
  double el_amp = 0.45;        // relative diurnal swing
  double el_peak_frac = 0.79;  // fraction of day of the demand peak (~19h)
  double solar_peak = 2.4;     // kW at midday for solar nodes
  double hw_base = 0.15;       // kW baseline hot-water draw
  double hw_morning_amp = 1.2;
  double hw_evening_amp = 1.6;
  double demand_spread = 0.25; // relative atom spread around the profile
  double node_scale_spread = 0.2;
};

// Deterministic synthetic demand model; atoms quantize a diurnal profile
// perturbed per stage, node and atom. Solar nodes get a midday production
// bump subtracted from d_el.
NoiseModel build_synthetic_noise(int n_nodes, const std::vector<bool>& has_solar,
                                 int horizon, uint64_t seed,
                                 const SyntheticNoiseParams& params);

// i.i.d. scenarios from the product distribution; per-scenario substreams.
std::vector<Scenario> sample_scenarios(const NoiseModel& model, int count,
                                       uint64_t seed);

// Exact product when the joint support is at most max_exact atoms, else a
// weighted sample of sample_count draws.
JointDist materialize_joint(const NoiseModel& model, int t, uint64_t seed,
                            double max_exact = 1e6, int sample_count = 10000);

// Weighted Lloyd k-means on the stacked (d_hw, d_el) coordinates. Returns
// the input unchanged when it already has at most target_size atoms.
JointDist quantize_joint(const JointDist& dist, int target_size, uint64_t seed);

// Convenience: materialize stage t and quantize to target_size atoms.
JointDist kmeans_quantize(const NoiseModel& model, int t, int target_size,
                          uint64_t seed);

// Scenarios drawn from per-stage joint distributions (used with resampled
// noise). scenario.draws[t] is the selected joint atom.
std::vector<Scenario> sample_joint_scenarios(
    const std::vector<JointDist>& stages, int count, uint64_t seed);

}  // namespace mgrid
