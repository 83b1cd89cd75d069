#include "mgrid/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "mgrid/rng.hpp"

namespace mgrid {

void NoiseModel::validate() const {
  if (horizon <= 0 || n_nodes <= 0)
    throw Error(ErrorCode::invalid_config, "noise model has empty dimensions");
  if (int(atoms.size()) != horizon)
    throw Error(ErrorCode::invalid_config, "noise model stage count mismatch");
  for (int t = 0; t < horizon; ++t) {
    if (int(atoms[size_t(t)].size()) != n_nodes)
      throw Error(ErrorCode::invalid_config, "noise model node count mismatch");
    for (int n = 0; n < n_nodes; ++n) {
      const auto& marg = atoms[size_t(t)][size_t(n)];
      if (marg.empty())
        throw Error(ErrorCode::invalid_config, "empty noise marginal");
      double total = 0.0;
      for (const auto& a : marg) {
        if (a.prob <= 0.0)
          throw Error(ErrorCode::invalid_config, "non-positive atom probability");
        if (a.w.d_hw < 0.0)
          throw Error(ErrorCode::invalid_config, "negative hot-water demand");
        total += a.prob;
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw Error(ErrorCode::invalid_config,
                    "atom probabilities must sum to 1");
    }
  }
}

double NoiseModel::joint_support_size(int t) const {
  double size = 1.0;
  for (int n = 0; n < n_nodes; ++n) size *= double(marginal(t, n).size());
  return size;
}

int NoiseModel::max_marginal_size() const {
  int m = 0;
  for (const auto& stage : atoms)
    for (const auto& marg : stage) m = std::max(m, int(marg.size()));
  return m;
}

namespace {

double gauss_bump(double x, double mu, double sigma) {
  double d = (x - mu) / sigma;
  return std::exp(-0.5 * d * d);
}

}  // namespace

NoiseModel build_synthetic_noise(int n_nodes, const std::vector<bool>& has_solar,
                                 int horizon, uint64_t seed,
                                 const SyntheticNoiseParams& params) {
  if (horizon < 1 || params.atoms_per_stage < 1)
    throw Error(ErrorCode::invalid_argument,
                "horizon and atom count must be at least 1");
  NoiseModel model;
  model.horizon = horizon;
  model.n_nodes = n_nodes;
  model.atoms.assign(size_t(horizon), {});

  Rng base(seed);
  const int k = params.atoms_per_stage;
  std::vector<double> node_scale(size_t(n_nodes));
  for (int n = 0; n < n_nodes; ++n) {
    Rng r = base.substream(1, uint64_t(n));
    node_scale[size_t(n)] =
        1.0 + params.node_scale_spread * (2.0 * r.uniform01() - 1.0);
  }

  for (int t = 0; t < horizon; ++t) {
    auto& stage = model.atoms[size_t(t)];
    stage.assign(size_t(n_nodes), {});
    double phi = (t + 0.5) / double(horizon);  // fraction of the day
    double hour = 24.0 * phi;
    for (int n = 0; n < n_nodes; ++n) {
      double scale = node_scale[size_t(n)];
      double el_profile =
          params.base_el * scale *
          (1.0 + params.el_amp *
                     std::cos(2.0 * M_PI * (phi - params.el_peak_frac)));
      double solar_profile = 0.0;
      if (size_t(n) < has_solar.size() && has_solar[size_t(n)] &&
          hour > 6.0 && hour < 18.0) {
        double s = std::sin(M_PI * (hour - 6.0) / 12.0);
        solar_profile = params.solar_peak * scale * s * s;
      }
      double hw_profile =
          scale * (params.hw_base +
                   params.hw_morning_amp * gauss_bump(phi, 0.29, 0.045) +
                   params.hw_evening_amp * gauss_bump(phi, 0.83, 0.055));

      // Separate substreams per purpose so toggling the solar flag leaves
      // the demand draws unchanged.
      Rng r_el = base.substream(2, uint64_t(t), uint64_t(n));
      Rng r_sol = base.substream(3, uint64_t(t), uint64_t(n));
      Rng r_hw = base.substream(4, uint64_t(t), uint64_t(n));
      Rng r_pr = base.substream(5, uint64_t(t), uint64_t(n));

      auto& marg = stage[size_t(n)];
      marg.resize(size_t(k));
      double total = 0.0;
      for (int j = 0; j < k; ++j) {
        double u = (j + 0.5) / double(k);
        double spread = params.demand_spread * std::sqrt(3.0);
        double f_el = 1.0 + spread * (2.0 * u - 1.0);
        double f_hw = f_el;
        double f_sol = 1.0;
        if (k > 1) {
          f_el *= 1.0 + 0.05 * (2.0 * r_el.uniform01() - 1.0);
          f_hw *= 1.0 + 0.08 * (2.0 * r_hw.uniform01() - 1.0);
          f_sol = 1.0 + 0.3 * (2.0 * u - 1.0) *
                            (0.7 + 0.3 * r_sol.uniform01());
        }
        NoiseAtom atom;
        atom.w.d_el = el_profile * f_el - solar_profile * f_sol;
        atom.w.d_hw = std::max(0.0, hw_profile * f_hw);
        atom.prob = (k == 1) ? 1.0 : 1.0 + 0.4 * r_pr.uniform01();
        total += atom.prob;
        marg[size_t(j)] = atom;
      }
      for (auto& a : marg) a.prob /= total;
      // Exact renormalization so the sum is 1 within 1e-12.
      double s2 = 0.0;
      for (const auto& a : marg) s2 += a.prob;
      marg.back().prob += 1.0 - s2;
    }
  }
  model.validate();
  return model;
}

std::vector<Scenario> sample_scenarios(const NoiseModel& model, int count,
                                       uint64_t seed) {
  if (count < 1)
    throw Error(ErrorCode::invalid_argument, "scenario count must be >= 1");
  std::vector<Scenario> out(size_t(count));
  Rng base(seed);
  for (int s = 0; s < count; ++s) {
    Rng r = base.substream(0x5ce0, uint64_t(s));
    auto& sc = out[size_t(s)];
    sc.draws.assign(size_t(model.horizon),
                    std::vector<NodalNoise>(size_t(model.n_nodes)));
    for (int t = 0; t < model.horizon; ++t) {
      for (int n = 0; n < model.n_nodes; ++n) {
        const auto& marg = model.marginal(t, n);
        double u = r.uniform01();
        double acc = 0.0;
        size_t pick = marg.size() - 1;
        for (size_t j = 0; j < marg.size(); ++j) {
          acc += marg[j].prob;
          if (u < acc) { pick = j; break; }
        }
        sc.draws[size_t(t)][size_t(n)] = marg[pick].w;
      }
    }
  }
  return out;
}

JointDist materialize_joint(const NoiseModel& model, int t, uint64_t seed,
                            double max_exact, int sample_count) {
  const int n_nodes = model.n_nodes;
  double size = model.joint_support_size(t);
  JointDist out;
  if (size <= max_exact) {
    std::vector<size_t> idx(size_t(n_nodes), 0);
    bool done = false;
    while (!done) {
      JointAtom atom;
      atom.w.resize(size_t(n_nodes));
      atom.prob = 1.0;
      for (int n = 0; n < n_nodes; ++n) {
        const auto& a = model.marginal(t, n)[idx[size_t(n)]];
        atom.w[size_t(n)] = a.w;
        atom.prob *= a.prob;
      }
      out.push_back(std::move(atom));
      // odometer increment
      int pos = n_nodes - 1;
      while (pos >= 0) {
        if (++idx[size_t(pos)] < model.marginal(t, pos).size()) break;
        idx[size_t(pos)] = 0;
        --pos;
      }
      if (pos < 0) done = true;
    }
    return out;
  }
  // Sampled approximation of an intractably large product.
  Rng r = Rng(seed).substream(0x1035, uint64_t(t));
  out.resize(size_t(sample_count));
  for (int s = 0; s < sample_count; ++s) {
    JointAtom atom;
    atom.w.resize(size_t(n_nodes));
    atom.prob = 1.0 / double(sample_count);
    for (int n = 0; n < n_nodes; ++n) {
      const auto& marg = model.marginal(t, n);
      double u = r.uniform01();
      double acc = 0.0;
      size_t pick = marg.size() - 1;
      for (size_t j = 0; j < marg.size(); ++j) {
        acc += marg[j].prob;
        if (u < acc) { pick = j; break; }
      }
      atom.w[size_t(n)] = marg[pick].w;
    }
    out[size_t(s)] = std::move(atom);
  }
  return out;
}

namespace {

// Stacked feature vector of a joint atom.
void fill_features(const JointAtom& atom, double* f) {
  for (size_t n = 0; n < atom.w.size(); ++n) {
    f[2 * n] = atom.w[n].d_hw;
    f[2 * n + 1] = atom.w[n].d_el;
  }
}

double sqdist(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace

JointDist quantize_joint(const JointDist& dist, int target_size, uint64_t seed) {
  if (target_size < 1)
    throw Error(ErrorCode::invalid_argument, "target size must be >= 1");
  const int m = int(dist.size());
  if (m <= target_size) return dist;
  const int n_nodes = int(dist.front().w.size());
  const int dim = 2 * n_nodes;

  std::vector<double> pts(size_t(m) * size_t(dim));
  std::vector<double> weights(size_t(m));
  for (int i = 0; i < m; ++i) {
    fill_features(dist[size_t(i)], &pts[size_t(i) * size_t(dim)]);
    weights[size_t(i)] = dist[size_t(i)].prob;
  }
  double scale = 0.0;
  for (double v : pts) scale = std::max(scale, std::abs(v));

  // Weighted k-means++ seeding.
  Rng rng = Rng(seed).substream(0x937a);
  std::vector<int> centers;
  centers.push_back(rng.pick_weighted(weights));
  std::vector<double> d2(size_t(m));
  for (int i = 0; i < m; ++i)
    d2[size_t(i)] = sqdist(&pts[size_t(i) * size_t(dim)],
                           &pts[size_t(centers[0]) * size_t(dim)], dim);
  while (int(centers.size()) < target_size) {
    std::vector<double> w2(size_t(m));
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      w2[size_t(i)] = weights[size_t(i)] * d2[size_t(i)];
      total += w2[size_t(i)];
    }
    int pick;
    if (total <= 0.0) {
      pick = int(rng.below(uint64_t(m)));
    } else {
      pick = rng.pick_weighted(w2);
    }
    centers.push_back(pick);
    for (int i = 0; i < m; ++i) {
      double d = sqdist(&pts[size_t(i) * size_t(dim)],
                        &pts[size_t(pick) * size_t(dim)], dim);
      d2[size_t(i)] = std::min(d2[size_t(i)], d);
    }
  }

  const int kc = target_size;
  std::vector<double> cent(size_t(kc) * size_t(dim));
  for (int c = 0; c < kc; ++c)
    std::copy_n(&pts[size_t(centers[size_t(c)]) * size_t(dim)], dim,
                &cent[size_t(c) * size_t(dim)]);

  std::vector<int> assign(size_t(m), 0);
  std::vector<double> mass(size_t(kc));
  std::vector<double> sums(size_t(kc) * size_t(dim));
  const double shift_tol = 1e-8 * (1.0 + scale);
  for (int iter = 0; iter < 50; ++iter) {
    // assignment step; ties resolved by lowest centroid index
    for (int i = 0; i < m; ++i) {
      double best = sqdist(&pts[size_t(i) * size_t(dim)], &cent[0], dim);
      int best_c = 0;
      for (int c = 1; c < kc; ++c) {
        double d = sqdist(&pts[size_t(i) * size_t(dim)],
                          &cent[size_t(c) * size_t(dim)], dim);
        if (d < best) { best = d; best_c = c; }
      }
      assign[size_t(i)] = best_c;
    }
    std::fill(mass.begin(), mass.end(), 0.0);
    std::fill(sums.begin(), sums.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      int c = assign[size_t(i)];
      mass[size_t(c)] += weights[size_t(i)];
      for (int d = 0; d < dim; ++d)
        sums[size_t(c) * size_t(dim) + size_t(d)] +=
            weights[size_t(i)] * pts[size_t(i) * size_t(dim) + size_t(d)];
    }
    double max_shift = 0.0;
    for (int c = 0; c < kc; ++c) {
      if (mass[size_t(c)] <= 0.0) {
        // Reseat an empty cluster at the point farthest from its centroid.
        int far_i = 0;
        double far_d = -1.0;
        for (int i = 0; i < m; ++i) {
          double d = sqdist(&pts[size_t(i) * size_t(dim)],
                            &cent[size_t(assign[size_t(i)]) * size_t(dim)], dim);
          d *= weights[size_t(i)];
          if (d > far_d) { far_d = d; far_i = i; }
        }
        std::copy_n(&pts[size_t(far_i) * size_t(dim)], dim,
                    &cent[size_t(c) * size_t(dim)]);
        max_shift = 1.0 + scale;
        continue;
      }
      for (int d = 0; d < dim; ++d) {
        double nv = sums[size_t(c) * size_t(dim) + size_t(d)] / mass[size_t(c)];
        max_shift = std::max(
            max_shift,
            std::abs(nv - cent[size_t(c) * size_t(dim) + size_t(d)]));
        cent[size_t(c) * size_t(dim) + size_t(d)] = nv;
      }
    }
    if (max_shift < shift_tol) break;
  }

  // Final assignment and aggregation.
  std::fill(mass.begin(), mass.end(), 0.0);
  std::fill(sums.begin(), sums.end(), 0.0);
  for (int i = 0; i < m; ++i) {
    double best = sqdist(&pts[size_t(i) * size_t(dim)], &cent[0], dim);
    int best_c = 0;
    for (int c = 1; c < kc; ++c) {
      double d = sqdist(&pts[size_t(i) * size_t(dim)],
                        &cent[size_t(c) * size_t(dim)], dim);
      if (d < best) { best = d; best_c = c; }
    }
    mass[size_t(best_c)] += weights[size_t(i)];
    for (int d = 0; d < dim; ++d)
      sums[size_t(best_c) * size_t(dim) + size_t(d)] +=
          weights[size_t(i)] * pts[size_t(i) * size_t(dim) + size_t(d)];
  }
  JointDist out;
  double total_mass = 0.0;
  for (int c = 0; c < kc; ++c) total_mass += mass[size_t(c)];
  for (int c = 0; c < kc; ++c) {
    if (mass[size_t(c)] <= 0.0) continue;
    JointAtom atom;
    atom.prob = mass[size_t(c)] / total_mass;
    atom.w.resize(size_t(n_nodes));
    for (int n = 0; n < n_nodes; ++n) {
      atom.w[size_t(n)].d_hw =
          sums[size_t(c) * size_t(dim) + size_t(2 * n)] / mass[size_t(c)];
      atom.w[size_t(n)].d_el =
          sums[size_t(c) * size_t(dim) + size_t(2 * n + 1)] / mass[size_t(c)];
    }
    out.push_back(std::move(atom));
  }
  return out;
}

JointDist kmeans_quantize(const NoiseModel& model, int t, int target_size,
                          uint64_t seed) {
  JointDist joint = materialize_joint(model, t, seed);
  return quantize_joint(joint, target_size, seed);
}

std::vector<Scenario> sample_joint_scenarios(
    const std::vector<JointDist>& stages, int count, uint64_t seed) {
  if (count < 1)
    throw Error(ErrorCode::invalid_argument, "scenario count must be >= 1");
  std::vector<Scenario> out(size_t(count));
  Rng base(seed);
  for (int s = 0; s < count; ++s) {
    Rng r = base.substream(0xa11e, uint64_t(s));
    auto& sc = out[size_t(s)];
    sc.draws.resize(stages.size());
    for (size_t t = 0; t < stages.size(); ++t) {
      const auto& dist = stages[t];
      double u = r.uniform01();
      double acc = 0.0;
      size_t pick = dist.size() - 1;
      for (size_t j = 0; j < dist.size(); ++j) {
        acc += dist[j].prob;
        if (u < acc) { pick = j; break; }
      }
      sc.draws[t] = dist[pick].w;
    }
  }
  return out;
}

}  // namespace mgrid
