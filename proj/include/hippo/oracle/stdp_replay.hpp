// Brute-force recomputation of plastic weights from a raster.
//
// Written against the kernel definition, not the engine: every pre spike of
// i is paired with every post spike of j that falls after i's previous pre
// spike and no later than the current one, oldest first.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hippo/snn/network.hpp"

namespace hippo::oracle {

inline double kernel_contribution(const StdpConfig& cfg, Time t_pre, Time t_post,
                                  bool has_previous_pre, Time previous_pre) {
  const Time lag = t_pre - t_post;
  const Time window = static_cast<Time>(std::ceil(std::max(cfg.tau_plus, cfg.tau_minus))) + 8;
  if (lag == 0) return cfg.a_plus;
  if (lag > window) return -cfg.residual_epsilon;
  if (cfg.kernel == StdpKernel::synchronous_boxcar)
    return static_cast<double>(lag) <= cfg.tau_minus ? -cfg.a_minus : -cfg.residual_epsilon;
  double c = 0.0;
  if (has_previous_pre)
    c += cfg.a_plus * std::exp(-static_cast<double>(t_post - previous_pre) / cfg.tau_plus);
  c -= cfg.a_minus * std::exp(-static_cast<double>(lag) / cfg.tau_minus);
  return c;
}

inline WeightRecord brute_force_weights(const RasterLog& raster, PopulationId source,
                                        std::uint32_t source_size, PopulationId target,
                                        std::uint32_t target_size, const StdpConfig& cfg,
                                        double init_weight = 0.0) {
  std::vector<std::vector<Time>> pre(source_size), post(target_size);
  for (const auto& s : raster.spikes) {
    if (s.population == source) pre.at(s.neuron).push_back(s.time);
    if (s.population == target) post.at(s.neuron).push_back(s.time);
  }
  for (auto* group : {&pre, &post})
    for (auto& v : *group) std::sort(v.begin(), v.end());

  WeightRecord rec{source_size, target_size, std::vector<double>(source_size * target_size, init_weight)};
  for (std::uint32_t i = 0; i < source_size; ++i) {
    for (std::uint32_t j = 0; j < target_size; ++j) {
      double w = init_weight;
      bool has_prev = false;
      Time prev = 0;
      for (Time tp : pre[i]) {
        double dw = 0.0;
        for (Time tq : post[j]) {
          if (has_prev && tq <= prev) continue;
          if (tq > tp) break;
          dw += kernel_contribution(cfg, tp, tq, has_prev, prev);
        }
        w = std::min(cfg.w_max, std::max(cfg.w_min, w + dw));
        has_prev = true;
        prev = tp;
      }
      rec.weights[i * target_size + j] = w;
    }
  }
  return rec;
}

/// Same, restricted to spikes strictly before `until`.
inline WeightRecord brute_force_weights_before(const RasterLog& raster, Time until,
                                               PopulationId source, std::uint32_t source_size,
                                               PopulationId target, std::uint32_t target_size,
                                               const StdpConfig& cfg) {
  RasterLog prefix;
  prefix.population_names = raster.population_names;
  for (const auto& s : raster.spikes)
    if (s.time < until) prefix.spikes.push_back(s);
  return brute_force_weights(prefix, source, source_size, target, target_size, cfg);
}

}  // namespace hippo::oracle
