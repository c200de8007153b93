// Pair-based STDP evaluated only when the presynaptic neuron fires.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "hippo/snn/neuron.hpp"

namespace hippo {

enum class StdpKernel {
  /// +a_plus for simultaneous pre/post, -a_minus for post within tau_minus
  /// before pre, -residual_epsilon for anything older.
  synchronous_boxcar,
  /// Exponentially weighted pairs inside the retention window.
  exponential,
};

struct StdpConfig {
  double tau_plus = 3.0;
  double tau_minus = 3.0;
  double a_plus = 6.0;
  double a_minus = 6.0;
  double w_max = 6.0;
  double w_min = 0.0;
  StdpKernel kernel = StdpKernel::synchronous_boxcar;
  double residual_epsilon = 0.0;

  void validate() const {
    if (!(w_min <= w_max)) throw ConfigError("stdp: w_min > w_max");
    if (!(a_plus >= 0.0) || !(a_minus >= 0.0)) throw ConfigError("stdp: negative amplitude");
    if (!(residual_epsilon >= 0.0)) throw ConfigError("stdp: negative residual_epsilon");
    if (!(tau_plus > 0.0) || !(tau_minus > 0.0)) throw ConfigError("stdp: non-positive tau");
  }

  /// Post spikes further than this many steps before a pre spike are only
  /// seen as a count (they contribute -residual_epsilon each).
  Time retention_window() const {
    return static_cast<Time>(std::ceil(std::max(tau_plus, tau_minus))) + 8;
  }
};

/// Weights and spike bookkeeping of a dense all-to-all plastic projection.
///
/// Each synapse (i, j) consumes every post spike of j at or before the pre
/// spike of i that evaluates it; unconsumed spikes are tracked per synapse as
/// a count so retention stays bounded.
class PlasticState {
 public:
  static constexpr Time kNever = std::numeric_limits<Time>::min();

  PlasticState(std::size_t rows, std::size_t cols, StdpConfig cfg, double init_weight = 0.0)
      : rows_(rows),
        cols_(cols),
        cfg_(cfg),
        window_(cfg.retention_window()),
        weights_(rows * cols, init_weight),
        consumed_(rows * cols, 0),
        history_(cols),
        post_total_(cols, 0),
        last_pre_(rows, kNever) {
    cfg_.validate();
    if (init_weight < cfg_.w_min || init_weight > cfg_.w_max)
      throw ConfigError("stdp: initial weight outside [w_min, w_max]");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const StdpConfig& config() const { return cfg_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i, std::size_t j) const { return weights_[i * cols_ + j]; }

  void set_weights(const std::vector<double>& w) {
    if (w.size() != weights_.size()) throw ConfigError("weight record dimension mismatch");
    weights_ = w;
  }

  void record_post(std::size_t j, Time t) {
    auto& h = history_[j];
    h.push_back(t);
    ++post_total_[j];
    while (!h.empty() && t - h.front() > window_) h.pop_front();
  }

  /// Applies the accumulated weight change for every synapse leaving `pre`.
  /// Must be called once per pre spike, after all post spikes of the same step
  /// have been recorded.
  void on_pre_spike(std::size_t pre, Time t) {
    const Time last = last_pre_[pre];
    double* row = &weights_[pre * cols_];
    std::uint32_t* used = &consumed_[pre * cols_];

    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& h = history_[j];
      // spikes of j still in the window and newer than the last evaluation
      auto first_new = std::upper_bound(h.begin(), h.end(), last);
      auto in_window = std::lower_bound(first_new, h.end(), t - window_);
      const auto recent = static_cast<std::uint32_t>(h.end() - in_window);
      const std::uint32_t unconsumed = post_total_[j] - used[j];
      const std::uint32_t stale = unconsumed - recent;

      double dw = 0.0;
      for (std::uint32_t s = 0; s < stale; ++s) dw -= cfg_.residual_epsilon;
      for (auto it = in_window; it != h.end(); ++it) dw += pair_term(*it, t, last);

      row[j] = std::clamp(row[j] + dw, cfg_.w_min, cfg_.w_max);
      used[j] = post_total_[j];
    }
    last_pre_[pre] = t;
  }

 private:
  double pair_term(Time t_post, Time t_pre, Time last_pre) const {
    const Time d = t_pre - t_post;
    if (d == 0) return cfg_.a_plus;
    if (cfg_.kernel == StdpKernel::synchronous_boxcar) {
      if (static_cast<double>(d) <= cfg_.tau_minus) return -cfg_.a_minus;
      return -cfg_.residual_epsilon;
    }
    double term = 0.0;
    if (last_pre != kNever)
      term += cfg_.a_plus * std::exp(-static_cast<double>(t_post - last_pre) / cfg_.tau_plus);
    term -= cfg_.a_minus * std::exp(-static_cast<double>(d) / cfg_.tau_minus);
    return term;
  }

  std::size_t rows_, cols_;
  StdpConfig cfg_;
  Time window_;
  std::vector<double> weights_;
  std::vector<std::uint32_t> consumed_;
  std::vector<std::deque<Time>> history_;
  std::vector<std::uint32_t> post_total_;
  std::vector<Time> last_pre_;
};

}  // namespace hippo
