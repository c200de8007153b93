// Current-based leaky integrate-and-fire neuron with exact integration over a
// fixed 1 ms step.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hippo {

/// Timestep index. One step is one millisecond.
using Time = std::int64_t;

inline constexpr double kStepMs = 1.0;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SimulationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NeuronParams {
  double c_m;          // nF
  double tau_m;        // ms
  double tau_refrac;   // ms
  double tau_syn_exc;  // ms
  double tau_syn_inh;  // ms
  double v_reset;      // mV
  double v_rest;       // mV
  double v_thresh;     // mV

  void validate() const {
    const double min_tau = kStepMs / 1000.0;
    if (!(c_m > 0.0)) throw ConfigError("c_m must be positive");
    if (!(tau_m >= min_tau) || !(tau_syn_exc >= min_tau) || !(tau_syn_inh >= min_tau))
      throw ConfigError("time constants must be at least h/1000");
    if (!(v_reset <= v_rest) || !(v_rest < v_thresh))
      throw ConfigError("require v_reset <= v_rest < v_thresh");
    if (!(tau_refrac >= 0.0) || std::fmod(tau_refrac, kStepMs) != 0.0)
      throw ConfigError("tau_refrac must be a non-negative multiple of the timestep");
  }

  bool operator==(const NeuronParams&) const = default;
};

struct NeuronState {
  double v;
  double i_exc = 0.0;
  double i_inh = 0.0;  // carries negative sign
  std::int32_t refrac_remaining = 0;

  static NeuronState resting(const NeuronParams& p) { return NeuronState{p.v_rest}; }

  bool operator==(const NeuronState&) const = default;
};

/// Per-step propagators derived from NeuronParams. Computing them once per
/// population keeps every neuron of a population on bit-identical arithmetic.
struct LifPropagators {
  double decay_m;
  double decay_exc;
  double decay_inh;
  double gain;  // mV per nA held for one step
  std::int32_t refrac_steps;

  static LifPropagators from(const NeuronParams& p) {
    p.validate();
    LifPropagators k{};
    k.decay_m = std::exp(-kStepMs / p.tau_m);
    k.decay_exc = std::exp(-kStepMs / p.tau_syn_exc);
    k.decay_inh = std::exp(-kStepMs / p.tau_syn_inh);
    k.gain = (p.tau_m / p.c_m) * (1.0 - k.decay_m);
    k.refrac_steps = static_cast<std::int32_t>(p.tau_refrac / kStepMs);
    return k;
  }
};

/// Advances one neuron by one step. `delivered_inh` is the magnitude of the
/// inhibitory input; it is applied with negative sign. Returns true on a spike.
///
/// Order: decay currents then add deliveries; a refractory neuron holds
/// v_reset; otherwise v integrates exactly and is compared to threshold. A
/// delivery strong enough to cross threshold fires in the step it arrives.
inline bool lif_step(NeuronState& s, const NeuronParams& p, const LifPropagators& k,
                     double delivered_exc, double delivered_inh) {
  s.i_exc = s.i_exc * k.decay_exc + delivered_exc;
  s.i_inh = s.i_inh * k.decay_inh - delivered_inh;

  if (s.refrac_remaining > 0) {
    --s.refrac_remaining;
    s.v = p.v_reset;
    return false;
  }

  s.v = p.v_rest + (s.v - p.v_rest) * k.decay_m + (s.i_exc + s.i_inh) * k.gain;
  if (!std::isfinite(s.v) || !std::isfinite(s.i_exc) || !std::isfinite(s.i_inh))
    throw SimulationFault("non-finite neuron state");

  if (s.v >= p.v_thresh) {
    s.v = p.v_reset;
    s.refrac_remaining = k.refrac_steps;
    return true;
  }
  return false;
}

inline bool lif_step(NeuronState& s, const NeuronParams& p, double delivered_exc,
                     double delivered_inh) {
  return lif_step(s, p, LifPropagators::from(p), delivered_exc, delivered_inh);
}

/// Smallest single excitatory delivery that fires a resting neuron.
inline double firing_equivalent_weight(const NeuronParams& p) {
  const auto k = LifPropagators::from(p);
  return (p.v_thresh - p.v_rest) / k.gain;
}

}  // namespace hippo
