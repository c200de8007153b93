// Sizing, neuron/synapse parameters and timing of the hippocampal memory.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hippo/blocks/encoder.hpp"
#include "hippo/blocks/gate_params.hpp"
#include "hippo/snn/neuron.hpp"
#include "hippo/snn/stdp.hpp"

namespace hippo {

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MemoryConfig {
  std::uint32_t cue_size = 5;
  std::uint32_t cont_size = 10;
  double residual_epsilon = 0.0;

  std::uint32_t cue_bits() const { return ceil_log2(cue_size); }
  /// Neurons of the INPUT and OUTPUT populations.
  std::uint32_t width() const { return cue_bits() + cont_size; }
  /// Largest usable cue value. Value 0 has no spike pattern, so a power-of-two
  /// cue_size loses its top value to the all-zero pattern.
  std::uint32_t max_cue() const {
    return std::min<std::uint32_t>(cue_size, (std::uint32_t{1} << cue_bits()) - 1);
  }
  bool power_of_two() const { return (cue_size & (cue_size - 1)) == 0; }

  void validate() const {
    if (cue_size < 2) throw ConfigError("cue_size must be at least 2");
    if (cont_size < 1) throw ConfigError("cont_size must be at least 1");
    if (cue_size > (1u << 20)) throw ConfigError("cue_size too large");
    if (!(residual_epsilon >= 0.0)) throw ConfigError("residual_epsilon must be non-negative");
  }

  bool operator==(const MemoryConfig&) const = default;
};

struct MemoryWord {
  std::uint32_t cue = 0;
  std::vector<std::uint32_t> content;  // sorted, unique

  static MemoryWord make(std::uint32_t cue, std::vector<std::uint32_t> content) {
    std::sort(content.begin(), content.end());
    content.erase(std::unique(content.begin(), content.end()), content.end());
    return MemoryWord{cue, std::move(content)};
  }

  bool operator==(const MemoryWord&) const = default;
};

/// Operation timing in steps.
struct OperationTiming {
  static constexpr Time learn_hold = 3;
  static constexpr Time recall_hold = 1;
  static constexpr Time learn_interop = 7;
  static constexpr Time recall_interop = 6;
  static constexpr Time learn_optime = 12;
  static constexpr Time recall_optime = 11;
  static constexpr Time ca3_rest = 4;

  /// INPUT -> first CA3 activity.
  static constexpr Time to_ca3 = 4;
  /// Cue (and learned content) appears on OUTPUT this long after the start.
  static constexpr Time echo_offset = 6;
  /// Second learning echo.
  static constexpr Time second_echo_offset = 8;
  /// Recalled content trails the cue by one step.
  static constexpr Time recall_content_offset = 7;
};

/// LIF parameters of the CA3 cue population.
inline NeuronParams ca3_cue_params() {
  return NeuronParams{.c_m = 0.27, .tau_m = 3.0, .tau_refrac = 1.0, .tau_syn_exc = 0.3,
                      .tau_syn_inh = 0.3, .v_reset = -60.0, .v_rest = -60.0, .v_thresh = -57.0};
}

/// LIF parameters of the CA3 content population.
inline NeuronParams ca3_cont_params() {
  auto p = ca3_cue_params();
  p.v_thresh = -57.5;
  return p;
}

/// Static projection weights (nA) and delays (steps).
struct SynapseTable {
  static constexpr SynapseSpec input_dg{1.0, 1, Receptor::excitatory};
  static constexpr SynapseSpec dg_ca3cue{6.0, 1, Receptor::excitatory};
  static constexpr SynapseSpec input_ca3cont{6.0, 4, Receptor::excitatory};
  static constexpr SynapseSpec ca3cue_ca1{1.0, 1, Receptor::excitatory};
  static constexpr SynapseSpec ca1_output{6.0, 1, Receptor::excitatory};
  static constexpr SynapseSpec ca3cont_output{6.0, 2, Receptor::excitatory};
  static constexpr Time ca3_plastic_delay = 1;
  static constexpr double ca3_plastic_init = 0.0;
};

inline StdpConfig ca3_stdp_config(double residual_epsilon = 0.0) {
  StdpConfig c;
  c.tau_plus = 3.0;
  c.tau_minus = 3.0;
  c.a_plus = 6.0;
  c.a_minus = 6.0;
  c.w_max = 6.0;
  c.w_min = 0.0;
  c.kernel = StdpKernel::synchronous_boxcar;
  c.residual_epsilon = residual_epsilon;
  return c;
}

}  // namespace hippo
