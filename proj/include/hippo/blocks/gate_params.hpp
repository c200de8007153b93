#pragma once

#include "hippo/snn/neuron.hpp"

namespace hippo {

/// Fast, non-refractory LIF used by the decoder, encoder and output relays.
/// Any net input above ~0.09 nA fires it within the same step.
inline NeuronParams gate_neuron_params() {
  return NeuronParams{
      .c_m = 0.1,
      .tau_m = 0.1,
      .tau_refrac = 0.0,
      .tau_syn_exc = 0.1,
      .tau_syn_inh = 0.1,
      .v_reset = -65.0,
      .v_rest = -65.0,
      .v_thresh = -64.91,
  };
}

}  // namespace hippo
