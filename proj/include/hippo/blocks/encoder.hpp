// Spiking one-hot -> binary encoder.
#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "hippo/blocks/gate_params.hpp"
#include "hippo/snn/network.hpp"

namespace hippo {

struct EncoderBlock {
  std::uint32_t input_width = 0;
  std::uint32_t output_bits = 0;
  PopulationId output;
  static constexpr Time latency = 1;

  std::uint32_t internal_neurons() const { return output_bits; }
};

/// Number of bits needed to address `width` values, i.e. ceil(log2(width)).
inline std::uint32_t ceil_log2(std::uint64_t width) {
  return width <= 1 ? 0u : static_cast<std::uint32_t>(std::bit_width(width - 1));
}

/// One-hot neuron i of `one_hot` connects to every output bit set in i + 1
/// (weight 1.0, delay 1), so a spike at t yields the binary pattern at t + 1.
/// Values that need more than `bits` bits keep only their low bits; with
/// bits = ceil(log2(width)) that only affects value 2^bits, which the
/// matching decoder cannot produce either.
inline EncoderBlock build_encoder(Network& net, const std::string& name, PopulationId one_hot,
                                  std::uint32_t width, std::uint32_t bits,
                                  const NeuronParams& params = gate_neuron_params()) {
  if (width < 2) throw ConfigError("encoder: width must be at least 2");
  if (bits != ceil_log2(width))
    throw ConfigError("encoder: bits must equal ceil(log2(width)) = " +
                      std::to_string(ceil_log2(width)));
  if (net.size(one_hot) != width) throw ConfigError("encoder: one-hot population size mismatch");

  EncoderBlock e{width, bits, net.add_population(name, bits, params)};
  for (std::uint32_t i = 0; i < width; ++i) {
    const std::uint32_t value = i + 1;
    for (std::uint32_t k = 0; k < bits; ++k)
      if ((value >> k) & 1u) net.connect(one_hot, i, e.output, k, {1.0, 1, Receptor::excitatory});
  }
  return e;
}

}  // namespace hippo
