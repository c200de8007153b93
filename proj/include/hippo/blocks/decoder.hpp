// Spiking binary -> one-hot decoder.
//
// Stage 1 ("<name>.gate"): one buffer per input bit, then a drive neuron and a
// bias neuron that both fire whenever any bit is present. Stage 2
// ("<name>.match"): one AND neuron per value. Value v's neuron sums +1 per
// set-bit literal, -1 per clear-bit literal and a drive of (b - popcount(v)),
// so its net input is b - 0.5 - (b - 0.5) = 0.5 on an exact match and at most
// -0.5 otherwise. Stage 3 ("<name>"): one output buffer per value.
//
// Every stage fires in the step its input arrives, one step apart, so an input
// pattern arriving at t yields the one-hot output at t + 2.
#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "hippo/blocks/gate_params.hpp"
#include "hippo/snn/network.hpp"

namespace hippo {

struct DecoderBlock {
  std::uint32_t input_bits = 0;
  std::uint32_t output_width = 0;
  PopulationId gate;    // b buffers + drive + bias
  PopulationId match;   // width AND neurons
  PopulationId output;  // width one-hot outputs
  static constexpr Time latency = 2;

  std::uint32_t drive_neuron() const { return input_bits; }
  std::uint32_t bias_neuron() const { return input_bits + 1; }
  std::uint32_t internal_neurons() const { return 2 * output_width + input_bits + 2; }

  /// Largest value with a non-empty bit pattern that the block decodes.
  std::uint32_t max_value() const {
    const std::uint64_t patterns = (std::uint64_t{1} << input_bits) - 1;
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(output_width, patterns));
  }
};

/// Builds a decoder fed by input lines [first_line, first_line + bits) of
/// `input` (bit 0 first) through synapses of weight 1.0 and delay 1. Value v
/// (1-based) drives output neuron v - 1. Value 0 and values above `width`
/// produce no output.
inline DecoderBlock build_decoder(Network& net, const std::string& name, PopulationId input,
                                  std::uint32_t bits, std::uint32_t width,
                                  std::uint32_t first_line = 0,
                                  const NeuronParams& params = gate_neuron_params()) {
  if (bits == 0 || bits > 24) throw ConfigError("decoder: bit count must be in [1, 24]");
  if (width == 0 || width > (std::uint32_t{1} << bits))
    throw ConfigError("decoder: width " + std::to_string(width) + " exceeds 2^" +
                      std::to_string(bits));
  if (net.size(input) < first_line + bits)
    throw ConfigError("decoder: input population has fewer than first_line + bits neurons");

  DecoderBlock b;
  b.input_bits = bits;
  b.output_width = width;
  b.gate = net.add_population(name + ".gate", bits + 2, params);
  b.match = net.add_population(name + ".match", width, params);
  b.output = net.add_population(name, width, params);

  // Drive and bias share the buffers' stage, so they listen to the input lines.
  const SynapseSpec unit{1.0, 1, Receptor::excitatory};
  for (std::uint32_t i = 0; i < bits; ++i) {
    net.connect(input, first_line + i, b.gate, i, unit);
    net.connect(input, first_line + i, b.gate, b.drive_neuron(), unit);
    net.connect(input, first_line + i, b.gate, b.bias_neuron(), unit);
  }

  for (std::uint32_t k = 0; k < width; ++k) {
    // value 2^bits has an all-zero pattern: its neuron exists but never fires
    const std::uint32_t pattern = (k + 1) & ((std::uint32_t{1} << bits) - 1);
    const auto ones = static_cast<std::uint32_t>(std::popcount(pattern));
    for (std::uint32_t i = 0; i < bits; ++i) {
      const bool set = (pattern >> i) & 1u;
      net.connect(b.gate, i, b.match, k,
                  {1.0, 1, set ? Receptor::excitatory : Receptor::inhibitory});
    }
    if (ones < bits)
      net.connect(b.gate, b.drive_neuron(), b.match, k,
                  {static_cast<double>(bits - ones), 1, Receptor::excitatory});
    net.connect(b.gate, b.bias_neuron(), b.match, k,
                {static_cast<double>(bits) - 0.5, 1, Receptor::inhibitory});
    net.connect(b.match, k, b.output, k, unit);
  }
  return b;
}

}  // namespace hippo
