// Neuron and synapse counts: closed-form layer formulas next to the counts of
// an actually built network.
//
// The formulas write log2(cueSize); it is evaluated as ceil(log2(cueSize)) so
// non-power-of-two sizes give integers. Such sizes are flagged because the
// formulas are only exact for powers of two.
#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "hippo/model/hippocampus.hpp"

namespace hippo {

struct LayerResources {
  std::string layer;
  std::uint64_t input_interface = 0;
  std::uint64_t neurons = 0;
  std::uint64_t internal_synapses = 0;
  std::uint64_t output_interface = 0;
  bool operator==(const LayerResources&) const = default;
};

struct ResourceCounts {
  std::uint64_t neurons_total = 0;
  std::uint64_t static_synapses_total = 0;
  std::uint64_t plastic_synapses = 0;
  std::vector<LayerResources> layers;  // INPUT, DG, CA3cue, CA3cont, CA1, OUTPUT
  std::vector<std::pair<std::string, std::uint64_t>> interconnections;

  const LayerResources& layer(const std::string& name) const {
    for (const auto& l : layers)
      if (l.layer == name) return l;
    throw std::out_of_range("no layer " + name);
  }
};

struct ResourceEstimate {
  MemoryConfig config;
  bool power_of_two = true;
  ResourceCounts formula;
  ResourceCounts built;
  std::vector<std::string> divergences;
};

/// ones(bin(i)) summed for i = 2..n.
inline std::uint64_t popcount_sum_from_two(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t i = 2; i <= n; ++i) s += static_cast<std::uint64_t>(std::popcount(i));
  return s;
}

inline ResourceCounts formula_counts(const MemoryConfig& cfg) {
  const std::uint64_t cue = cfg.cue_size;
  const std::uint64_t cont = cfg.cont_size;
  const std::uint64_t lg = ceil_log2(cue);
  const std::uint64_t pow_lg = std::uint64_t{1} << lg;
  const std::uint64_t ca1_syn = popcount_sum_from_two(cue);

  ResourceCounts r;
  r.layers = {
      {"INPUT", 0, 0, 0, lg + cont},
      {"DG", lg, 2 * pow_lg + lg + 2, pow_lg * (2 * lg + 1) + 3 * lg + 2, cue},
      {"CA3cue", cue, cue, 0, cue},
      {"CA3cont", cont, cont, 0, cont},
      {"CA1", cue, lg, ca1_syn, lg},
      {"OUTPUT", lg + cont, 0, 0, 0},
  };
  r.interconnections = {
      {"INPUT-DG", lg},          {"DG-CA3cue", cue},      {"INPUT-CA3cont", cont},
      {"CA3cue-CA3cont", cue * cont}, {"CA3cue-CA1", cue}, {"CA1-OUTPUT", lg},
      {"CA3cont-OUTPUT", cont},
  };
  r.neurons_total = 2 * pow_lg + lg + cue + cont + lg + 2;
  r.static_synapses_total =
      pow_lg * (2 * lg + 1) + 3 * lg + 2 * cue + 2 * cont + 2 * lg + ca1_syn + 2;
  r.plastic_synapses = cue * cont;
  return r;
}

/// Counts read back from a constructed network. CA3cue->CA1 synapses are
/// the encoder's wiring, so they appear both as the CA1 internal count and as
/// the CA3cue-CA1 interconnection; INPUT->DG counts only the buffer inputs.
inline ResourceCounts built_counts(const HippocampusNetwork& hip) {
  const auto& net = hip.network();
  const auto& dg = hip.dg();
  const auto& cfg = hip.config();
  const std::uint64_t bits = cfg.cue_bits();

  const std::uint64_t input_to_gate = net.synapse_count(hip.input(), dg.gate);
  const std::uint64_t dg_internal = (input_to_gate - bits) + net.synapse_count(dg.gate, dg.gate) +
                                    net.synapse_count(dg.gate, dg.match) +
                                    net.synapse_count(dg.match, dg.output);
  const std::uint64_t ca1_syn = net.synapse_count(hip.ca3_cue(), hip.ca1().output);

  ResourceCounts r;
  r.layers = {
      {"INPUT", 0, 0, 0, net.size(hip.input())},
      {"DG", bits, dg.internal_neurons(), dg_internal, net.size(dg.output)},
      {"CA3cue", cfg.cue_size, net.size(hip.ca3_cue()), 0, net.size(hip.ca3_cue())},
      {"CA3cont", cfg.cont_size, net.size(hip.ca3_cont()), 0, net.size(hip.ca3_cont())},
      {"CA1", cfg.cue_size, net.size(hip.ca1().output), ca1_syn, net.size(hip.ca1().output)},
      {"OUTPUT", net.size(hip.output()), 0, 0, 0},
  };
  const auto& plastic = net.plastic(hip.plastic());
  r.interconnections = {
      {"INPUT-DG", bits},
      {"DG-CA3cue", net.synapse_count(dg.output, hip.ca3_cue())},
      {"INPUT-CA3cont", net.synapse_count(hip.input(), hip.ca3_cont())},
      {"CA3cue-CA3cont", plastic.rows() * plastic.cols()},
      {"CA3cue-CA1", ca1_syn},
      {"CA1-OUTPUT", net.synapse_count(hip.ca1().output, hip.output())},
      {"CA3cont-OUTPUT", net.synapse_count(hip.ca3_cont(), hip.output())},
  };
  std::uint64_t neurons = 0;
  for (const auto& l : r.layers) neurons += l.neurons;
  r.neurons_total = neurons;
  r.static_synapses_total = net.static_synapse_count();
  r.plastic_synapses = plastic.rows() * plastic.cols();
  return r;
}

inline ResourceEstimate resource_estimate(const MemoryConfig& cfg) {
  cfg.validate();
  ResourceEstimate e;
  e.config = cfg;
  e.power_of_two = cfg.power_of_two();
  e.formula = formula_counts(cfg);
  const HippocampusNetwork hip(cfg);
  e.built = built_counts(hip);

  auto note = [&](const std::string& what, std::uint64_t f, std::uint64_t b) {
    if (f != b)
      e.divergences.push_back(what + ": formula " + std::to_string(f) + ", built " +
                              std::to_string(b));
  };
  for (std::size_t i = 0; i < e.formula.layers.size(); ++i) {
    const auto& f = e.formula.layers[i];
    const auto& b = e.built.layers[i];
    note(f.layer + " neurons", f.neurons, b.neurons);
    note(f.layer + " internal synapses", f.internal_synapses, b.internal_synapses);
    note(f.layer + " output interface", f.output_interface, b.output_interface);
  }
  for (std::size_t i = 0; i < e.formula.interconnections.size(); ++i)
    note(e.formula.interconnections[i].first + " synapses", e.formula.interconnections[i].second,
         e.built.interconnections[i].second);
  note("neurons total", e.formula.neurons_total, e.built.neurons_total);
  note("static synapses total", e.formula.static_synapses_total, e.built.static_synapses_total);
  note("plastic synapses", e.formula.plastic_synapses, e.built.plastic_synapses);
  return e;
}

}  // namespace hippo
