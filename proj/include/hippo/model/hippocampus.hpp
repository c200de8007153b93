// The DG -> CA3 -> CA1 memory network and its operation driver.
#pragma once

#include "hippo/blocks/decoder.hpp"
#include "hippo/blocks/encoder.hpp"
#include "hippo/model/config.hpp"
#include "hippo/model/schedule.hpp"
#include "hippo/snn/network.hpp"

namespace hippo {

namespace population_names {
inline constexpr const char* input = "INPUT";
inline constexpr const char* dg = "DG";
inline constexpr const char* ca3_cue = "CA3cue";
inline constexpr const char* ca3_cont = "CA3cont";
inline constexpr const char* ca1 = "CA1";
inline constexpr const char* output = "OUTPUT";
}  // namespace population_names

/// Population order (and therefore raster order): INPUT, DG.gate, DG.match,
/// DG, CA3cue, CA3cont, CA1, OUTPUT. Cue bits occupy INPUT/OUTPUT indices
/// [0, cue_bits); content neuron c sits at cue_bits + c.
class HippocampusNetwork {
 public:
  explicit HippocampusNetwork(const MemoryConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    namespace pn = population_names;
    const auto bits = cfg_.cue_bits();

    input_ = net_.add_source(pn::input, cfg_.width());
    dg_ = build_decoder(net_, pn::dg, input_, bits, cfg_.cue_size);
    ca3_cue_ = net_.add_population(pn::ca3_cue, cfg_.cue_size, ca3_cue_params());
    ca3_cont_ = net_.add_population(pn::ca3_cont, cfg_.cont_size, ca3_cont_params());
    ca1_ = build_encoder(net_, pn::ca1, ca3_cue_, cfg_.cue_size, bits);
    output_ = net_.add_population(pn::output, cfg_.width(), gate_neuron_params());

    net_.connect_one_to_one(dg_.output, ca3_cue_, SynapseTable::dg_ca3cue);
    for (std::uint32_t c = 0; c < cfg_.cont_size; ++c)
      net_.connect(input_, bits + c, ca3_cont_, c, SynapseTable::input_ca3cont);
    plastic_ = net_.add_plastic(ca3_cue_, ca3_cont_, ca3_stdp_config(cfg_.residual_epsilon),
                                SynapseTable::ca3_plastic_delay, SynapseTable::ca3_plastic_init);
    for (std::uint32_t k = 0; k < bits; ++k)
      net_.connect(ca1_.output, k, output_, k, SynapseTable::ca1_output);
    for (std::uint32_t c = 0; c < cfg_.cont_size; ++c)
      net_.connect(ca3_cont_, c, output_, bits + c, SynapseTable::ca3cont_output);
  }

  const MemoryConfig& config() const { return cfg_; }
  Network& network() { return net_; }
  const Network& network() const { return net_; }

  PopulationId input() const { return input_; }
  const DecoderBlock& dg() const { return dg_; }
  PopulationId ca3_cue() const { return ca3_cue_; }
  PopulationId ca3_cont() const { return ca3_cont_; }
  const EncoderBlock& ca1() const { return ca1_; }
  PopulationId output() const { return output_; }
  PlasticId plastic() const { return plastic_; }

  WeightRecord snapshot_weights() const { return net_.snapshot_weights(plastic_); }
  void load_weights(const WeightRecord& rec) { net_.load_weights(plastic_, rec); }

  /// INPUT neurons that spike for a word: set cue bits, then content.
  std::vector<std::uint32_t> input_pattern(const MemoryWord& w) const {
    std::vector<std::uint32_t> lines;
    for (std::uint32_t k = 0; k < cfg_.cue_bits(); ++k)
      if ((w.cue >> k) & 1u) lines.push_back(k);
    for (auto c : w.content) lines.push_back(cfg_.cue_bits() + c);
    return lines;
  }

  /// Injects the INPUT spikes of one operation.
  void apply(const Operation& op) {
    const Time hold = op.kind == OpKind::learn ? OperationTiming::learn_hold
                                               : OperationTiming::recall_hold;
    const auto lines = input_pattern(op.word);
    for (Time dt = 0; dt < hold; ++dt)
      for (auto n : lines) net_.inject(input_, n, op.start + dt);
  }

  void apply(const OperationSchedule& s) {
    if (!(s.config() == cfg_)) throw ConfigError("schedule was built for a different config");
    for (const auto& op : s.ops()) apply(op);
  }

 private:
  MemoryConfig cfg_;
  Network net_;
  PopulationId input_, ca3_cue_, ca3_cont_, output_;
  DecoderBlock dg_;
  EncoderBlock ca1_;
  PlasticId plastic_;
};

}  // namespace hippo
