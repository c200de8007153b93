// Deterministic discrete-time network of LIF populations, spike sources,
// delayed static synapses and STDP projections.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hippo/snn/neuron.hpp"
#include "hippo/snn/stdp.hpp"

namespace hippo {

struct PopulationId {
  std::uint32_t value = 0;
  auto operator<=>(const PopulationId&) const = default;
};

struct PlasticId {
  std::uint32_t value = 0;
  auto operator<=>(const PlasticId&) const = default;
};

enum class Receptor { excitatory, inhibitory };

struct SynapseSpec {
  double weight = 0.0;  // nA, magnitude
  Time delay = 1;       // steps
  Receptor receptor = Receptor::excitatory;
};

struct SpikeEvent {
  Time time;
  PopulationId population;
  std::uint32_t neuron;
  bool operator==(const SpikeEvent&) const = default;
};

/// Complete spike record of a run, in (time, population, neuron) order.
struct RasterLog {
  std::vector<std::string> population_names;
  std::vector<SpikeEvent> spikes;
  bool truncated = false;

  std::optional<PopulationId> find(std::string_view name) const {
    for (std::size_t i = 0; i < population_names.size(); ++i)
      if (population_names[i] == name) return PopulationId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
  }

  /// Spike times of one neuron, ascending.
  std::vector<Time> times_of(PopulationId pop, std::uint32_t neuron) const {
    std::vector<Time> out;
    for (const auto& s : spikes)
      if (s.population == pop && s.neuron == neuron) out.push_back(s.time);
    return out;
  }

  bool operator==(const RasterLog&) const = default;
};

/// Plastic weight matrix as stored on disk or in memory.
struct WeightRecord {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> weights;  // row-major

  double at(std::size_t i, std::size_t j) const { return weights[i * cols + j]; }
  bool operator==(const WeightRecord&) const = default;
};

class Network {
 public:
  struct Population {
    std::string name;
    std::uint32_t offset;
    std::uint32_t size;
    bool is_source;
    NeuronParams params;
    LifPropagators prop;
  };

  PopulationId add_population(std::string name, std::uint32_t size, const NeuronParams& params) {
    return add(std::move(name), size, false, params, LifPropagators::from(params));
  }

  /// Population whose neurons fire exactly at injected times.
  PopulationId add_source(std::string name, std::uint32_t size) {
    return add(std::move(name), size, true, NeuronParams{}, LifPropagators{});
  }

  void connect(PopulationId src, std::uint32_t pre, PopulationId dst, std::uint32_t post,
               const SynapseSpec& spec) {
    check_neuron(src, pre);
    check_neuron(dst, post);
    if (pops_[dst.value].is_source) throw ConfigError("cannot project onto a spike source");
    if (spec.delay < 1) throw ConfigError("synapse delay must be at least one step");
    if (!(spec.weight >= 0.0)) throw ConfigError("synapse weight magnitude must be non-negative");
    const double signed_w = spec.receptor == Receptor::excitatory ? spec.weight : -spec.weight;
    out_[global(src, pre)].push_back({global(dst, post), signed_w, spec.delay});
    ++static_count_;
    grow_ring(spec.delay);
  }

  void connect_one_to_one(PopulationId src, PopulationId dst, const SynapseSpec& spec) {
    if (size(src) != size(dst)) throw ConfigError("one-to-one projection needs equal sizes");
    for (std::uint32_t i = 0; i < size(src); ++i) connect(src, i, dst, i, spec);
  }

  PlasticId add_plastic(PopulationId src, PopulationId dst, const StdpConfig& cfg, Time delay,
                        double init_weight = 0.0) {
    if (delay < 1) throw ConfigError("synapse delay must be at least one step");
    if (pops_[dst.value].is_source) throw ConfigError("cannot project onto a spike source");
    plastic_.push_back(PlasticProjection{src, dst, delay, PlasticState(size(src), size(dst), cfg, init_weight)});
    grow_ring(delay);
    return PlasticId{static_cast<std::uint32_t>(plastic_.size() - 1)};
  }

  /// Schedules a spike of a source neuron at time t (t >= clock).
  void inject(PopulationId pop, std::uint32_t neuron, Time t) {
    check_neuron(pop, neuron);
    if (!pops_[pop.value].is_source) throw ConfigError("inject() needs a spike source population");
    if (t < clock_) throw SimulationFault("cannot inject a spike in the past");
    injections_[t].push_back(global(pop, neuron));
  }

  /// Delivers inputs due now, updates every neuron, propagates spikes and
  /// applies plasticity, then advances the clock. Returns this step's spikes.
  std::span<const SpikeEvent> step() {
    const Time t = clock_;
    auto& due = ring_[slot(t)];
    for (const auto& d : due) {
      if (d.weight >= 0.0)
        exc_in_[d.target] += d.weight;
      else
        inh_in_[d.target] -= d.weight;
    }
    due.clear();

    fired_.clear();
    if (auto it = injections_.find(t); it != injections_.end()) {
      auto& v = it->second;
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      injected_.swap(v);
      injections_.erase(it);
    } else {
      injected_.clear();
    }

    const std::size_t raster_mark = raster_.spikes.size();
    std::size_t inj = 0;
    for (std::uint32_t p = 0; p < pops_.size(); ++p) {
      const auto& pop = pops_[p];
      if (pop.is_source) {
        while (inj < injected_.size() && injected_[inj] < pop.offset) ++inj;
        for (; inj < injected_.size() && injected_[inj] < pop.offset + pop.size; ++inj)
          emit(t, p, injected_[inj]);
        continue;
      }
      for (std::uint32_t n = pop.offset; n < pop.offset + pop.size; ++n) {
        if (lif_step(state_[n], pop.params, pop.prop, exc_in_[n], inh_in_[n])) emit(t, p, n);
        exc_in_[n] = 0.0;
        inh_in_[n] = 0.0;
      }
    }

    for (auto& proj : plastic_) {
      const auto& dst = pops_[proj.target.value];
      for (std::uint32_t g : fired_)
        if (g >= dst.offset && g < dst.offset + dst.size) proj.state.record_post(g - dst.offset, t);
    }

    for (std::uint32_t g : fired_) {
      for (const auto& s : out_[g]) enqueue(t, s.delay, s.target, s.weight);
      for (auto& proj : plastic_) {
        const auto& src = pops_[proj.source.value];
        if (g < src.offset || g >= src.offset + src.size) continue;
        const std::uint32_t pre = g - src.offset;
        proj.state.on_pre_spike(pre, t);
        const auto& dst = pops_[proj.target.value];
        for (std::uint32_t j = 0; j < dst.size; ++j) {
          const double w = proj.state.weight(pre, j);
          if (w != 0.0) enqueue(t, proj.delay, dst.offset + j, w);
        }
      }
    }

    ++clock_;
    return std::span<const SpikeEvent>(raster_.spikes).subspan(raster_mark);
  }

  void run(Time steps) {
    for (Time i = 0; i < steps; ++i) step();
  }

  void run_until(Time t) {
    while (clock_ < t) step();
  }

  Time clock() const { return clock_; }
  const RasterLog& raster() const { return raster_; }
  RasterLog& raster() { return raster_; }

  const std::vector<Population>& populations() const { return pops_; }
  const Population& population(PopulationId id) const { return pops_.at(id.value); }
  std::uint32_t size(PopulationId id) const { return pops_.at(id.value).size; }
  std::uint32_t neuron_count() const { return static_cast<std::uint32_t>(state_.size()); }

  std::optional<PopulationId> find(std::string_view name) const {
    for (std::uint32_t i = 0; i < pops_.size(); ++i)
      if (pops_[i].name == name) return PopulationId{i};
    return std::nullopt;
  }

  const NeuronState& state(PopulationId pop, std::uint32_t neuron) const {
    check_neuron(pop, neuron);
    return state_[global(pop, neuron)];
  }

  std::size_t static_synapse_count() const { return static_count_; }

  /// Static synapses from population `src` into population `dst`.
  std::size_t synapse_count(PopulationId src, PopulationId dst) const {
    const auto& s = pops_.at(src.value);
    const auto& d = pops_.at(dst.value);
    std::size_t n = 0;
    for (std::uint32_t g = s.offset; g < s.offset + s.size; ++g)
      for (const auto& syn : out_[g])
        if (syn.target >= d.offset && syn.target < d.offset + d.size) ++n;
    return n;
  }

  std::size_t plastic_count() const { return plastic_.size(); }
  const PlasticState& plastic(PlasticId id) const { return plastic_.at(id.value).state; }
  PopulationId plastic_source(PlasticId id) const { return plastic_.at(id.value).source; }
  PopulationId plastic_target(PlasticId id) const { return plastic_.at(id.value).target; }
  Time plastic_delay(PlasticId id) const { return plastic_.at(id.value).delay; }

  WeightRecord snapshot_weights(PlasticId id) const {
    const auto& s = plastic(id);
    return WeightRecord{s.rows(), s.cols(), s.weights()};
  }

  void load_weights(PlasticId id, const WeightRecord& rec) {
    auto& s = plastic_.at(id.value).state;
    if (rec.rows != s.rows() || rec.cols != s.cols() || rec.weights.size() != rec.rows * rec.cols)
      throw ConfigError("weight record is " + std::to_string(rec.rows) + "x" +
                        std::to_string(rec.cols) + ", projection is " + std::to_string(s.rows()) +
                        "x" + std::to_string(s.cols()));
    for (double w : rec.weights)
      if (!(w >= s.config().w_min && w <= s.config().w_max))
        throw ConfigError("weight record value outside [w_min, w_max]");
    s.set_weights(rec.weights);
  }

 private:
  struct Synapse {
    std::uint32_t target;
    double weight;  // signed
    Time delay;
  };
  struct Delivery {
    std::uint32_t target;
    double weight;  // signed
  };
  struct PlasticProjection {
    PopulationId source;
    PopulationId target;
    Time delay;
    PlasticState state;
  };

  PopulationId add(std::string name, std::uint32_t size, bool source, const NeuronParams& params,
                   const LifPropagators& prop) {
    if (size == 0) throw ConfigError("population '" + name + "' is empty");
    if (find(name)) throw ConfigError("duplicate population name '" + name + "'");
    const auto offset = static_cast<std::uint32_t>(state_.size());
    pops_.push_back(Population{name, offset, size, source, params, prop});
    raster_.population_names.push_back(std::move(name));
    state_.resize(offset + size, source ? NeuronState{0.0} : NeuronState::resting(params));
    exc_in_.resize(offset + size, 0.0);
    inh_in_.resize(offset + size, 0.0);
    out_.resize(offset + size);
    return PopulationId{static_cast<std::uint32_t>(pops_.size() - 1)};
  }

  void check_neuron(PopulationId pop, std::uint32_t neuron) const {
    if (pop.value >= pops_.size()) throw ConfigError("unknown population");
    if (neuron >= pops_[pop.value].size)
      throw ConfigError("neuron index " + std::to_string(neuron) + " out of range for '" +
                        pops_[pop.value].name + "'");
  }

  std::uint32_t global(PopulationId pop, std::uint32_t neuron) const {
    return pops_[pop.value].offset + neuron;
  }

  std::size_t slot(Time t) const { return static_cast<std::size_t>(t % static_cast<Time>(ring_.size())); }

  void grow_ring(Time delay) {
    const auto needed = static_cast<std::size_t>(delay + 1);
    if (needed <= ring_.size()) return;
    std::vector<std::vector<Delivery>> next(needed);
    for (Time t = clock_; t < clock_ + static_cast<Time>(ring_.size()); ++t)
      next[static_cast<std::size_t>(t % static_cast<Time>(needed))] = std::move(ring_[slot(t)]);
    ring_ = std::move(next);
  }

  void enqueue(Time now, Time delay, std::uint32_t target, double weight) {
    assert(delay >= 1 && delay < static_cast<Time>(ring_.size()));
    ring_[slot(now + delay)].push_back({target, weight});
  }

  void emit(Time t, std::uint32_t pop, std::uint32_t global_id) {
    fired_.push_back(global_id);
    raster_.spikes.push_back({t, PopulationId{pop}, global_id - pops_[pop].offset});
  }

  std::vector<Population> pops_;
  std::vector<NeuronState> state_;
  std::vector<double> exc_in_, inh_in_;
  std::vector<std::vector<Synapse>> out_;
  std::vector<PlasticProjection> plastic_;
  std::vector<std::vector<Delivery>> ring_ = std::vector<std::vector<Delivery>>(2);
  std::map<Time, std::vector<std::uint32_t>> injections_;
  std::vector<std::uint32_t> injected_, fired_;
  RasterLog raster_;
  std::size_t static_count_ = 0;
  Time clock_ = 0;
};

}  // namespace hippo
