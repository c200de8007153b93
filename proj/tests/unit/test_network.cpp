#include <gtest/gtest.h>

#include "hippo/model/config.hpp"

using namespace hippo;

TEST(Network, EmptyNetworkSteps) {
  Network net;
  net.run(10);
  EXPECT_EQ(net.clock(), 10);
  EXPECT_TRUE(net.raster().spikes.empty());
}

TEST(Network, OneHopFiresAfterDelay) {
  Network net;
  const auto src = net.add_source("S", 1);
  const auto dst = net.add_population("D", 1, gate_neuron_params());
  net.connect(src, 0, dst, 0, {1.0, 1, Receptor::excitatory});
  net.inject(src, 0, 3);
  net.run_until(10);
  const auto& r = net.raster();
  EXPECT_EQ(r.times_of(src, 0), std::vector<Time>{3});
  EXPECT_EQ(r.times_of(dst, 0), std::vector<Time>{4});
}

TEST(Network, DelayConservation) {
  for (Time d : {1, 2, 4, 7, 15}) {
    Network net;
    const auto src = net.add_source("S", 1);
    const auto dst = net.add_population("D", 1, ca3_cont_params());
    net.connect(src, 0, dst, 0, {6.0, d, Receptor::excitatory});
    net.inject(src, 0, 5);
    net.run_until(40);
    EXPECT_EQ(net.raster().times_of(dst, 0), std::vector<Time>{5 + d}) << "delay " << d;
  }
}

TEST(Network, InhibitoryReceptor) {
  Network net;
  const auto src = net.add_source("S", 2);
  const auto dst = net.add_population("D", 1, gate_neuron_params());
  net.connect(src, 0, dst, 0, {1.0, 1, Receptor::excitatory});
  net.connect(src, 1, dst, 0, {1.0, 1, Receptor::inhibitory});
  net.inject(src, 0, 1);
  net.inject(src, 1, 1);
  net.run_until(5);
  EXPECT_TRUE(net.raster().times_of(dst, 0).empty());
}

TEST(Network, RasterOrderedByTimePopulationNeuron) {
  Network net;
  const auto src = net.add_source("S", 3);
  const auto a = net.add_population("A", 3, gate_neuron_params());
  net.connect_one_to_one(src, a, {1.0, 1, Receptor::excitatory});
  for (std::uint32_t n : {2u, 0u, 1u}) net.inject(src, n, 1);
  net.run_until(5);
  const auto& s = net.raster().spikes;
  ASSERT_EQ(s.size(), 6u);
  for (std::size_t i = 1; i < s.size(); ++i) {
    const auto key = [](const SpikeEvent& e) { return std::tuple(e.time, e.population, e.neuron); };
    EXPECT_LT(key(s[i - 1]), key(s[i]));
  }
}

TEST(Network, PlasticProjectionLearnsCoincidence) {
  Network net;
  const auto src = net.add_source("S", 2);
  const auto pre = net.add_population("PRE", 1, ca3_cue_params());
  const auto post = net.add_population("POST", 1, ca3_cont_params());
  net.connect(src, 0, pre, 0, {6.0, 1, Receptor::excitatory});
  net.connect(src, 1, post, 0, {6.0, 1, Receptor::excitatory});
  const auto pid = net.add_plastic(pre, post, ca3_stdp_config(), 1, 0.0);
  net.inject(src, 0, 1);
  net.inject(src, 1, 1);
  net.run_until(5);
  EXPECT_EQ(net.snapshot_weights(pid).at(0, 0), 6.0);
  // Recall: pre alone now drives post one step later.
  net.inject(src, 0, 10);
  net.run_until(15);
  EXPECT_EQ(net.raster().times_of(post, 0), (std::vector<Time>{2, 12}));
}

TEST(Network, SnapshotLoadRoundTrip) {
  Network net;
  const auto a = net.add_population("A", 3, ca3_cue_params());
  const auto b = net.add_population("B", 2, ca3_cont_params());
  const auto pid = net.add_plastic(a, b, ca3_stdp_config(), 1, 0.0);
  auto rec = net.snapshot_weights(pid);
  EXPECT_EQ(rec.rows, 3u);
  EXPECT_EQ(rec.cols, 2u);
  for (double w : rec.weights) EXPECT_EQ(w, 0.0);
  rec.weights = {0.5, 1.0, 6.0, 0.0, 3.25, 1e-3};
  net.load_weights(pid, rec);
  EXPECT_EQ(net.snapshot_weights(pid).weights, rec.weights);
}

TEST(Network, LoadWeightsRejectsBadRecords) {
  Network net;
  const auto a = net.add_population("A", 3, ca3_cue_params());
  const auto b = net.add_population("B", 2, ca3_cont_params());
  const auto pid = net.add_plastic(a, b, ca3_stdp_config(), 1, 0.0);
  EXPECT_THROW(net.load_weights(pid, WeightRecord{2, 3, std::vector<double>(6, 0.0)}), ConfigError);
  EXPECT_THROW(net.load_weights(pid, WeightRecord{3, 2, std::vector<double>(6, 7.0)}), ConfigError);
}

TEST(Network, ConstructionErrors) {
  Network net;
  const auto src = net.add_source("S", 1);
  const auto a = net.add_population("A", 1, gate_neuron_params());
  EXPECT_THROW(net.connect(src, 0, a, 0, {1.0, 0, Receptor::excitatory}), ConfigError);
  EXPECT_THROW(net.connect(src, 0, a, 0, {-1.0, 1, Receptor::excitatory}), ConfigError);
  EXPECT_THROW(net.connect(src, 1, a, 0, {1.0, 1, Receptor::excitatory}), std::exception);
  EXPECT_THROW(net.connect(a, 0, src, 0, {1.0, 1, Receptor::excitatory}), ConfigError);
  EXPECT_THROW(net.inject(a, 0, 1), std::exception);
}

TEST(Network, DeterministicRasters) {
  auto build_and_run = [] {
    Network net;
    const auto src = net.add_source("S", 4);
    const auto a = net.add_population("A", 4, ca3_cue_params());
    const auto b = net.add_population("B", 4, ca3_cont_params());
    net.connect_one_to_one(src, a, {6.0, 1, Receptor::excitatory});
    net.connect_one_to_one(src, b, {6.0, 3, Receptor::excitatory});
    net.add_plastic(a, b, ca3_stdp_config(0.1), 1, 2.0);
    for (Time t = 1; t < 40; t += 3) net.inject(src, static_cast<std::uint32_t>(t % 4), t);
    net.run_until(50);
    return std::pair(net.raster().spikes, net.snapshot_weights(PlasticId{0}).weights);
  };
  EXPECT_EQ(build_and_run(), build_and_run());
}
