// Benchmark schedule generators and the run-and-verify driver shared by the
// CLI and the tests.
#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "hippo/model/readout.hpp"
#include "hippo/oracle/reference_memory.hpp"
#include "hippo/oracle/stdp_replay.hpp"

namespace hippo::harness {

/// Five learns (two overwriting) and four recalls on a (5, 10) memory. The
/// fourth op waits 4 steps past its earliest start.
inline OperationSchedule combined_schedule(double residual_epsilon = 0.0) {
  MemoryConfig cfg{5, 10, residual_epsilon};
  OperationSchedule s(cfg);
  s.learn(MemoryWord::make(4, {0, 7, 8, 9}));
  s.learn(MemoryWord::make(5, {1, 2, 3}));
  s.recall(4);
  s.recall(5, s.earliest_start() + 4);
  s.learn(MemoryWord::make(4, {0, 1, 5}));
  s.learn(MemoryWord::make(5, {2, 6, 7, 8}));
  s.recall(4);
  s.learn(MemoryWord::make(2, {3, 4, 9}));
  s.recall(5);
  return s;
}

/// `learns` learns and `recalls` recalls in a seeded random order, auto-spaced,
/// with uniform cues and content bits drawn with probability 1/2.
inline OperationSchedule random_schedule(const MemoryConfig& cfg, std::uint64_t seed,
                                         std::size_t learns = 46, std::size_t recalls = 54) {
  std::mt19937_64 rng(seed);
  std::vector<OpKind> kinds(learns, OpKind::learn);
  kinds.insert(kinds.end(), recalls, OpKind::recall);
  // Fisher-Yates written out so the order does not depend on the standard
  // library's shuffle.
  for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[rng() % i]);

  OperationSchedule s(cfg);
  for (auto k : kinds) {
    const auto cue = static_cast<std::uint32_t>(rng() % cfg.max_cue() + 1);
    if (k == OpKind::recall) {
      s.recall(cue);
      continue;
    }
    std::vector<std::uint32_t> content;
    for (std::uint32_t c = 0; c < cfg.cont_size; ++c)
      if (rng() >> 63) content.push_back(c);
    s.learn(MemoryWord::make(cue, std::move(content)));
  }
  return s;
}

/// Content of cue `v` in sweep `sweep` (0-based): the binary pattern of v on
/// the content neurons, complemented on odd sweeps.
inline std::vector<std::uint32_t> memtest_content(const MemoryConfig& cfg, std::uint32_t v,
                                                  std::uint32_t sweep) {
  std::vector<std::uint32_t> content;
  for (std::uint32_t c = 0; c < cfg.cont_size; ++c) {
    const bool bit = c < 32 && ((v >> c) & 1u);
    if (bit != (sweep % 2 == 1)) content.push_back(c);
  }
  return content;
}

/// Every usable cue is learned and then recalled, once per sweep.
inline OperationSchedule memtest_schedule(const MemoryConfig& cfg, std::uint32_t sweeps = 3) {
  OperationSchedule s(cfg);
  for (std::uint32_t sw = 0; sw < sweeps; ++sw) {
    for (std::uint32_t v = 1; v <= cfg.max_cue(); ++v) {
      s.learn(MemoryWord::make(v, memtest_content(cfg, v, sw)));
      s.recall(v);
    }
  }
  return s;
}

struct RunResult {
  RasterLog raster;
  WeightRecord weights;
  std::vector<MemoryReadout> expected;
  std::vector<MemoryReadout> observed;
  oracle::ExpectationReport report;
  bool weights_match_oracle = false;
  double wall_seconds = 0.0;
};

/// Builds a network, runs `s` to its horizon, decodes and checks against both
/// oracles.
inline RunResult run_and_check(const OperationSchedule& s,
                               std::optional<Time> horizon = std::nullopt) {
  const auto t0 = std::chrono::steady_clock::now();
  HippocampusNetwork hip(s.config());
  RunResult r;
  r.raster = run_schedule(hip, s, horizon);
  r.weights = hip.snapshot_weights();
  r.expected = oracle::replay(s);
  r.observed = decode_output(r.raster, s.config());
  r.report = oracle::compare(r.expected, r.observed, oracle::kinds_of(s));
  const auto& cfg = s.config();
  const auto brute = oracle::brute_force_weights(r.raster, hip.ca3_cue(), cfg.cue_size,
                                                 hip.ca3_cont(), cfg.cont_size,
                                                 ca3_stdp_config(cfg.residual_epsilon));
  r.weights_match_oracle = brute.weights == r.weights.weights;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace hippo::harness
