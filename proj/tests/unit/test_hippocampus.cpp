#include <gtest/gtest.h>

#include "hippo/harness/bench.hpp"
#include "hippo/model/readout.hpp"

using namespace hippo;

namespace {

using Times = std::vector<Time>;

std::set<Time> times_in(const RasterLog& r, const std::string& pop) {
  std::set<Time> out;
  const auto id = r.find(pop);
  for (const auto& s : r.spikes)
    if (s.population == *id) out.insert(s.time);
  return out;
}

std::vector<std::uint32_t> neurons_at(const RasterLog& r, const std::string& pop, Time t) {
  std::vector<std::uint32_t> out;
  const auto id = r.find(pop);
  for (const auto& s : r.spikes)
    if (s.population == *id && s.time == t) out.push_back(s.neuron);
  return out;
}

OperationSchedule overwrite_schedule() {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(5, {7, 8, 9}), 1);
  s.recall(5, 8);
  s.learn(MemoryWord::make(5, {6, 7, 8}), 14);
  s.recall(5, 21);
  return s;
}

}  // namespace

TEST(Build, PaperSizes) {
  HippocampusNetwork small(MemoryConfig{5, 10, 0.0});
  const auto& n = small.network();
  EXPECT_EQ(n.size(small.input()), 13u);
  EXPECT_EQ(n.size(small.ca3_cue()), 5u);
  EXPECT_EQ(n.size(small.ca3_cont()), 10u);
  EXPECT_EQ(n.size(small.output()), 13u);
  EXPECT_EQ(n.size(small.ca1().output), 3u);

  HippocampusNetwork big(MemoryConfig{64, 32, 0.0});
  EXPECT_EQ(big.network().size(big.input()), 38u);
  EXPECT_EQ(big.network().size(big.ca3_cue()), 64u);
  const auto w = big.snapshot_weights();
  EXPECT_EQ(w.rows, 64u);
  EXPECT_EQ(w.cols, 32u);
  for (double x : w.weights) EXPECT_EQ(x, 0.0);
}

TEST(Build, Deterministic) {
  HippocampusNetwork a(MemoryConfig{5, 10, 0.0}), b(MemoryConfig{5, 10, 0.0});
  EXPECT_EQ(a.network().static_synapse_count(), b.network().static_synapse_count());
  EXPECT_EQ(a.network().neuron_count(), b.network().neuron_count());
  for (std::size_t i = 0; i < a.network().populations().size(); ++i)
    EXPECT_EQ(a.network().populations()[i].name, b.network().populations()[i].name);
}

TEST(Build, RejectsBadConfig) {
  EXPECT_THROW(HippocampusNetwork(MemoryConfig{1, 10, 0.0}), ConfigError);
  EXPECT_THROW(HippocampusNetwork(MemoryConfig{5, 0, 0.0}), ConfigError);
  EXPECT_THROW(HippocampusNetwork(MemoryConfig{5, 10, -1.0}), ConfigError);
}

TEST(Build, InputPattern) {
  HippocampusNetwork h(MemoryConfig{5, 10, 0.0});
  EXPECT_EQ(h.input_pattern(MemoryWord::make(4, {0, 7, 8, 9})),
            (std::vector<std::uint32_t>{2, 3, 10, 11, 12}));
}

TEST(Schedule, AutoSpacing) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  EXPECT_EQ(s.learn(MemoryWord::make(1, {0})).start, 1);
  EXPECT_EQ(s.recall(1).start, 8);
  EXPECT_EQ(s.recall(2).start, 14);
  EXPECT_EQ(s.learn(MemoryWord::make(1, {})).start, 20);
  EXPECT_EQ(s.earliest_start(), 27);
}

TEST(Schedule, RejectsEarlyStartNamingEarliest) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(4, {0}), 1);
  try {
    s.recall(4, 7);
    FAIL() << "expected ScheduleError";
  } catch (const ScheduleError& e) {
    EXPECT_NE(std::string(e.what()).find("earliest legal start is 8"), std::string::npos);
  }
  EXPECT_NO_THROW(s.recall(4, 7, true));
  EXPECT_TRUE(s.forced_timing());
}

TEST(Schedule, RejectsBadWords) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  EXPECT_THROW(s.learn(MemoryWord::make(0, {1})), ScheduleError);
  EXPECT_THROW(s.learn(MemoryWord::make(6, {1})), ScheduleError);
  EXPECT_THROW(s.learn(MemoryWord::make(1, {10})), ScheduleError);
  EXPECT_THROW(s.recall(0), ScheduleError);
  OperationSchedule big(MemoryConfig{64, 32, 0.0});
  EXPECT_NO_THROW(big.recall(63));
  EXPECT_THROW(big.recall(64), ScheduleError);
}

TEST(Schedule, HorizonAndSpan) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  EXPECT_EQ(s.required_horizon(), 0);
  s.learn(MemoryWord::make(4, {0}), 1);
  EXPECT_EQ(s.required_horizon(), 13);
  EXPECT_EQ(s.span(), 8);
  s.recall(4, 11);
  EXPECT_EQ(s.required_horizon(), 22);
  EXPECT_EQ(s.span(), 17);
}

TEST(Run, LearnRasterAndWeights) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(4, {0, 7, 8, 9}), 1);
  HippocampusNetwork h(s.config());
  const auto& r = run_schedule(h, s);
  EXPECT_EQ(times_in(r, "INPUT"), (std::set<Time>{1, 2, 3}));
  for (Time t : {1, 2, 3}) EXPECT_EQ(neurons_at(r, "INPUT", t), (std::vector<std::uint32_t>{2, 3, 10, 11, 12}));
  EXPECT_EQ(times_in(r, "DG"), (std::set<Time>{4, 5, 6}));
  EXPECT_EQ(neurons_at(r, "DG", 5), std::vector<std::uint32_t>{3});
  EXPECT_EQ(times_in(r, "CA3cue"), (std::set<Time>{5, 7}));
  EXPECT_EQ(times_in(r, "CA3cont"), (std::set<Time>{5, 7}));
  EXPECT_EQ(neurons_at(r, "CA3cont", 5), (std::vector<std::uint32_t>{0, 7, 8, 9}));
  EXPECT_EQ(times_in(r, "CA1"), (std::set<Time>{6, 8}));
  EXPECT_EQ(times_in(r, "OUTPUT"), (std::set<Time>{7, 9}));
  EXPECT_EQ(neurons_at(r, "OUTPUT", 9), (std::vector<std::uint32_t>{2, 3, 10, 11, 12}));

  const auto w = h.snapshot_weights();
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 10; ++j)
      EXPECT_EQ(w.at(i, j), (i == 3 && (j == 0 || j >= 7)) ? 6.0 : 0.0) << i << "," << j;
}

TEST(Run, RecallAfterLearn) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(4, {0, 7, 8, 9}), 1);
  s.recall(4, 11);
  HippocampusNetwork h(s.config());
  const auto& r = run_schedule(h, s);
  EXPECT_EQ(neurons_at(r, "CA3cue", 15), std::vector<std::uint32_t>{3});
  EXPECT_EQ(neurons_at(r, "CA3cont", 16), (std::vector<std::uint32_t>{0, 7, 8, 9}));
  EXPECT_EQ(neurons_at(r, "OUTPUT", 17), (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(neurons_at(r, "OUTPUT", 18), (std::vector<std::uint32_t>{3, 10, 11, 12}));

  const auto readouts = decode_output(r, s.config());
  ASSERT_EQ(readouts.size(), 2u);
  EXPECT_EQ(readouts[0].kind, ReadoutKind::learn_echo);
  EXPECT_EQ(readouts[1].kind, ReadoutKind::recall);
  EXPECT_EQ(readouts[1].cue, 4u);
  EXPECT_EQ(readouts[1].cue_out_time, 17);
  EXPECT_EQ(readouts[1].content_out_time, 18);
  EXPECT_EQ(readouts[1].content, (std::vector<std::uint32_t>{0, 7, 8, 9}));
}

TEST(Run, OverwriteForgets) {
  const auto s = overwrite_schedule();
  HippocampusNetwork h(s.config());
  const auto& r = run_schedule(h, s);
  const auto out = decode_output(r, s.config());
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[1].content, (std::vector<std::uint32_t>{7, 8, 9}));
  EXPECT_EQ(out[2].kind, ReadoutKind::learn_echo);
  EXPECT_EQ(out[2].forgotten, std::vector<std::uint32_t>{9});
  EXPECT_EQ(neurons_at(r, "OUTPUT", 21), std::vector<std::uint32_t>{3 + 9});
  EXPECT_EQ(out[3].content, (std::vector<std::uint32_t>{6, 7, 8}));
  const auto w = h.snapshot_weights();
  EXPECT_LT(w.at(4, 9), firing_equivalent_weight(ca3_cont_params()));
  for (std::uint32_t j : {6u, 7u, 8u}) EXPECT_EQ(w.at(4, j), 6.0);
}

TEST(Run, EmptyScheduleEmptyRaster) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  HippocampusNetwork h(s.config());
  EXPECT_TRUE(run_schedule(h, s, 500).spikes.empty());
}

TEST(Run, UnlearnedCueRecallsNothing) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.recall(2);
  HippocampusNetwork h(s.config());
  const auto& r = run_schedule(h, s);
  EXPECT_EQ(times_in(r, "CA3cue"), std::set<Time>{5});
  EXPECT_TRUE(times_in(r, "CA3cont").empty());
  const auto out = decode_output(r, s.config());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].cue, 2u);
  EXPECT_TRUE(out[0].content.empty());
}

TEST(Run, EmptyContentLearnEchoesCueOnly) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(3, {}));
  HippocampusNetwork h(s.config());
  const auto out = decode_output(run_schedule(h, s), s.config());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].kind, ReadoutKind::learn_echo);
  EXPECT_TRUE(out[0].content.empty());
}

TEST(Run, ShortHorizonTruncates) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(3, {1}));
  HippocampusNetwork h(s.config());
  EXPECT_TRUE(run_schedule(h, s, 5).truncated);
}

TEST(Run, ForcedOverlapProducesCollision) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  s.learn(MemoryWord::make(1, {0}), 1);
  s.learn(MemoryWord::make(2, {1}), 3, true);
  HippocampusNetwork h(s.config());
  const auto out = decode_output(run_schedule(h, s), s.config());
  bool collision = false;
  for (const auto& r : out) collision |= r.kind == ReadoutKind::collision;
  EXPECT_TRUE(collision);
}

TEST(Run, ScheduleMustMatchConfig) {
  OperationSchedule s(MemoryConfig{5, 10, 0.0});
  HippocampusNetwork h(MemoryConfig{8, 10, 0.0});
  EXPECT_THROW(h.apply(s), ConfigError);
}

TEST(Decode, NoOutputNoReadouts) {
  RasterLog r;
  r.population_names = {"INPUT", "OUTPUT"};
  EXPECT_TRUE(decode_output(r, MemoryConfig{5, 10, 0.0}).empty());
}

TEST(Decode, OutOfRangeCueIsCollision) {
  RasterLog r;
  r.population_names = {"OUTPUT"};
  r.spikes = {{10, PopulationId{0}, 0}, {10, PopulationId{0}, 1}, {10, PopulationId{0}, 2}};
  const auto out = decode_output(r, MemoryConfig{5, 10, 0.0});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].kind, ReadoutKind::collision);
  EXPECT_EQ(out[0].cue, 7u);
}

TEST(Properties, WriteThenReadAndOverwrite) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    OperationSchedule s(MemoryConfig{8, 12, 0.0});
    const auto cue = static_cast<std::uint32_t>(rng() % 7 + 1);
    std::vector<std::uint32_t> a, b;
    for (std::uint32_t j = 0; j < 12; ++j) {
      if (rng() & 1) a.push_back(j);
      if (rng() & 1) b.push_back(j);
    }
    s.learn(MemoryWord::make(cue, a));
    s.recall(cue);
    s.learn(MemoryWord::make(cue, b));
    s.recall(cue);
    HippocampusNetwork h(s.config());
    const auto out = decode_output(run_schedule(h, s), s.config());
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[1].content, a);
    EXPECT_EQ(out[3].content, b);
  }
}

TEST(Properties, IsolationAndWeightShape) {
  const auto s = harness::random_schedule(MemoryConfig{8, 12, 0.0}, 99, 30, 30);
  HippocampusNetwork h(s.config());
  run_schedule(h, s);
  std::map<std::uint32_t, std::vector<std::uint32_t>> last;
  for (const auto& op : s.ops())
    if (op.kind == OpKind::learn) last[op.word.cue] = op.word.content;
  const auto w = h.snapshot_weights();
  const double fire = firing_equivalent_weight(ca3_cont_params());
  for (std::uint32_t i = 0; i < 8; ++i)
    for (std::uint32_t j = 0; j < 12; ++j) {
      const auto& c = last[i + 1];
      if (std::binary_search(c.begin(), c.end(), j))
        EXPECT_EQ(w.at(i, j), 6.0);
      else
        EXPECT_LT(w.at(i, j), fire);
    }
}

TEST(Properties, RecallContentSevenStepsAfterCue) {
  const auto s = harness::random_schedule(MemoryConfig{5, 10, 0.0}, 3, 10, 10);
  HippocampusNetwork h(s.config());
  const auto out = decode_output(run_schedule(h, s), s.config());
  ASSERT_EQ(out.size(), s.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& op = s.ops()[i];
    EXPECT_EQ(out[i].cue_out_time, op.start + 6);
    EXPECT_EQ(out[i].content_out_time, op.start + (op.kind == OpKind::recall ? 7 : 6));
  }
}
