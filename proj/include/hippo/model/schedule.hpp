#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hippo/model/config.hpp"

namespace hippo {

enum class OpKind { learn, recall };

inline const char* to_string(OpKind k) { return k == OpKind::learn ? "learn" : "recall"; }

struct Operation {
  Time start = 0;
  OpKind kind = OpKind::learn;
  MemoryWord word;  // content is empty for recalls

  Time interop() const {
    return kind == OpKind::learn ? OperationTiming::learn_interop : OperationTiming::recall_interop;
  }
  Time optime() const {
    return kind == OpKind::learn ? OperationTiming::learn_optime : OperationTiming::recall_optime;
  }
  /// Time of the last OUTPUT activity the operation is expected to cause.
  Time last_output() const {
    return start + (kind == OpKind::learn ? OperationTiming::second_echo_offset
                                          : OperationTiming::recall_content_offset);
  }
  bool operator==(const Operation&) const = default;
};

/// Timed learn/recall requests for one memory configuration.
///
/// Starts are strictly increasing and, unless timing is forced, each start is
/// at least the predecessor's interoperation time after it.
class OperationSchedule {
 public:
  explicit OperationSchedule(MemoryConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  static constexpr Time kFirstStart = 1;

  const MemoryConfig& config() const { return cfg_; }
  const std::vector<Operation>& ops() const { return ops_; }
  bool empty() const { return ops_.empty(); }
  std::size_t size() const { return ops_.size(); }
  bool forced_timing() const { return forced_; }

  Time earliest_start() const {
    return ops_.empty() ? kFirstStart : ops_.back().start + ops_.back().interop();
  }

  /// Adds a learn; `at` empty means the earliest legal start.
  const Operation& learn(const MemoryWord& word, std::optional<Time> at = std::nullopt,
                         bool force = false) {
    check_cue(word.cue);
    auto w = MemoryWord::make(word.cue, word.content);
    for (auto c : w.content)
      if (c >= cfg_.cont_size)
        throw ScheduleError("content index " + std::to_string(c) + " outside [0, " +
                            std::to_string(cfg_.cont_size) + ")");
    return push({place(at, force), OpKind::learn, std::move(w)}, force);
  }

  const Operation& recall(std::uint32_t cue, std::optional<Time> at = std::nullopt,
                          bool force = false) {
    check_cue(cue);
    return push({place(at, force), OpKind::recall, MemoryWord{cue, {}}}, force);
  }

  /// First step at which the whole schedule has settled.
  Time required_horizon() const {
    return ops_.empty() ? 0 : ops_.back().start + ops_.back().optime();
  }

  /// From the first input to the last expected OUTPUT activity.
  Time span() const {
    return ops_.empty() ? 0 : ops_.back().last_output() - ops_.front().start;
  }

  std::size_t count(OpKind k) const {
    std::size_t n = 0;
    for (const auto& op : ops_) n += op.kind == k;
    return n;
  }

 private:
  void check_cue(std::uint32_t cue) const {
    if (cue < 1 || cue > cfg_.max_cue())
      throw ScheduleError("cue " + std::to_string(cue) + " outside [1, " +
                          std::to_string(cfg_.max_cue()) + "]");
  }

  Time place(std::optional<Time> at, bool force) const {
    const Time earliest = earliest_start();
    if (!at) return earliest;
    if (*at < 0) throw ScheduleError("negative start time");
    if (!ops_.empty() && *at <= ops_.back().start)
      throw ScheduleError("start " + std::to_string(*at) + " is not after the previous op");
    if (*at < earliest && !force)
      throw ScheduleError("start " + std::to_string(*at) +
                          " violates interoperation time; earliest legal start is " +
                          std::to_string(earliest));
    return *at;
  }

  const Operation& push(Operation op, bool force) {
    if (op.start < earliest_start() && force) forced_ = true;
    ops_.push_back(std::move(op));
    return ops_.back();
  }

  MemoryConfig cfg_;
  std::vector<Operation> ops_;
  bool forced_ = false;
};

}  // namespace hippo
