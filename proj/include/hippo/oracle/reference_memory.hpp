// Map-based golden model of the memory and readout comparison.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hippo/model/readout.hpp"
#include "hippo/model/schedule.hpp"

namespace hippo::oracle {

/// cue -> content. Learning overwrites, recalling reads.
class ReferenceMemory {
 public:
  void learn(const MemoryWord& w) { store_[w.cue] = w.content; }

  std::vector<std::uint32_t> recall(std::uint32_t cue) const {
    auto it = store_.find(cue);
    return it == store_.end() ? std::vector<std::uint32_t>{} : it->second;
  }

  std::size_t size() const { return store_.size(); }

 private:
  std::map<std::uint32_t, std::vector<std::uint32_t>> store_;
};

inline std::vector<std::uint32_t> set_difference(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> d;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
  return d;
}

/// Expected readout of every operation, in schedule order.
inline std::vector<MemoryReadout> replay(const OperationSchedule& schedule) {
  ReferenceMemory mem;
  std::vector<MemoryReadout> expected;
  for (const auto& op : schedule.ops()) {
    MemoryReadout r;
    r.cue = op.word.cue;
    r.cue_out_time = op.start + OperationTiming::echo_offset;
    if (op.kind == OpKind::learn) {
      r.kind = ReadoutKind::learn_echo;
      r.content_out_time = r.cue_out_time;
      r.content = op.word.content;
      r.forgotten = set_difference(mem.recall(op.word.cue), op.word.content);
      mem.learn(op.word);
    } else {
      r.kind = ReadoutKind::recall;
      r.content_out_time = op.start + OperationTiming::recall_content_offset;
      r.content = mem.recall(op.word.cue);
    }
    expected.push_back(std::move(r));
  }
  return expected;
}

struct OperationCheck {
  std::size_t index = 0;
  OpKind op = OpKind::learn;
  MemoryReadout expected;
  std::optional<MemoryReadout> observed;
  bool match = false;
  Time timing_delta = 0;
  std::string detail;
};

struct ExpectationReport {
  std::vector<OperationCheck> checks;
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::size_t expected_count = 0;
  std::size_t observed_count = 0;

  bool length_mismatch() const { return expected_count != observed_count; }
  bool all_match() const { return mismatched == 0 && !length_mismatch(); }
};

inline std::string describe(const std::vector<std::uint32_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

/// Pairs readouts by position. Matching needs equal kind, cue, content and
/// erased content, and exact output times.
inline ExpectationReport compare(const std::vector<MemoryReadout>& expected,
                                 const std::vector<MemoryReadout>& observed,
                                 const std::vector<OpKind>& kinds = {}) {
  ExpectationReport rep;
  rep.expected_count = expected.size();
  rep.observed_count = observed.size();
  for (std::size_t i = 0; i < expected.size(); ++i) {
    OperationCheck c;
    c.index = i;
    c.op = i < kinds.size() ? kinds[i]
                            : (expected[i].kind == ReadoutKind::recall ? OpKind::recall : OpKind::learn);
    c.expected = expected[i];
    if (i < observed.size()) {
      const auto& o = observed[i];
      const auto& e = expected[i];
      c.observed = o;
      c.timing_delta = o.cue_out_time - e.cue_out_time;
      std::string d;
      if (o.kind != e.kind) d += std::string("kind ") + to_string(o.kind) + "; ";
      if (o.cue != e.cue) d += "cue " + std::to_string(o.cue) + "; ";
      if (o.cue_out_time != e.cue_out_time || o.content_out_time != e.content_out_time)
        d += "timing " + std::to_string(o.cue_out_time) + "/" + std::to_string(o.content_out_time) + "; ";
      if (o.content != e.content) {
        const auto missing = set_difference(e.content, o.content);
        const auto extra = set_difference(o.content, e.content);
        d += "content missing " + describe(missing) + " extra " + describe(extra) + "; ";
      }
      if (o.forgotten != e.forgotten)
        d += "erased " + describe(o.forgotten) + " expected " + describe(e.forgotten) + "; ";
      c.match = d.empty();
      c.detail = d;
    } else {
      c.detail = "no readout observed";
    }
    (c.match ? rep.matched : rep.mismatched) += 1;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

inline std::vector<OpKind> kinds_of(const OperationSchedule& s) {
  std::vector<OpKind> k;
  for (const auto& op : s.ops()) k.push_back(op.kind);
  return k;
}

}  // namespace hippo::oracle
