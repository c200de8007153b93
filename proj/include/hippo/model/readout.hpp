// Running schedules and turning OUTPUT rasters back into memory readouts.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hippo/model/hippocampus.hpp"

namespace hippo {

/// Simulates `schedule` on `hip` from its current clock up to `horizon`
/// (default: the schedule's required horizon). A horizon shorter than the
/// required one still runs but marks the raster truncated.
inline const RasterLog& run_schedule(HippocampusNetwork& hip, const OperationSchedule& schedule,
                                     std::optional<Time> horizon = std::nullopt) {
  hip.apply(schedule);
  const Time needed = schedule.required_horizon();
  const Time until = horizon.value_or(needed);
  auto& net = hip.network();
  net.run_until(until);
  if (until < needed) net.raster().truncated = true;
  return net.raster();
}

enum class ReadoutKind { learn_echo, recall, collision };

inline const char* to_string(ReadoutKind k) {
  switch (k) {
    case ReadoutKind::learn_echo: return "learn-echo";
    case ReadoutKind::recall: return "recall";
    case ReadoutKind::collision: return "collision";
  }
  return "?";
}

struct MemoryReadout {
  ReadoutKind kind = ReadoutKind::recall;
  Time cue_out_time = 0;
  std::uint32_t cue = 0;
  Time content_out_time = 0;
  std::vector<std::uint32_t> content;
  /// Content echoed between the two learning echoes: the part of the previous
  /// memory under this cue that the learn erased.
  std::vector<std::uint32_t> forgotten;

  bool operator==(const MemoryReadout&) const = default;
};

/// Groups OUTPUT spikes into readouts. A cue at t that repeats at t + 2 is a
/// learning echo (content at t, erased content at t + 1); a lone cue at t is a
/// recall whose content is read at t + 1. Cue values outside the
/// configuration and content without a cue become collision readouts.
inline std::vector<MemoryReadout> decode_output(const RasterLog& raster, const MemoryConfig& cfg) {
  const auto out = raster.find(population_names::output);
  if (!out) throw ConfigError("raster has no OUTPUT population");
  const std::uint32_t bits = cfg.cue_bits();

  struct Frame {
    std::uint32_t cue = 0;
    std::vector<std::uint32_t> content;
    bool used = false;
  };
  std::map<Time, Frame> frames;
  for (const auto& s : raster.spikes) {
    if (s.population != *out) continue;
    auto& f = frames[s.time];
    if (s.neuron < bits)
      f.cue |= 1u << s.neuron;
    else
      f.content.push_back(s.neuron - bits);
  }

  auto frame_at = [&](Time t) -> Frame* {
    auto it = frames.find(t);
    return it == frames.end() || it->second.used ? nullptr : &it->second;
  };

  std::vector<MemoryReadout> result;
  for (auto& [t, f] : frames) {
    if (f.used) continue;
    f.used = true;
    MemoryReadout r;
    r.cue_out_time = t;
    r.cue = f.cue;
    r.content_out_time = t;

    if (f.cue == 0) {
      r.kind = ReadoutKind::collision;
      r.content = f.content;
      result.push_back(std::move(r));
      continue;
    }
    if (f.cue > cfg.max_cue()) {
      r.kind = ReadoutKind::collision;
      r.content = f.content;
      result.push_back(std::move(r));
      continue;
    }

    Frame* next = frame_at(t + 1);
    Frame* second = frame_at(t + 2);
    if (second && second->cue == f.cue) {
      r.kind = second->content == f.content ? ReadoutKind::learn_echo : ReadoutKind::collision;
      r.content = f.content;
      if (next && next->cue == 0) {
        r.forgotten = next->content;
        next->used = true;
      }
      second->used = true;
    } else {
      r.kind = f.content.empty() ? ReadoutKind::recall : ReadoutKind::collision;
      r.content_out_time = t + 1;
      if (next && next->cue == 0) {
        r.content = next->content;
        next->used = true;
      }
    }
    result.push_back(std::move(r));
  }
  return result;
}

}  // namespace hippo
