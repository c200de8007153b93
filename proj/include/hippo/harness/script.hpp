// JSON operation scripts.
//
//   {"header": {"cue_size": 5, "cont_size": 10, "residual_epsilon": 0.0, "seed": 0},
//    "ops": [{"kind": "learn", "at": 1, "cue": 4, "content": [0, 7, 8, 9]},
//            {"kind": "recall", "at": "auto", "cue": 4}]}
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hippo/model/schedule.hpp"

namespace hippo::harness {

using nlohmann::json;

class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Script {
  MemoryConfig config;
  std::uint64_t seed = 0;
  OperationSchedule schedule{config};
};

namespace detail {

template <typename T>
T get_uint(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ScriptError(where + ": missing '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ScriptError(where + ": '" + key + "' must be a non-negative integer");
  return v.get<T>();
}

}  // namespace detail

/// Builds the schedule; `force_timing` lets explicit starts break spacing.
inline Script parse_script(const json& doc, bool force_timing = false) {
  if (!doc.is_object()) throw ScriptError("script: top level must be an object");
  if (!doc.contains("header") || !doc.at("header").is_object())
    throw ScriptError("script: missing 'header' object");
  const auto& h = doc.at("header");

  MemoryConfig cfg;
  cfg.cue_size = detail::get_uint<std::uint32_t>(h, "cue_size", "header");
  cfg.cont_size = detail::get_uint<std::uint32_t>(h, "cont_size", "header");
  if (h.contains("residual_epsilon")) {
    if (!h.at("residual_epsilon").is_number())
      throw ScriptError("header: 'residual_epsilon' must be a number");
    cfg.residual_epsilon = h.at("residual_epsilon").get<double>();
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ScriptError(std::string("header: ") + e.what());
  }

  Script s{cfg, h.contains("seed") ? detail::get_uint<std::uint64_t>(h, "seed", "header") : 0,
           OperationSchedule(cfg)};

  if (!doc.contains("ops") || !doc.at("ops").is_array())
    throw ScriptError("script: missing 'ops' array");
  const auto& ops = doc.at("ops");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string where = "op " + std::to_string(i);
    const auto& o = ops[i];
    if (!o.is_object()) throw ScriptError(where + ": must be an object");
    if (!o.contains("kind") || !o.at("kind").is_string())
      throw ScriptError(where + ": missing 'kind'");
    const auto kind = o.at("kind").get<std::string>();
    if (kind != "learn" && kind != "recall")
      throw ScriptError(where + ": kind must be \"learn\" or \"recall\"");

    std::optional<Time> at;
    if (o.contains("at")) {
      const auto& a = o.at("at");
      if (a.is_string()) {
        if (a.get<std::string>() != "auto") throw ScriptError(where + ": 'at' string must be \"auto\"");
      } else if (a.is_number_integer()) {
        at = a.get<Time>();
      } else {
        throw ScriptError(where + ": 'at' must be an integer or \"auto\"");
      }
    }
    const auto cue = detail::get_uint<std::uint32_t>(o, "cue", where);

    try {
      if (kind == "learn") {
        std::vector<std::uint32_t> content;
        if (o.contains("content")) {
          if (!o.at("content").is_array()) throw ScriptError(where + ": 'content' must be an array");
          for (const auto& c : o.at("content")) {
            if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
              throw ScriptError(where + ": content entries must be non-negative integers");
            content.push_back(c.get<std::uint32_t>());
          }
        }
        s.schedule.learn(MemoryWord::make(cue, std::move(content)), at, force_timing);
      } else {
        if (o.contains("content")) throw ScriptError(where + ": recall takes no 'content'");
        s.schedule.recall(cue, at, force_timing);
      }
    } catch (const ScheduleError& e) {
      throw ScriptError(where + ": " + e.what());
    }
  }
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScriptError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScriptError(path + ": " + e.what());
  }
}

inline Script load_script(const std::string& path, bool force_timing = false) {
  return parse_script(read_json_file(path), force_timing);
}

inline json config_to_json(const MemoryConfig& cfg, std::uint64_t seed) {
  return json{{"cue_size", cfg.cue_size},
              {"cont_size", cfg.cont_size},
              {"residual_epsilon", cfg.residual_epsilon},
              {"seed", seed}};
}

/// Script with every start resolved to an explicit time.
inline json schedule_to_json(const OperationSchedule& s, std::uint64_t seed = 0) {
  json ops = json::array();
  for (const auto& op : s.ops()) {
    json o{{"kind", to_string(op.kind)}, {"at", op.start}, {"cue", op.word.cue}};
    if (op.kind == OpKind::learn) o["content"] = op.word.content;
    ops.push_back(std::move(o));
  }
  return json{{"header", config_to_json(s.config(), seed)}, {"ops", std::move(ops)}};
}

}  // namespace hippo::harness
