// hippo_cli: run operation scripts and benchmarks on the hippocampal memory
// model, print resource tables and re-verify stored rasters.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hippo/harness/bench.hpp"
#include "hippo/harness/raster_io.hpp"
#include "hippo/harness/script.hpp"
#include "hippo/model/resources.hpp"

namespace fs = std::filesystem;
using namespace hippo;
using namespace hippo::harness;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr const char* kOutEnv = "HIPPO_OUT_DIR";

struct Common {
  std::string config;  // "CUE,CONT" or a JSON file
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  bool force_timing = false;
};

/// --out wins over the environment; the environment wins over `fallback`.
std::string resolve_out(const Common& c, const std::string& fallback) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return fallback;
}

std::optional<MemoryConfig> parse_config_arg(const std::string& arg) {
  if (arg.empty()) return std::nullopt;
  MemoryConfig cfg;
  if (arg.find(',') != std::string::npos && !fs::exists(arg)) {
    std::stringstream ss(arg);
    char comma = 0;
    long long cue = -1, cont = -1;
    ss >> cue >> comma >> cont;
    if (!ss || comma != ',' || !ss.eof() || cue < 0 || cont < 0)
      throw ScriptError("--config: expected CUE,CONT or a JSON file, got '" + arg + "'");
    cfg.cue_size = static_cast<std::uint32_t>(cue);
    cfg.cont_size = static_cast<std::uint32_t>(cont);
  } else {
    const auto j = read_json_file(arg);
    const auto& h = j.contains("header") ? j.at("header") : j;
    try {
      cfg.cue_size = h.at("cue_size").get<std::uint32_t>();
      cfg.cont_size = h.at("cont_size").get<std::uint32_t>();
      cfg.residual_epsilon = h.value("residual_epsilon", 0.0);
    } catch (const json::exception& e) {
      throw ScriptError(arg + ": " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ScriptError(std::string("--config: ") + e.what());
  }
  return cfg;
}

void write_outputs(const std::string& dir, const RunResult& r, const OperationSchedule& s,
                   std::uint64_t seed) {
  fs::create_directories(dir);
  write_text(dir + "/raster.csv", format_raster(r.raster, s, seed));
  json readouts = json::array();
  for (const auto& o : r.observed) readouts.push_back(readout_to_json(o));
  write_text(dir + "/readouts.json", readouts.dump(2) + "\n");
  write_text(dir + "/weights.json", weights_to_json(r.weights).dump(2) + "\n");
  json report = report_to_json(r.report);
  report["weights_match_oracle"] = r.weights_match_oracle;
  report["truncated"] = r.raster.truncated;
  report["forced_timing"] = s.forced_timing();
  write_text(dir + "/report.json", report.dump(2) + "\n");
}

void print_mismatches(const oracle::ExpectationReport& rep, std::ostream& os) {
  for (const auto& c : rep.checks)
    if (!c.match)
      os << "  op " << c.index << " (" << to_string(c.op) << " cue " << c.expected.cue
         << " at out " << c.expected.cue_out_time << "): " << c.detail << "\n";
  if (rep.length_mismatch())
    os << "  readout count: expected " << rep.expected_count << ", observed " << rep.observed_count
       << "\n";
}

int cmd_run(const std::string& script_path, const Common& c, std::optional<Time> horizon) {
  auto doc = read_json_file(script_path);
  if (doc.is_object() && doc.contains("header") && doc["header"].is_object()) {
    if (auto cfg = parse_config_arg(c.config)) {
      doc["header"]["cue_size"] = cfg->cue_size;
      doc["header"]["cont_size"] = cfg->cont_size;
    }
    if (c.epsilon) doc["header"]["residual_epsilon"] = *c.epsilon;
    if (c.seed) doc["header"]["seed"] = *c.seed;
  }
  const auto script = parse_script(doc, c.force_timing);
  const auto r = run_and_check(script.schedule, horizon);
  const auto dir = resolve_out(c, "hippo_out");
  write_outputs(dir, r, script.schedule, script.seed);

  std::cout << "ops " << script.schedule.size() << ", spikes " << r.raster.spikes.size()
            << ", readouts " << r.report.matched << "/" << r.report.expected_count << " match"
            << ", weights " << (r.weights_match_oracle ? "match" : "DIFFER") << " oracle"
            << (r.raster.truncated ? ", TRUNCATED" : "")
            << (script.schedule.forced_timing() ? ", forced timing" : "") << " -> " << dir << "\n";
  if (r.raster.truncated)
    std::cerr << "warning: horizon " << *horizon << " is shorter than the required "
              << script.schedule.required_horizon() << "; raster truncated\n";
  print_mismatches(r.report, std::cout);
  return r.report.all_match() && r.weights_match_oracle ? kOk : kMismatch;
}

int cmd_bench(const std::string& suite, const Common& c, std::uint32_t sweeps) {
  const double eps = c.epsilon.value_or(0.0);
  const auto cfg_arg = parse_config_arg(c.config);
  std::optional<OperationSchedule> sched;
  std::uint64_t seed = c.seed.value_or(1);
  if (suite == "combined") {
    if (cfg_arg && !(cfg_arg->cue_size == 5 && cfg_arg->cont_size == 10))
      throw ScriptError("combined suite is defined for config 5,10 only");
    sched = combined_schedule(eps);
  } else if (suite == "random") {
    auto cfg = cfg_arg.value_or(MemoryConfig{5, 10, 0.0});
    cfg.residual_epsilon = eps;
    sched = random_schedule(cfg, seed);
  } else if (suite == "memtest") {
    auto cfg = cfg_arg.value_or(MemoryConfig{64, 32, 0.0});
    cfg.residual_epsilon = eps;
    sched = memtest_schedule(cfg, sweeps);
  } else {
    throw CLI::ValidationError("suite", "unknown suite '" + suite + "' (combined, random, memtest)");
  }
  const auto r = run_and_check(*sched);

  const auto& cfg = sched->config();
  json rep{{"suite", suite},
           {"config", config_to_json(cfg, seed)},
           {"operations", sched->size()},
           {"learns", sched->count(OpKind::learn)},
           {"recalls", sched->count(OpKind::recall)},
           {"first_start_ms", sched->ops().empty() ? 0 : sched->ops().front().start},
           {"span_ms", sched->span()},
           {"horizon_ms", sched->required_horizon()},
           {"matched", r.report.matched},
           {"mismatched", r.report.mismatched},
           {"all_match", r.report.all_match()},
           {"weights_match_oracle", r.weights_match_oracle}};
  if (suite == "memtest") rep["sweeps"] = sweeps;

  const bool write = !c.out.empty() || std::getenv(kOutEnv);
  if (write) {
    const auto dir = resolve_out(c, "");
    write_outputs(dir, r, *sched, seed);
    write_text(dir + "/bench.json", rep.dump(2) + "\n");
  }
  rep["wall_seconds"] = r.wall_seconds;
  std::cout << rep.dump(2) << "\n";
  print_mismatches(r.report, std::cerr);
  return r.report.all_match() && r.weights_match_oracle ? kOk : kMismatch;
}

int cmd_info(const Common& c, bool as_json) {
  const auto cfg = parse_config_arg(c.config).value_or(MemoryConfig{});
  const auto e = resource_estimate(cfg);
  if (as_json) {
    auto counts = [](const ResourceCounts& r) {
      json layers = json::array();
      for (const auto& l : r.layers)
        layers.push_back({{"layer", l.layer}, {"input_interface", l.input_interface},
                          {"neurons", l.neurons}, {"internal_synapses", l.internal_synapses},
                          {"output_interface", l.output_interface}});
      json inter = json::object();
      for (const auto& [k, v] : r.interconnections) inter[k] = v;
      return json{{"neurons_total", r.neurons_total},
                  {"static_synapses_total", r.static_synapses_total},
                  {"plastic_synapses", r.plastic_synapses},
                  {"layers", layers},
                  {"interconnections", inter}};
    };
    std::cout << json{{"cue_size", cfg.cue_size},     {"cont_size", cfg.cont_size},
                      {"cue_bits", cfg.cue_bits()},   {"input_width", cfg.width()},
                      {"max_cue", cfg.max_cue()},     {"power_of_two", e.power_of_two},
                      {"formula", counts(e.formula)}, {"built", counts(e.built)},
                      {"divergences", e.divergences}}
                     .dump(2)
              << "\n";
    return kOk;
  }

  std::cout << "cue_size " << cfg.cue_size << ", cont_size " << cfg.cont_size << ", cue bits "
            << cfg.cue_bits() << ", input/output width " << cfg.width() << ", usable cues 1.."
            << cfg.max_cue() << "\n";
  if (!e.power_of_two)
    std::cout << "note: cue_size is not a power of two; formulas use ceil(log2)\n";
  std::cout << "\n" << std::left << std::setw(10) << "layer" << std::right << std::setw(16)
            << "neurons" << std::setw(20) << "internal synapses" << std::setw(14) << "output" << "\n";
  std::cout << std::setw(10) << "" << std::setw(16) << "formula/built" << std::setw(20)
            << "formula/built" << std::setw(14) << "formula/built" << "\n";
  auto pair = [](std::uint64_t f, std::uint64_t b) {
    return std::to_string(f) + "/" + std::to_string(b);
  };
  for (std::size_t i = 0; i < e.formula.layers.size(); ++i) {
    const auto& f = e.formula.layers[i];
    const auto& b = e.built.layers[i];
    std::cout << std::left << std::setw(10) << f.layer << std::right << std::setw(16)
              << pair(f.neurons, b.neurons) << std::setw(20)
              << pair(f.internal_synapses, b.internal_synapses) << std::setw(14)
              << pair(f.output_interface, b.output_interface) << "\n";
  }
  std::cout << "\ninterconnections (formula/built)\n";
  for (std::size_t i = 0; i < e.formula.interconnections.size(); ++i)
    std::cout << "  " << std::left << std::setw(16) << e.formula.interconnections[i].first
              << pair(e.formula.interconnections[i].second, e.built.interconnections[i].second)
              << "\n";
  std::cout << "\nneurons total          " << pair(e.formula.neurons_total, e.built.neurons_total)
            << "\nstatic synapses total  "
            << pair(e.formula.static_synapses_total, e.built.static_synapses_total)
            << "\nplastic synapses       "
            << pair(e.formula.plastic_synapses, e.built.plastic_synapses) << "\n";
  if (!e.divergences.empty()) {
    std::cout << "\ndivergences:\n";
    for (const auto& d : e.divergences) std::cout << "  " << d << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& raster_path, const Common& c, const std::string& weights_path) {
  const auto file = read_raster(raster_path);
  const auto script = parse_script(file.schedule, true);
  const auto& cfg = script.config;
  bool ok = true;

  if (!file.hash_ok()) {
    std::cout << "hash mismatch: header " << file.stored_hash << ", rows " << file.computed_hash
              << "\n";
    ok = false;
  }
  if (auto want = parse_config_arg(c.config);
      want && (want->cue_size != cfg.cue_size || want->cont_size != cfg.cont_size)) {
    std::cout << "config mismatch: raster was produced with " << cfg.cue_size << ","
              << cfg.cont_size << "\n";
    ok = false;
  }
  if (file.raster.truncated) std::cout << "note: raster is marked truncated\n";
  if (file.forced_timing) std::cout << "note: raster was produced with forced timing\n";

  const auto expected = oracle::replay(script.schedule);
  const auto observed = decode_output(file.raster, cfg);
  const auto rep = oracle::compare(expected, observed, oracle::kinds_of(script.schedule));
  std::cout << "readouts " << rep.matched << "/" << rep.expected_count << " match\n";
  print_mismatches(rep, std::cout);
  ok = ok && rep.all_match();

  if (!weights_path.empty()) {
    const auto stored = weights_from_json(read_json_file(weights_path));
    const auto cue = file.raster.find(population_names::ca3_cue);
    const auto cont = file.raster.find(population_names::ca3_cont);
    if (!cue || !cont) throw RasterFormatError("raster lacks CA3 populations");
    const auto brute = oracle::brute_force_weights(file.raster, *cue, cfg.cue_size, *cont,
                                                   cfg.cont_size,
                                                   ca3_stdp_config(cfg.residual_epsilon));
    const bool same = stored.rows == brute.rows && stored.cols == brute.cols &&
                      stored.weights == brute.weights;
    std::cout << "weights " << (same ? "match" : "DIFFER from") << " brute-force replay\n";
    ok = ok && same;
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiking hippocampal memory: simulation, benchmarks and verification"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config, "Memory size as CUE,CONT or a JSON file");
    sub->add_option("--out", c.out, std::string("Output directory (default: $") + kOutEnv + ")");
    sub->add_option("--seed", c.seed, "Seed recorded in outputs; drives the random suite");
    sub->add_option("--epsilon", c.epsilon, "Residual depression per stale pairing (nA)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--force-timing", c.force_timing,
                  "Accept explicit starts that violate interoperation times");
  };

  std::string script_path, suite, raster_path, weights_path;
  std::optional<Time> horizon;
  std::uint32_t sweeps = 3;
  bool as_json = false;

  auto* run = app.add_subcommand("run", "Run an operation script and check it against the oracles");
  run->add_option("script", script_path, "Operation script (JSON)")->required();
  run->add_option("--horizon", horizon, "Simulate up to this step instead of the required horizon");
  add_common(run);

  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("suite", suite, "combined | random | memtest")->required();
  bench->add_option("--sweeps", sweeps, "MemTest sweeps")->check(CLI::PositiveNumber);
  add_common(bench);

  auto* info = app.add_subcommand("info", "Resource table for a memory size");
  info->add_flag("--json", as_json, "Print JSON");
  add_common(info);

  auto* verify = app.add_subcommand("verify", "Re-check a stored raster against its schedule");
  verify->add_option("raster", raster_path, "raster.csv written by run or bench")->required();
  verify->add_option("--weights", weights_path, "weights.json to compare with a brute-force replay");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*run) return cmd_run(script_path, c, horizon);
    if (*bench) return cmd_bench(suite, c, sweeps);
    if (*info) return cmd_info(c, as_json);
    if (*verify) return cmd_verify(raster_path, c, weights_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
