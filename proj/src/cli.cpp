#include "shepherd/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shepherd/config_io.hpp"
#include "shepherd/episode.hpp"
#include "shepherd/evaluation.hpp"
#include "shepherd/gp.hpp"
#include "shepherd/version.hpp"

namespace shepherd {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string out_path;
  int workers = 0;
  std::optional<int> dogs;
  std::optional<int> sheep;
  std::optional<int> steps;
  std::optional<std::string> terminals;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "Master seed (default 0)");
  cmd->add_option("--config", o.config_path, "key=value config file");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
  cmd->add_option("--dogs", o.dogs, "Number of dogs");
  cmd->add_option("--sheep", o.sheep, "Number of sheep");
  cmd->add_option("--steps", o.steps, "Episode length in steps");
  cmd->add_option("--terminals", o.terminals, "Terminal set: single | multi");
}

// defaults < config file < explicit flags. Returns the set of config keys the
// file provided so later defaults (e.g. generations) know what was touched.
std::unordered_set<std::string> apply_layers(const CommonOpts& o, SimConfig& sim,
                                             GpConfig& gp) {
  std::unordered_set<std::string> keys;
  if (!o.config_path.empty()) keys = apply_config_file(o.config_path, sim, gp);
  if (o.dogs) sim.n_dogs = *o.dogs;
  if (o.sheep) sim.n_sheep = *o.sheep;
  if (o.steps) sim.steps = *o.steps;
  if (o.seed) gp.master_seed = *o.seed;
  return keys;
}

TerminalSet::Kind resolve_terminals(const CommonOpts& o, const SimConfig& sim,
                                    std::optional<TerminalSet::Kind> from_manifest) {
  if (o.terminals) return parse_terminal_set(*o.terminals);
  if (from_manifest) return *from_manifest;
  if (sim.n_dogs == 1) return TerminalSet::Kind::SingleDog4;
  if (sim.n_dogs == 3) return TerminalSet::Kind::MultiDog12;
  throw ConfigError("no default terminal set for n_dogs=" + std::to_string(sim.n_dogs) +
                    "; pass --terminals single");
}

void validate_run(const SimConfig& sim, TerminalSet::Kind terminals) {
  sim.validate();
  if (terminals == TerminalSet::Kind::MultiDog12 && sim.n_dogs != 3)
    throw ConfigError("n_dogs must be 3 for the multi-dog terminal set");
}

Controller resolve_controller(const std::string& spec, TerminalSet::Kind terminals,
                              int d_max) {
  if (spec == "simple") return Controller::simple_dog();
  if (spec == "random") return Controller::rand_dog();
  const std::string prefix = "evolved:";
  if (spec.rfind(prefix, 0) == 0) {
    std::string path = spec.substr(prefix.size());
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read controller file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return Controller::evolved(parse(buf.str(), TerminalSet::of(terminals), d_max),
                                 terminals);
    } catch (const ExprParseError& e) {
      throw ConfigError(path + ":" + e.what());
    }
  }
  throw ConfigError("controller must be evolved:<path.sexp>, simple or random, got '" +
                    spec + "'");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("short write to '" + path.string() + "'");
}

// --- evolve -----------------------------------------------------------------

struct EvolveOpts {
  CommonOpts common;
  std::string manifest_path;
  std::optional<int> pop;
  std::optional<int> gens;
  std::optional<double> mutation;
  std::optional<int> tournament;
  std::optional<int> sims;
  std::optional<int> d_ramp;
  std::optional<int> d_max;
  std::optional<std::string> seed_mode;
};

int cmd_evolve(const EvolveOpts& o) {
  SimConfig sim;
  GpConfig gp;
  std::optional<TerminalSet::Kind> manifest_terminals;
  bool gens_set = false;

  if (!o.manifest_path.empty()) {
    RunManifest m = load_manifest(o.manifest_path);
    sim = m.sim;
    gp = m.gp;
    manifest_terminals = m.terminals;
    gens_set = true;
  }
  auto file_keys = apply_layers(o.common, sim, gp);
  gens_set = gens_set || file_keys.count("generations") > 0;

  if (o.pop) gp.population_size = *o.pop;
  if (o.gens) {
    gp.generations = *o.gens;
    gens_set = true;
  }
  if (o.mutation) gp.p_m = *o.mutation;
  if (o.tournament) gp.tournament_size = *o.tournament;
  if (o.sims) gp.fitness_sims = *o.sims;
  if (o.d_ramp) gp.d_ramp = *o.d_ramp;
  if (o.d_max) gp.d_max = *o.d_max;
  if (o.seed_mode) gp.seed_mode = parse_seed_mode(*o.seed_mode);

  TerminalSet::Kind terminals = resolve_terminals(o.common, sim, manifest_terminals);
  if (!gens_set)
    gp.generations = terminals == TerminalSet::Kind::MultiDog12 ? 100 : 220;

  validate_run(sim, terminals);
  gp.validate();

  fs::path out_dir = o.common.out_path.empty() ? fs::path(".") : fs::path(o.common.out_path);
  fs::create_directories(out_dir);

  RunManifest manifest;
  manifest.command = "evolve";
  manifest.version = kVersion;
  manifest.master_seed = gp.master_seed;
  manifest.workers = o.common.workers;
  manifest.sim = sim;
  manifest.gp = gp;
  manifest.terminals = terminals;
  manifest.outputs = {"generations.csv", "best.sexp", "manifest.json"};
  write_file(out_dir / "manifest.json", manifest_to_json(manifest));

  EvolveHooks hooks;
  hooks.on_generation = [&](const GenerationStats& s, std::span<const Individual>) {
    std::fprintf(stderr, "gen %d/%d  max=%s  mean=%s\n", s.generation + 1,
                 gp.generations, format_double(s.max_fitness).c_str(),
                 format_double(s.mean_fitness).c_str());
  };

  EvolveResult result = evolve(gp, TerminalSet::of(terminals),
                               make_sim_fitness(sim, terminals), o.common.workers, hooks);

  std::ostringstream csv;
  write_generations_csv(csv, result.log);
  write_file(out_dir / "generations.csv", csv.str());
  write_file(out_dir / "best.sexp",
             serialize(result.best.tree, TerminalSet::of(terminals)) + "\n");

  std::printf("best_fitness=%s\n", format_double(result.best.fitness).c_str());
  std::printf("artifacts: %s\n", (out_dir / "{generations.csv,best.sexp,manifest.json}").c_str());
  return 0;
}

// --- eval -------------------------------------------------------------------

struct EvalOpts {
  CommonOpts common;
  std::string controller;
  int trials = 1000;
  std::string scenarios;
  std::string json_path;
};

int cmd_eval(const EvalOpts& o) {
  SimConfig sim;
  GpConfig gp;
  apply_layers(o.common, sim, gp);
  TerminalSet::Kind terminals = resolve_terminals(o.common, sim, std::nullopt);
  validate_run(sim, terminals);
  if (o.trials < 1) throw ConfigError("trials must be >= 1");

  Controller controller = resolve_controller(o.controller, terminals, gp.d_max);

  std::vector<TrialReport> reports;
  if (o.scenarios.empty()) {
    reports.push_back(evaluate_trials(controller, sim, o.trials,
                                      seed_hash(gp.master_seed, 0), o.common.workers,
                                      o.controller, "Default"));
  } else {
    std::vector<ScenarioPreset> presets;
    if (o.scenarios == "all") {
      presets = all_scenarios();
    } else {
      std::vector<std::string> names;
      std::stringstream ss(o.scenarios);
      std::string item;
      while (std::getline(ss, item, ',')) names.push_back(item);
      presets = scenarios_by_name(names);
    }
    reports = run_scenarios(controller, presets, sim, o.trials, gp.master_seed,
                            o.common.workers, o.controller);
  }

  std::ostringstream csv;
  write_trial_reports_csv(csv, reports);
  std::fputs(csv.str().c_str(), stdout);
  if (!o.common.out_path.empty()) write_file(o.common.out_path, csv.str());
  if (!o.json_path.empty()) write_file(o.json_path, trial_reports_json(reports));
  return 0;
}

// --- trace ------------------------------------------------------------------

struct TraceOpts {
  CommonOpts common;
  std::string controller;
};

int cmd_trace(const TraceOpts& o) {
  SimConfig sim;
  GpConfig gp;
  apply_layers(o.common, sim, gp);
  TerminalSet::Kind terminals = resolve_terminals(o.common, sim, std::nullopt);
  validate_run(sim, terminals);

  Controller controller = resolve_controller(o.controller, terminals, gp.d_max);

  fs::path out = o.common.out_path.empty() ? fs::path("trace.jsonl")
                                           : fs::path(o.common.out_path);
  std::ostringstream lines;
  EpisodeResult result =
      run_episode(controller, sim, Geometry::from(sim), gp.master_seed,
                  [&](const WorldState& s) { write_trace_line(lines, s); });
  write_file(out, lines.str());

  std::printf("captured_fraction=%s steps=%d trace=%s\n",
              format_double(result.fraction).c_str(), result.steps_run,
              out.string().c_str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("shepherd");
  for (const std::string& a : args) argv_storage.push_back(a);
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"shepherd: evolve and evaluate expression-tree dog controllers"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  EvolveOpts evolve_opts;
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Run a genetic-programming run");
  add_common(evolve_cmd, evolve_opts.common);
  evolve_cmd->add_option("--out", evolve_opts.common.out_path,
                         "Output directory (default .)");
  evolve_cmd->add_option("--manifest", evolve_opts.manifest_path,
                         "Re-run from a manifest.json");
  evolve_cmd->add_option("--pop", evolve_opts.pop, "Population size");
  evolve_cmd->add_option("--gens", evolve_opts.gens, "Generations");
  evolve_cmd->add_option("--mutation", evolve_opts.mutation, "Mutation probability p_m");
  evolve_cmd->add_option("--tournament", evolve_opts.tournament, "Tournament size");
  evolve_cmd->add_option("--sims", evolve_opts.sims, "Episodes per fitness evaluation");
  evolve_cmd->add_option("--d-ramp", evolve_opts.d_ramp, "Ramp depth");
  evolve_cmd->add_option("--d-max", evolve_opts.d_max, "Depth limit");
  evolve_cmd->add_option("--seed-mode", evolve_opts.seed_mode,
                         "Episode seed mode: fresh | fixed");

  EvalOpts eval_opts;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a controller over trials");
  add_common(eval_cmd, eval_opts.common);
  eval_cmd->add_option("--out", eval_opts.common.out_path, "CSV output path");
  eval_cmd->add_option("--controller", eval_opts.controller,
                       "evolved:<path.sexp> | simple | random")
      ->required();
  eval_cmd->add_option("--trials", eval_opts.trials, "Trials per report");
  eval_cmd->add_option("--scenarios", eval_opts.scenarios,
                       "\"all\" or comma-separated preset names");
  eval_cmd->add_option("--json", eval_opts.json_path, "Also write a JSON report");

  TraceOpts trace_opts;
  CLI::App* trace_cmd = app.add_subcommand("trace", "Write one episode as JSONL");
  add_common(trace_cmd, trace_opts.common);
  trace_cmd->add_option("--out", trace_opts.common.out_path,
                        "Trajectory path (default trace.jsonl)");
  trace_cmd->add_option("--controller", trace_opts.controller,
                        "evolved:<path.sexp> | simple | random")
      ->required();

  try {
    app.parse(argc, argv);
    if (evolve_cmd->parsed()) return cmd_evolve(evolve_opts);
    if (eval_cmd->parsed()) return cmd_eval(eval_opts);
    if (trace_cmd->parsed()) return cmd_trace(trace_opts);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ExprParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}

}  // namespace shepherd
