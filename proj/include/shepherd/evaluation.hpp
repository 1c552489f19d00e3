#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shepherd/controller.hpp"
#include "shepherd/sim_config.hpp"

namespace shepherd {

// Mean captured fraction over the given episode seeds (the GP fitness
// measure, default 10 episodes).
double fitness_over_seeds(const Controller& controller, const SimConfig& cfg,
                          const Geometry& geom, std::span<const std::uint64_t> seeds);

struct TrialReport {
  std::string controller;
  std::string scenario;
  int n_trials = 0;
  double mean = 0.0;
  double std_error = 0.0;               // sample sd / sqrt(n)
  std::vector<std::int64_t> histogram;  // count of trials per captured-sheep count,
                                        // size n_sheep + 1
};

// n_trials independent episodes, trial t seeded with seed_hash(seed, t).
// Parallel over trials, reduced in trial order (worker-count invariant).
TrialReport evaluate_trials(const Controller& controller, const SimConfig& cfg,
                            int n_trials, std::uint64_t seed, int workers,
                            const std::string& controller_name = "",
                            const std::string& scenario_name = "Default");

struct ScenarioPreset {
  std::string name;
  std::function<SimConfig(SimConfig)> apply;  // base config -> overridden config
};

// Default, FewSheep(5), ManySheep(100), FastSheep(v_s=3), WeakCluster(d_s=5),
// LowerSpawn.
const std::vector<ScenarioPreset>& all_scenarios();

// Looks up presets by name; throws ConfigError for unknown names.
std::vector<ScenarioPreset> scenarios_by_name(const std::vector<std::string>& names);

// One report per preset; preset i uses seed stream seed_hash(seed, i).
std::vector<TrialReport> run_scenarios(const Controller& controller,
                                       std::span<const ScenarioPreset> presets,
                                       const SimConfig& base_cfg, int n_trials,
                                       std::uint64_t seed, int workers,
                                       const std::string& controller_name = "");

}  // namespace shepherd
