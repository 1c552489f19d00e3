#include "shepherd/evaluation.hpp"

#include <cmath>
#include <vector>

#include "shepherd/episode.hpp"
#include "shepherd/parallel.hpp"

namespace shepherd {

double fitness_over_seeds(const Controller& controller, const SimConfig& cfg,
                          const Geometry& geom, std::span<const std::uint64_t> seeds) {
  double sum = 0.0;
  for (std::uint64_t seed : seeds)
    sum += run_episode(controller, cfg, geom, seed).fraction;
  return sum / static_cast<double>(seeds.size());
}

TrialReport evaluate_trials(const Controller& controller, const SimConfig& cfg,
                            int n_trials, std::uint64_t seed, int workers,
                            const std::string& controller_name,
                            const std::string& scenario_name) {
  cfg.validate();
  controller.validate_for(cfg);
  Geometry geom = Geometry::from(cfg);

  std::vector<int> captured(static_cast<size_t>(n_trials));
  parallel_for(n_trials, workers, [&](int t) {
    captured[static_cast<size_t>(t)] =
        run_episode(controller, cfg, geom, seed_hash(seed, static_cast<std::uint64_t>(t)))
            .captured;
  });

  TrialReport report;
  report.controller = controller_name;
  report.scenario = scenario_name;
  report.n_trials = n_trials;
  report.histogram.assign(static_cast<size_t>(cfg.n_sheep) + 1, 0);

  double sum = 0.0;
  for (int c : captured) {
    sum += static_cast<double>(c) / cfg.n_sheep;
    ++report.histogram[static_cast<size_t>(c)];
  }
  report.mean = sum / n_trials;

  if (n_trials > 1) {
    double ss = 0.0;
    for (int c : captured) {
      double d = static_cast<double>(c) / cfg.n_sheep - report.mean;
      ss += d * d;
    }
    double variance = ss / (n_trials - 1);
    report.std_error = std::sqrt(variance / n_trials);
  }
  return report;
}

const std::vector<ScenarioPreset>& all_scenarios() {
  static const std::vector<ScenarioPreset> presets = {
      {"Default", [](SimConfig c) { return c; }},
      {"FewSheep",
       [](SimConfig c) {
         c.n_sheep = 5;
         return c;
       }},
      {"ManySheep",
       [](SimConfig c) {
         c.n_sheep = 100;
         return c;
       }},
      {"FastSheep",
       [](SimConfig c) {
         c.v_s = 3.0;
         return c;
       }},
      {"WeakCluster",
       [](SimConfig c) {
         c.d_s = 5.0;
         return c;
       }},
      {"LowerSpawn",
       [](SimConfig c) {
         c.sheep_spawn_region = SpawnRegion::LowerHalf;
         return c;
       }},
  };
  return presets;
}

std::vector<ScenarioPreset> scenarios_by_name(const std::vector<std::string>& names) {
  std::vector<ScenarioPreset> out;
  for (const std::string& name : names) {
    bool found = false;
    for (const ScenarioPreset& p : all_scenarios()) {
      if (p.name == name) {
        out.push_back(p);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown scenario '" + name + "'");
  }
  return out;
}

std::vector<TrialReport> run_scenarios(const Controller& controller,
                                       std::span<const ScenarioPreset> presets,
                                       const SimConfig& base_cfg, int n_trials,
                                       std::uint64_t seed, int workers,
                                       const std::string& controller_name) {
  std::vector<TrialReport> reports;
  reports.reserve(presets.size());
  for (size_t i = 0; i < presets.size(); ++i) {
    SimConfig cfg = presets[i].apply(base_cfg);
    reports.push_back(evaluate_trials(controller, cfg, n_trials,
                                      seed_hash(seed, static_cast<std::uint64_t>(i)),
                                      workers, controller_name, presets[i].name));
  }
  return reports;
}

}  // namespace shepherd
