#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shepherd/expr.hpp"
#include "shepherd/rng.hpp"
#include "shepherd/sim_config.hpp"
#include "shepherd/terminal_set.hpp"

namespace shepherd {

enum class SeedMode {
  FreshPerGeneration,  // K new episode seeds per generation, shared by all individuals
  FixedSuite,          // one K-seed suite for the whole run
};

struct GpConfig {
  int population_size = 250;
  int generations = 220;
  double p_m = 0.05;        // per-offspring-slot probability of mutation vs crossover
  int d_ramp = 5;
  int d_max = 10;
  int tournament_size = 2;
  int fitness_sims = 10;    // episodes averaged per fitness evaluation
  std::uint64_t master_seed = 0;
  SeedMode seed_mode = SeedMode::FreshPerGeneration;

  void validate() const {
    if (population_size < 2) throw ConfigError("population_size must be >= 2");
    if (generations < 1) throw ConfigError("generations must be >= 1");
    if (!(p_m >= 0.0 && p_m <= 1.0)) throw ConfigError("p_m must be in [0, 1]");
    if (d_ramp < 0) throw ConfigError("d_ramp must be >= 0");
    if (d_max < 1) throw ConfigError("d_max must be >= 1");
    if (d_ramp + 1 > d_max) throw ConfigError("d_ramp must satisfy d_ramp + 1 <= d_max");
    if (tournament_size < 1) throw ConfigError("tournament_size must be >= 1");
    if (fitness_sims < 1) throw ConfigError("fitness_sims must be >= 1");
  }
};

struct Individual {
  ExprTree tree;
  double fitness = -1.0;  // in [0, 1] once evaluated

  bool evaluated() const { return fitness >= 0.0; }
};

struct GenerationStats {
  int generation = 0;
  double max_fitness = 0.0;
  double mean_fitness = 0.0;
  std::string best_tree;              // serialized elite of this generation
  std::vector<std::uint64_t> seeds;   // episode seeds used for fitness
};

struct EvolutionLog {
  std::vector<GenerationStats> generations;
};

// Mean captured fraction of `tree` over the given episode seeds; must be a
// thread-safe pure function.
using FitnessFn = std::function<double(const ExprTree&, std::span<const std::uint64_t>)>;

struct EvolveResult {
  Individual best;  // best-ever individual (earliest on ties)
  EvolutionLog log;
};

struct EvolveHooks {
  // Invoked after each generation is evaluated, before reproduction.
  std::function<void(const GenerationStats&, std::span<const Individual>)> on_generation;
};

// --- operators --------------------------------------------------------------

// ceil(P/2) Full trees then floor(P/2) Grow trees, all with budget d_ramp.
std::vector<Individual> init_population(const GpConfig& cfg, int arity, Rng& rng);

// k draws with replacement; returns the index of the max-fitness draw, ties
// broken uniformly among the tied draws. All fitness must be evaluated.
int tournament_select(std::span<const Individual> pop, int k, Rng& rng);

// Swaps uniformly chosen non-root subtrees; candidates deeper than d_max are
// discarded. Returns 0, 1 or 2 unevaluated offspring.
std::vector<Individual> crossover(const Individual& a, const Individual& b,
                                  const GpConfig& cfg, Rng& rng);

// Replaces a uniformly chosen non-root subtree with a Grow subtree of budget
// d_max - node_depth, so the offspring always respects d_max.
Individual mutate(const Individual& a, const GpConfig& cfg, int arity, Rng& rng);

// The per-generation episode seed suite (FixedSuite ignores `generation`).
std::vector<std::uint64_t> episode_seeds(const GpConfig& cfg, int generation);

// Generational loop with one elite clone per generation. Deterministic given
// (cfg, terminals): fitness evaluation is parallelized over individuals but
// merged in index order, and all genetic operators run on a single stream.
EvolveResult evolve(const GpConfig& cfg, const TerminalSet& terminals,
                    const FitnessFn& fitness, int workers,
                    const EvolveHooks& hooks = {});

// Standard fitness: mean captured fraction of the evolved tree over episodes.
FitnessFn make_sim_fitness(const SimConfig& sim_cfg, TerminalSet::Kind terminals);

}  // namespace shepherd
