#include "shepherd/gp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "shepherd/controller.hpp"
#include "shepherd/episode.hpp"
#include "shepherd/parallel.hpp"

namespace shepherd {

namespace {

// Seed-stream domain tags.
constexpr std::uint64_t kDomainOps = 0x6F70u;      // genetic operators
constexpr std::uint64_t kDomainFitness = 0xF17u;   // episode seed suites

}  // namespace

std::vector<Individual> init_population(const GpConfig& cfg, int arity, Rng& rng) {
  std::vector<Individual> pop;
  pop.reserve(static_cast<size_t>(cfg.population_size));
  int n_full = (cfg.population_size + 1) / 2;
  for (int i = 0; i < cfg.population_size; ++i) {
    GrowMethod method = i < n_full ? GrowMethod::Full : GrowMethod::Grow;
    pop.push_back({random_tree(cfg.d_ramp, arity, method, rng), -1.0});
  }
  return pop;
}

int tournament_select(std::span<const Individual> pop, int k, Rng& rng) {
  int best = -1;
  double best_fitness = -1.0;
  std::vector<int> tied;
  for (int draw = 0; draw < k; ++draw) {
    int i = static_cast<int>(rng.index(static_cast<std::uint32_t>(pop.size())));
    double f = pop[static_cast<size_t>(i)].fitness;
    if (f > best_fitness) {
      best_fitness = f;
      best = i;
      tied.clear();
      tied.push_back(i);
    } else if (f == best_fitness) {
      tied.push_back(i);
    }
  }
  if (tied.size() > 1)
    best = tied[rng.index(static_cast<std::uint32_t>(tied.size()))];
  return best;
}

std::vector<Individual> crossover(const Individual& a, const Individual& b,
                                  const GpConfig& cfg, Rng& rng) {
  Individual ca{a.tree, -1.0};
  Individual cb{b.tree, -1.0};
  int ia = select_node_index(ca.tree, rng, /*exclude_root=*/true);
  int ib = select_node_index(cb.tree, rng, /*exclude_root=*/true);
  NodeRef ra = locate_preorder(ca.tree.root(), ia);
  NodeRef rb = locate_preorder(cb.tree.root(), ib);
  std::swap(*ra.node, *rb.node);

  std::vector<Individual> offspring;
  if (tree_depth(ca.tree) <= cfg.d_max) offspring.push_back(std::move(ca));
  if (tree_depth(cb.tree) <= cfg.d_max) offspring.push_back(std::move(cb));
  return offspring;
}

Individual mutate(const Individual& a, const GpConfig& cfg, int arity, Rng& rng) {
  Individual child{a.tree, -1.0};
  int idx = select_node_index(child.tree, rng, /*exclude_root=*/true);
  NodeRef ref = locate_preorder(child.tree.root(), idx);
  *ref.node = grow_random(cfg.d_max - ref.depth, arity, GrowMethod::Grow, rng);
  return child;
}

std::vector<std::uint64_t> episode_seeds(const GpConfig& cfg, int generation) {
  int suite = cfg.seed_mode == SeedMode::FixedSuite ? 0 : generation;
  std::vector<std::uint64_t> seeds(static_cast<size_t>(cfg.fitness_sims));
  for (int k = 0; k < cfg.fitness_sims; ++k)
    seeds[static_cast<size_t>(k)] = seed_hash(cfg.master_seed, kDomainFitness,
                                              static_cast<std::uint64_t>(suite),
                                              static_cast<std::uint64_t>(k));
  return seeds;
}

EvolveResult evolve(const GpConfig& cfg, const TerminalSet& terminals,
                    const FitnessFn& fitness, int workers, const EvolveHooks& hooks) {
  cfg.validate();
  const int pop_size = cfg.population_size;
  Rng rng_ops(seed_hash(cfg.master_seed, kDomainOps));

  std::vector<Individual> pop = init_population(cfg, terminals.arity(), rng_ops);

  EvolveResult result;
  result.best.fitness = -1.0;

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<std::uint64_t> seeds = episode_seeds(cfg, gen);

    // Under FixedSuite a carried-over fitness stays valid; fresh suites
    // invalidate everything, elite included.
    if (cfg.seed_mode == SeedMode::FreshPerGeneration)
      for (Individual& ind : pop) ind.fitness = -1.0;

    std::vector<int> todo;
    for (int i = 0; i < pop_size; ++i)
      if (!pop[static_cast<size_t>(i)].evaluated()) todo.push_back(i);
    parallel_for(static_cast<int>(todo.size()), workers, [&](int t) {
      Individual& ind = pop[static_cast<size_t>(todo[static_cast<size_t>(t)])];
      ind.fitness = fitness(ind.tree, seeds);
    });

    int elite = 0;
    double sum = 0.0;
    for (int i = 0; i < pop_size; ++i) {
      const Individual& ind = pop[static_cast<size_t>(i)];
      if (!(ind.fitness >= 0.0 && ind.fitness <= 1.0))
        throw std::logic_error("fitness out of [0, 1]");
      if (tree_depth(ind.tree) > cfg.d_max)
        throw std::logic_error("individual exceeds depth limit");
      sum += ind.fitness;
      if (ind.fitness > pop[static_cast<size_t>(elite)].fitness) elite = i;
    }
    const Individual& elite_ind = pop[static_cast<size_t>(elite)];

    GenerationStats stats;
    stats.generation = gen;
    stats.max_fitness = elite_ind.fitness;
    stats.mean_fitness = sum / pop_size;
    stats.best_tree = serialize(elite_ind.tree, terminals);
    stats.seeds = seeds;
    result.log.generations.push_back(stats);

    if (elite_ind.fitness > result.best.fitness) result.best = elite_ind;

    if (hooks.on_generation) hooks.on_generation(stats, pop);
    if (gen == cfg.generations - 1) break;

    std::vector<Individual> next;
    next.reserve(static_cast<size_t>(pop_size));
    next.push_back(elite_ind);

    while (static_cast<int>(next.size()) < pop_size) {
      if (rng_ops.bernoulli(cfg.p_m)) {
        int parent = tournament_select(pop, cfg.tournament_size, rng_ops);
        next.push_back(mutate(pop[static_cast<size_t>(parent)], cfg, terminals.arity(),
                              rng_ops));
        continue;
      }
      int pa = tournament_select(pop, cfg.tournament_size, rng_ops);
      int pb = tournament_select(pop, cfg.tournament_size, rng_ops);
      std::vector<Individual> kids;
      for (int attempt = 0; attempt < 10 && kids.empty(); ++attempt)
        kids = crossover(pop[static_cast<size_t>(pa)], pop[static_cast<size_t>(pb)], cfg,
                         rng_ops);
      if (kids.empty()) {
        const Individual& fa = pop[static_cast<size_t>(pa)];
        const Individual& fb = pop[static_cast<size_t>(pb)];
        kids.push_back(fb.fitness > fa.fitness ? fb : fa);
      }
      for (Individual& kid : kids) {
        if (static_cast<int>(next.size()) >= pop_size) break;
        next.push_back(std::move(kid));
      }
    }
    pop = std::move(next);
  }

  return result;
}

FitnessFn make_sim_fitness(const SimConfig& sim_cfg, TerminalSet::Kind terminals) {
  SimConfig cfg = sim_cfg;
  Geometry geom = Geometry::from(cfg);
  return [cfg, geom, terminals](const ExprTree& tree,
                                std::span<const std::uint64_t> seeds) {
    Controller controller = Controller::evolved(tree, terminals);
    double sum = 0.0;
    for (std::uint64_t seed : seeds)
      sum += run_episode(controller, cfg, geom, seed).fraction;
    return sum / static_cast<double>(seeds.size());
  };
}

}  // namespace shepherd
