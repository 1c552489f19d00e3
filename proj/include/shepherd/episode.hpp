#pragma once

#include <cstdint>
#include <functional>
#include <ostream>

#include "shepherd/controller.hpp"
#include "shepherd/sim_config.hpp"
#include "shepherd/world.hpp"

namespace shepherd {

struct EpisodeResult {
  int captured = 0;
  int n_sheep = 0;
  double fraction = 0.0;
  int steps_run = 0;
  int nonfinite_forces = 0;
};

// Called on the spawn state and after every step.
using TraceFn = std::function<void(const WorldState&)>;

// One deterministic episode: spawn from `seed`, query the controller once per
// dog per step on the pre-step state, stop after cfg.steps or as soon as all
// sheep are captured. Pure function of (controller, cfg, seed).
EpisodeResult run_episode(const Controller& controller, const SimConfig& cfg,
                          const Geometry& geom, std::uint64_t seed,
                          const TraceFn& trace = {});

// One JSON object per line: {"step":...,"sheep":[[x,y,captured],...],
// "dogs":[[x,y],...]}, coordinates with 9 significant digits.
void write_trace_line(std::ostream& os, const WorldState& state);

}  // namespace shepherd
