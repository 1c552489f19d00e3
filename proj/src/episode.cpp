#include "shepherd/episode.hpp"

#include <cstdio>
#include <vector>

namespace shepherd {

EpisodeResult run_episode(const Controller& controller, const SimConfig& cfg,
                          const Geometry& geom, std::uint64_t seed,
                          const TraceFn& trace) {
  controller.validate_for(cfg);
  Rng rng(seed);
  WorldState state = spawn(cfg, geom, rng);
  if (trace) trace(state);

  std::vector<Vec2> forces(static_cast<size_t>(cfg.n_dogs));
  while (state.step < cfg.steps && !state.all_captured()) {
    for (int d = 0; d < cfg.n_dogs; ++d)
      forces[static_cast<size_t>(d)] = dog_force(controller, state, d, cfg, geom, rng);
    step_world(state, forces, cfg, geom);
    if (trace) trace(state);
  }

  EpisodeResult result;
  result.captured = state.captured_count();
  result.n_sheep = cfg.n_sheep;
  result.fraction = static_cast<double>(result.captured) / cfg.n_sheep;
  result.steps_run = state.step;
  result.nonfinite_forces = state.nonfinite_force_count;
  return result;
}

void write_trace_line(std::ostream& os, const WorldState& state) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    os << buf;
  };
  os << "{\"step\":" << state.step << ",\"sheep\":[";
  for (size_t i = 0; i < state.sheep.size(); ++i) {
    const Sheep& s = state.sheep[i];
    if (i) os << ',';
    os << '[';
    num(s.pos.x);
    os << ',';
    num(s.pos.y);
    os << ',' << (s.captured ? "true" : "false") << ']';
  }
  os << "],\"dogs\":[";
  for (size_t d = 0; d < state.dogs.size(); ++d) {
    if (d) os << ',';
    os << '[';
    num(state.dogs[d].pos.x);
    os << ',';
    num(state.dogs[d].pos.y);
    os << ']';
  }
  os << "]}\n";
}

}  // namespace shepherd
