#pragma once

#include <span>
#include <vector>

#include "shepherd/rng.hpp"
#include "shepherd/sim_config.hpp"
#include "shepherd/vec2.hpp"

namespace shepherd {

struct Sheep {
  Vec2 pos;
  Vec2 vel;
  bool captured = false;
};

struct Dog {
  Vec2 pos;
  Vec2 vel;
};

struct WorldState {
  std::vector<Sheep> sheep;
  std::vector<Dog> dogs;
  int step = 0;
  // Non-finite controller forces replaced with zero by step_world.
  int nonfinite_force_count = 0;

  int captured_count() const {
    int c = 0;
    for (const Sheep& s : sheep) c += s.captured ? 1 : 0;
    return c;
  }
  bool all_captured() const { return captured_count() == static_cast<int>(sheep.size()); }
};

// --- force laws -------------------------------------------------------------

// Force on the sheep at p1 from the sheep at p2: signed magnitude
// f_a - f_r*(d_s^2/r^2 - 1) along the unit vector p1->p2 (positive attracts).
// Zero beyond d_s. Coincident pair (r < 1e-9): repulsion of magnitude
// |m(1e-9)| along +x.
Vec2 sheep_cluster_force(Vec2 p1, Vec2 p2, const SimConfig& cfg);

// Force on a sheep from a dog: magnitude f_d*(d_d^2/r^2 - 1) along the unit
// vector dog->sheep. Zero beyond d_d; same epsilon rule when coincident.
Vec2 dog_repulsion_force(Vec2 sheep, Vec2 dog, const SimConfig& cfg);

// Sum over the four walls and the interior pen fence: each segment closer
// than d_f (with the perpendicular foot on the segment) contributes
// f_f*(d_f - d_perp)/d_f pointing away from the segment. The open pen bottom
// contributes nothing.
Vec2 fence_force(Vec2 pos, const Geometry& geom, const SimConfig& cfg);

// --- stepping ---------------------------------------------------------------

// One synchronous step: sheep forces from the pre-step state, velocity then
// position update for all agents, hard speed caps (rescale to v_s / v_d),
// wall and interior-fence collision resolution, then capture. Captured sheep
// are parked at the pen corner with zero velocity and never move again.
// dog_forces must have one entry per dog; non-finite entries are replaced
// with zero and counted in state.nonfinite_force_count.
void step_world(WorldState& state, std::span<const Vec2> dog_forces,
                const SimConfig& cfg, const Geometry& geom);

// Dogs uniform in the pen square with zero velocity (drawn first, x then y),
// then sheep uniform in the spawn region with a random velocity: angle
// uniform in [0, 2pi), speed uniform in [0, v_s). Draw order per sheep:
// x, y, angle, speed.
WorldState spawn(const SimConfig& cfg, const Geometry& geom, Rng& rng);

}  // namespace shepherd
