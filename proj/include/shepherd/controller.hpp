#pragma once

#include <array>
#include <span>
#include <string>

#include "shepherd/expr.hpp"
#include "shepherd/rng.hpp"
#include "shepherd/sim_config.hpp"
#include "shepherd/terminal_set.hpp"
#include "shepherd/world.hpp"

namespace shepherd {

// A dog controller: an evolved expression tree bound to a terminal set, or
// one of the two baselines. One controller instance drives every dog in an
// episode (each dog sees its own parameters).
struct Controller {
  enum class Kind { Evolved, SimpleDog, RandDog };

  Kind kind = Kind::SimpleDog;
  ExprTree tree;  // Evolved only
  TerminalSet::Kind terminals = TerminalSet::Kind::SingleDog4;

  static Controller evolved(ExprTree tree, TerminalSet::Kind terminals);
  static Controller simple_dog();
  static Controller rand_dog();

  // Throws ConfigError when the terminal set does not fit cfg.n_dogs
  // (MultiDog12 requires exactly 3 dogs).
  void validate_for(const SimConfig& cfg) const;
};

// Fixed-capacity parameter buffer (largest set has 12 entries).
struct ParamVector {
  std::array<double, 12> values{};
  int count = 0;

  std::span<const double> view() const { return {values.data(), static_cast<size_t>(count)}; }
  double operator[](int i) const { return values[i]; }
};

// The point steering_offset behind `nearest_sheep` on the line through the
// pen center, i.e. on the far side of the sheep from the pen.
Vec2 steering_point(Vec2 nearest_sheep, const SimConfig& cfg, const Geometry& geom);

// Fills the active terminal set for one dog: own position; other dogs by
// ascending distance (ties to the lower index); nearest free sheep (ties to
// the lower index); mean free-sheep position; steering point. Requires at
// least one free sheep.
ParamVector extract_params(const WorldState& state, int dog_index, const SimConfig& cfg,
                           const Geometry& geom, TerminalSet::Kind kind);

// Force request for one dog on the pre-step state.
//   Evolved: tree output with non-finite components zeroed.
//   SimpleDog: v_d * unit(steering_point - dog), from SingleDog4 information.
//   RandDog: angle uniform [0, 2pi) then magnitude uniform [0, v_d) -- exactly
//   one (angle, magnitude) pair consumed per call.
Vec2 dog_force(const Controller& controller, const WorldState& state, int dog_index,
               const SimConfig& cfg, const Geometry& geom, Rng& rng);

}  // namespace shepherd
