#include "shepherd/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace shepherd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int nearest_free_sheep(const WorldState& state, Vec2 from) {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < state.sheep.size(); ++i) {
    const Sheep& s = state.sheep[i];
    if (s.captured) continue;
    double d2 = (s.pos - from).norm2();
    if (d2 < best_d2) {  // strict: ties keep the lower index
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

Controller Controller::evolved(ExprTree tree, TerminalSet::Kind terminals) {
  Controller c;
  c.kind = Kind::Evolved;
  c.tree = std::move(tree);
  c.terminals = terminals;
  return c;
}

Controller Controller::simple_dog() {
  Controller c;
  c.kind = Kind::SimpleDog;
  return c;
}

Controller Controller::rand_dog() {
  Controller c;
  c.kind = Kind::RandDog;
  return c;
}

void Controller::validate_for(const SimConfig& cfg) const {
  if (kind == Kind::Evolved && terminals == TerminalSet::Kind::MultiDog12 &&
      cfg.n_dogs != 3)
    throw ConfigError("n_dogs must be 3 for the multi-dog terminal set");
}

Vec2 steering_point(Vec2 nearest_sheep, const SimConfig& cfg, const Geometry& geom) {
  Vec2 dir = nearest_sheep - geom.pen_center();
  double n = dir.norm();
  if (n <= 1e-12) return nearest_sheep;
  return nearest_sheep + (cfg.steering_offset / n) * dir;
}

ParamVector extract_params(const WorldState& state, int dog_index, const SimConfig& cfg,
                           const Geometry& geom, TerminalSet::Kind kind) {
  ParamVector p;
  const Dog& self = state.dogs[static_cast<size_t>(dog_index)];
  int near_idx = nearest_free_sheep(state, self.pos);
  Vec2 near = state.sheep[static_cast<size_t>(near_idx)].pos;

  auto put = [&p](double v) { p.values[static_cast<size_t>(p.count++)] = v; };
  put(self.pos.x);
  put(self.pos.y);

  if (kind == TerminalSet::Kind::SingleDog4) {
    put(near.x);
    put(near.y);
    return p;
  }

  // Other dogs by ascending distance from self, ties to the lower index.
  std::vector<std::pair<double, int>> others;
  others.reserve(state.dogs.size() - 1);
  for (size_t d = 0; d < state.dogs.size(); ++d) {
    if (static_cast<int>(d) == dog_index) continue;
    others.emplace_back((state.dogs[d].pos - self.pos).norm2(), static_cast<int>(d));
  }
  std::sort(others.begin(), others.end());
  for (const auto& [d2, idx] : others) {
    put(state.dogs[static_cast<size_t>(idx)].pos.x);
    put(state.dogs[static_cast<size_t>(idx)].pos.y);
  }

  put(near.x);
  put(near.y);

  Vec2 mean{};
  int free = 0;
  for (const Sheep& s : state.sheep) {
    if (s.captured) continue;
    mean += s.pos;
    ++free;
  }
  mean *= 1.0 / free;
  put(mean.x);
  put(mean.y);

  Vec2 steer = steering_point(near, cfg, geom);
  put(steer.x);
  put(steer.y);
  return p;
}

Vec2 dog_force(const Controller& controller, const WorldState& state, int dog_index,
               const SimConfig& cfg, const Geometry& geom, Rng& rng) {
  switch (controller.kind) {
    case Controller::Kind::RandDog: {
      double angle = rng.uniform(0.0, kTwoPi);
      double magnitude = rng.uniform(0.0, cfg.v_d);
      return {magnitude * std::cos(angle), magnitude * std::sin(angle)};
    }
    case Controller::Kind::SimpleDog: {
      ParamVector p = extract_params(state, dog_index, cfg, geom,
                                     TerminalSet::Kind::SingleDog4);
      Vec2 steer = steering_point({p[2], p[3]}, cfg, geom);
      Vec2 dir = steer - Vec2{p[0], p[1]};
      double n = dir.norm();
      if (n <= 1e-12) return {};
      return (cfg.v_d / n) * dir;
    }
    case Controller::Kind::Evolved: {
      ParamVector p = extract_params(state, dog_index, cfg, geom, controller.terminals);
      auto [fx, fy] = eval(controller.tree, p.view());
      return {std::isfinite(fx) ? fx : 0.0, std::isfinite(fy) ? fy : 0.0};
    }
  }
  return {};
}

}  // namespace shepherd
