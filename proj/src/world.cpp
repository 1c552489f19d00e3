#include "shepherd/world.hpp"

#include <cmath>

namespace shepherd {

namespace {

constexpr double kCoincidentEps = 1e-9;
constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Vec2 sheep_cluster_force(Vec2 p1, Vec2 p2, const SimConfig& cfg) {
  Vec2 d = p2 - p1;
  double r2 = d.norm2();
  double r = std::sqrt(r2);
  if (r > cfg.d_s) return {};
  if (r < kCoincidentEps) {
    double m = cfg.f_a - cfg.f_r * (cfg.d_s * cfg.d_s / (kCoincidentEps * kCoincidentEps) - 1.0);
    return {std::fabs(m), 0.0};
  }
  double m = cfg.f_a - cfg.f_r * (cfg.d_s * cfg.d_s / r2 - 1.0);
  return (m / r) * d;
}

Vec2 dog_repulsion_force(Vec2 sheep, Vec2 dog, const SimConfig& cfg) {
  Vec2 d = sheep - dog;
  double r2 = d.norm2();
  double r = std::sqrt(r2);
  if (r > cfg.d_d) return {};
  if (r < kCoincidentEps) {
    double m = cfg.f_d * (cfg.d_d * cfg.d_d / (kCoincidentEps * kCoincidentEps) - 1.0);
    return {std::fabs(m), 0.0};
  }
  double m = cfg.f_d * (cfg.d_d * cfg.d_d / r2 - 1.0);
  return (m / r) * d;
}

Vec2 fence_force(Vec2 pos, const Geometry& geom, const SimConfig& cfg) {
  Vec2 total{};
  auto push = [&](double d_perp, Vec2 away) {
    if (d_perp < cfg.d_f) total += (cfg.f_f * (cfg.d_f - d_perp) / cfg.d_f) * away;
  };
  push(pos.x, {1.0, 0.0});                    // left wall
  push(geom.field_size - pos.x, {-1.0, 0.0}); // right wall
  push(pos.y, {0.0, 1.0});                    // bottom wall
  push(geom.field_size - pos.y, {0.0, -1.0}); // top wall
  // Interior pen fence: only when the perpendicular foot lies on the segment.
  if (pos.y >= geom.fence_y_lo() && pos.y <= geom.fence_y_hi()) {
    double d_perp = std::fabs(pos.x - geom.fence_x());
    Vec2 away = pos.x >= geom.fence_x() ? Vec2{1.0, 0.0} : Vec2{-1.0, 0.0};
    push(d_perp, away);
  }
  return total;
}

namespace {

void cap_speed(Vec2& v, double cap) {
  double speed = v.norm();
  if (speed > cap) v *= cap / speed;
}

// Walls clamp the penetrating coordinate exactly. The interior fence blocks
// a strict side change of the motion segment within the fence span; the
// blocked coordinate lands one ulp on the approach side so the agent keeps a
// well-defined side for the next step.
void resolve_motion(const Geometry& geom, Vec2 old_pos, Vec2& pos, Vec2& vel) {
  double fx = geom.fence_x();
  if ((old_pos.x - fx) * (pos.x - fx) < 0.0) {
    double t = (fx - old_pos.x) / (pos.x - old_pos.x);
    double y_cross = old_pos.y + t * (pos.y - old_pos.y);
    if (y_cross >= geom.fence_y_lo() && y_cross <= geom.fence_y_hi()) {
      pos.x = std::nextafter(fx, old_pos.x);
      vel.x = 0.0;
    }
  }
  if (pos.x < 0.0) {
    pos.x = 0.0;
    vel.x = 0.0;
  } else if (pos.x > geom.field_size) {
    pos.x = geom.field_size;
    vel.x = 0.0;
  }
  if (pos.y < 0.0) {
    pos.y = 0.0;
    vel.y = 0.0;
  } else if (pos.y > geom.field_size) {
    pos.y = geom.field_size;
    vel.y = 0.0;
  }
}

}  // namespace

void step_world(WorldState& state, std::span<const Vec2> dog_forces,
                const SimConfig& cfg, const Geometry& geom) {
  const size_t n_sheep = state.sheep.size();

  // Sheep forces from the pre-step state.
  std::vector<Vec2> forces(n_sheep);
  for (size_t i = 0; i < n_sheep; ++i) {
    const Sheep& s = state.sheep[i];
    if (s.captured) continue;
    Vec2 f = fence_force(s.pos, geom, cfg);
    for (size_t j = 0; j < n_sheep; ++j) {
      if (j == i || state.sheep[j].captured) continue;
      f += sheep_cluster_force(s.pos, state.sheep[j].pos, cfg);
    }
    for (const Dog& d : state.dogs) f += dog_repulsion_force(s.pos, d.pos, cfg);
    forces[i] = f;
  }

  for (size_t i = 0; i < n_sheep; ++i) {
    Sheep& s = state.sheep[i];
    if (s.captured) continue;
    s.vel += forces[i] * cfg.dt;
    cap_speed(s.vel, cfg.v_s);
    Vec2 old_pos = s.pos;
    s.pos += s.vel * cfg.dt;
    resolve_motion(geom, old_pos, s.pos, s.vel);
  }

  for (size_t d = 0; d < state.dogs.size(); ++d) {
    Dog& dog = state.dogs[d];
    Vec2 f = dog_forces[d];
    if (!f.finite()) {
      f = {};
      ++state.nonfinite_force_count;
    }
    dog.vel += f * cfg.dt;
    cap_speed(dog.vel, cfg.v_d);
    Vec2 old_pos = dog.pos;
    dog.pos += dog.vel * cfg.dt;
    resolve_motion(geom, old_pos, dog.pos, dog.vel);
  }

  for (Sheep& s : state.sheep) {
    if (s.captured || !geom.inside_pen(s.pos)) continue;
    s.captured = true;
    s.pos = geom.pen_corner();
    s.vel = {};
  }

  ++state.step;
}

WorldState spawn(const SimConfig& cfg, const Geometry& geom, Rng& rng) {
  WorldState w;
  w.dogs.resize(static_cast<size_t>(cfg.n_dogs));
  for (Dog& d : w.dogs) {
    d.pos.x = rng.uniform(0.0, geom.pen_size);
    d.pos.y = rng.uniform(geom.field_size - geom.pen_size, geom.field_size);
    d.vel = {};
  }

  double x_lo = 0.0, x_hi = geom.field_size;
  double y_lo = 0.0, y_hi = geom.field_size;
  if (cfg.sheep_spawn_region == SpawnRegion::RightHalf)
    x_lo = geom.field_size / 2.0;
  else
    y_hi = geom.field_size / 2.0;

  w.sheep.resize(static_cast<size_t>(cfg.n_sheep));
  for (Sheep& s : w.sheep) {
    s.pos.x = rng.uniform(x_lo, x_hi);
    s.pos.y = rng.uniform(y_lo, y_hi);
    double angle = rng.uniform(0.0, kTwoPi);
    double speed = rng.uniform(0.0, cfg.v_s);
    s.vel = {speed * std::cos(angle), speed * std::sin(angle)};
    s.captured = false;
  }
  return w;
}

}  // namespace shepherd
