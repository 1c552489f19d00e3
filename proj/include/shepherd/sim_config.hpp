#pragma once

#include <stdexcept>
#include <string>

#include "shepherd/vec2.hpp"

namespace shepherd {

// Bad user-supplied configuration; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpawnRegion { RightHalf, LowerHalf };

// All physical constants, geometry and episode shape. Defaults are the
// standard parameter set: F_a=0.1, F_r=0.05, F_d=5, F_f=1, d_s=20, d_d=30,
// d_f=5, v_s=1, v_d=3, dt=1, 500 steps, 100x100 field, 25x25 pen.
struct SimConfig {
  double f_a = 0.1;  // sheep-sheep attraction constant
  double f_r = 0.05; // sheep-sheep repulsion constant
  double f_d = 5.0;  // dog repulsion constant
  double f_f = 1.0;  // fence repulsion constant
  double d_s = 20.0; // sheep-sheep interaction range
  double d_d = 30.0; // dog repulsion range
  double d_f = 5.0;  // fence repulsion range
  double v_s = 1.0;  // max sheep speed
  double v_d = 3.0;  // max dog speed
  double dt = 1.0;
  int steps = 500;
  double field_size = 100.0;
  double pen_size = 25.0;
  int n_sheep = 20;
  int n_dogs = 1;
  SpawnRegion sheep_spawn_region = SpawnRegion::RightHalf;
  double steering_offset = 10.0;

  // Throws ConfigError naming the offending field.
  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
    };
    positive(d_s, "d_s");
    positive(d_d, "d_d");
    positive(d_f, "d_f");
    positive(v_s, "v_s");
    positive(v_d, "v_d");
    positive(dt, "dt");
    positive(field_size, "field_size");
    positive(pen_size, "pen_size");
    positive(steering_offset, "steering_offset");
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (!(pen_size < field_size)) throw ConfigError("pen_size must be < field_size");
    if (n_sheep < 1) throw ConfigError("n_sheep must be >= 1");
    if (n_dogs < 1) throw ConfigError("n_dogs must be >= 1");
  }
};

// Field walls, pen square in the top-left corner (y grows upward), and the
// interior fence along the pen's right side. The pen's bottom edge is the
// opening and carries no fence.
struct Geometry {
  double field_size = 100.0;
  double pen_size = 25.0;

  static Geometry from(const SimConfig& cfg) { return {cfg.field_size, cfg.pen_size}; }

  // Where captured sheep are parked.
  Vec2 pen_corner() const { return {0.0, field_size}; }
  Vec2 pen_center() const { return {pen_size / 2.0, field_size - pen_size / 2.0}; }

  double fence_x() const { return pen_size; }
  double fence_y_lo() const { return field_size - pen_size; }
  double fence_y_hi() const { return field_size; }

  // Capture region: strict interior of the pen square.
  bool inside_pen(Vec2 p) const {
    return p.x > 0.0 && p.x < pen_size && p.y > field_size - pen_size &&
           p.y < field_size;
  }
};

}  // namespace shepherd
