#pragma once

#include "sara/energy.hpp"
#include "sara/geometry.hpp"

namespace sara {

enum class SensorClass { Fixed, Adjustable };
enum class SensorState { Awake, Sleeping, Dead };

struct Sensor {
  int id = -1;
  Point pos;
  SensorClass cls = SensorClass::Adjustable;
  double cap_radius = 0.0;  // r_fixed for Fixed, r_max for Adjustable
  double min_radius = 0.0;  // deployment metadata (lower end of the variation range)
  double radius = 0.0;      // current sensing radius; 0 = unit off
  double tx_range = 0.0;
  Battery battery;
  SensorState state = SensorState::Awake;
  bool decided = false;

  bool alive() const { return state != SensorState::Dead; }
  bool awake() const { return state == SensorState::Awake; }
  Circle circle() const { return {pos, radius}; }
};

}  // namespace sara
