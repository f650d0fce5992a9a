#include "herd/rwalk.hpp"

#include <cmath>

namespace herd {

namespace {

// In-place rotation rate with wheels at +-max speed, per control cycle.
const double kTurnPerCycle = (2.0 * kMaxWheelSpeed / kAxleLength) * kControlPeriod;

}  // namespace

Actuation RwalkController::step(const SensorReadings& readings, RngStream& rng) {
  if (turn_cycles_left_ == 0 && front_blocked(readings.prox)) {
    const double delta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    turn_cycles_left_ = static_cast<int>(std::lround(std::abs(delta) / kTurnPerCycle));
    turn_dir_ = delta >= 0.0 ? 1 : -1;
  }
  Actuation a;
  a.led = ColorSignal::kNone;
  if (turn_cycles_left_ > 0) {
    --turn_cycles_left_;
    a.v_left = -turn_dir_ * kMaxWheelSpeed;
    a.v_right = turn_dir_ * kMaxWheelSpeed;
  } else {
    a.v_left = kMaxWheelSpeed;
    a.v_right = kMaxWheelSpeed;
  }
  return a;
}

}  // namespace herd
