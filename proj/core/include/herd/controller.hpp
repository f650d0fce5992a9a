#pragma once

#include "herd/rm3.hpp"
#include "herd/rng.hpp"

namespace herd {

// Control software boundary: one instance per robot per episode. A step
// sees only the sensor readings and a random stream; all other state is
// the controller's own memory.
class Controller {
 public:
  virtual ~Controller() = default;

  virtual Actuation step(const SensorReadings& readings, RngStream& rng) = 0;

  // Sheep latch this after stepping onto white floor; the engine then
  // freezes the body for the rest of the episode.
  virtual bool halt_latched() const { return false; }
};

// Proportional heading controller with forward bias: full turn authority,
// forward speed scaled down as the target moves off-axis.
Actuation steer_toward(double body_angle, double speed, ColorSignal led);

// Braitenberg-style repulsion from proximity readings, added onto wheel
// commands before clamping. Head-on readings produce a deterministic
// clockwise escape turn.
void add_proximity_repulsion(const std::array<double, kProxSensorCount>& prox, double& v_left,
                             double& v_right);

// True when any front-facing sensor (within 49 degrees of the heading)
// reads above the obstacle threshold used by ballistic gaits.
bool front_blocked(const std::array<double, kProxSensorCount>& prox);

inline constexpr double kObstacleThreshold = 0.1;
inline constexpr double kSteerGain = 5.0;      // rad/s per rad of heading error
inline constexpr double kAvoidTurnGain = 3.0;  // rad/s per unit of lateral repulsion

}  // namespace herd
