#pragma once

#include "herd/controller.hpp"

namespace herd {

// Ballistic random walk: straight at full speed with LEDs off; a blocked
// front triggers an in-place rotation toward a heading change drawn
// uniformly in [-pi, pi], then the walk resumes.
class RwalkController : public Controller {
 public:
  Actuation step(const SensorReadings& readings, RngStream& rng) override;

 private:
  int turn_cycles_left_ = 0;
  int turn_dir_ = 1;
};

}  // namespace herd
