#include "herd/sheep.hpp"

#include <cmath>

#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr int kNudgeCycles = 5;
// A moving sheep that detects white keeps driving straight this many
// cycles (0.06 m) so its body actually steps into the region before the
// permanent halt; probes sit 3 cm ahead of the center, which would
// otherwise freeze the sheep just short of the boundary.
constexpr int kCaptureCommitCycles = 5;

int strongest_sensor(const std::array<double, kProxSensorCount>& prox) {
  int best = 0;
  for (int i = 1; i < kProxSensorCount; ++i) {
    if (prox[i] > prox[best]) best = i;
  }
  return best;
}

}  // namespace

SheepVariant sheep_variant_from_string(std::string_view s) {
  if (s == "c1") return SheepVariant::kC1Attraction;
  if (s == "c2") return SheepVariant::kC2Repulsion;
  if (s == "c3") return SheepVariant::kC3AttractionRepulsion;
  throw FormatError("unknown sheep variant: " + std::string(s));
}

Actuation SheepController::step(const SensorReadings& readings, RngStream& /*rng*/) {
  if (halted_) return {0.0, 0.0, ColorSignal::kNone};

  if (capture_cycles_left_ > 0) {
    if (--capture_cycles_left_ == 0) {
      halted_ = true;
      return {0.0, 0.0, ColorSignal::kNone};
    }
    return {kMaxWheelSpeed, kMaxWheelSpeed, ColorSignal::kYellow};
  }

  // White floor halts the sheep permanently, LEDs off. A sheep that was in
  // motion finishes stepping into the region first.
  bool on_white = false;
  for (FloorColor g : readings.gnd) {
    if (g == FloorColor::kWhite) on_white = true;
  }
  const bool in_motion = nudge_cycles_left_ > 0 ||
                         readings.prox[strongest_sensor(readings.prox)] > kObstacleThreshold ||
                         (variant_ != SheepVariant::kC1Attraction &&
                          readings.cam[signal_index(SignalColor::kCyan)]) ||
                         (variant_ != SheepVariant::kC2Repulsion &&
                          readings.cam[signal_index(SignalColor::kMagenta)]);
  if (on_white) {
    if (in_motion) {
      capture_cycles_left_ = kCaptureCommitCycles - 1;
      return {kMaxWheelSpeed, kMaxWheelSpeed, ColorSignal::kYellow};
    }
    halted_ = true;
    return {0.0, 0.0, ColorSignal::kNone};
  }

  const int cyan = signal_index(SignalColor::kCyan);
  const int magenta = signal_index(SignalColor::kMagenta);
  bool flee_cyan = variant_ != SheepVariant::kC1Attraction && readings.cam[cyan];
  const bool seek_magenta = variant_ != SheepVariant::kC2Repulsion && readings.cam[magenta];
  if (flee_cyan && seek_magenta && priority_ == SheepPriority::kAttractionFirst) {
    flee_cyan = false;
  }

  Actuation a{0.0, 0.0, ColorSignal::kYellow};
  if (flee_cyan) {
    a = steer_toward(readings.v_color[cyan].angle + std::numbers::pi, kMaxWheelSpeed,
                     ColorSignal::kYellow);
  } else if (seek_magenta) {
    a = steer_toward(readings.v_color[magenta].angle, kMaxWheelSpeed, ColorSignal::kYellow);
  } else {
    const int s = strongest_sensor(readings.prox);
    if (readings.prox[s] > kObstacleThreshold) {
      nudge_cycles_left_ = kNudgeCycles;
      a = steer_toward(kProxSensorAngles[s] + std::numbers::pi, kMaxWheelSpeed,
                       ColorSignal::kYellow);
    } else if (nudge_cycles_left_ > 0) {
      --nudge_cycles_left_;
      a.v_left = kMaxWheelSpeed;
      a.v_right = kMaxWheelSpeed;
    }
    // otherwise static: no stimulus, no motion
  }
  a.v_left = std::clamp(a.v_left, -kMaxWheelSpeed, kMaxWheelSpeed);
  a.v_right = std::clamp(a.v_right, -kMaxWheelSpeed, kMaxWheelSpeed);
  return a;
}

}  // namespace herd
