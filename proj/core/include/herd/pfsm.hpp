#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "herd/controller.hpp"

namespace herd {

enum class BehaviorKind : std::uint8_t {
  kExploration = 0,
  kStop,
  kColorFollowing,
  kColorElusion,
  kCircling,
};

enum class ConditionKind : std::uint8_t {
  kBlackFloor = 0,
  kGrayFloor,
  kWhiteFloor,
  kFixedProbability,
  kColorDetection,
};

inline constexpr int kBehaviorKindCount = 5;
inline constexpr int kConditionKindCount = 5;
inline constexpr int kMaxPfsmStates = 4;
inline constexpr int kMaxTransitionsPerState = 4;
inline constexpr int kMinRotationCycles = 1;
inline constexpr int kMaxRotationCycles = 100;
inline constexpr double kCirclingSpeed = 0.06;  // m/s forward while circling
// Exploration gait used by color modules when their color is not in view.
inline constexpr int kFallbackRotationCycles = 10;

// One low-level behavior and its parameters. Only the fields relevant to
// `kind` are meaningful; the LED color gamma applies to every behavior.
struct BehaviorSpec {
  BehaviorKind kind = BehaviorKind::kStop;
  ColorSignal led = ColorSignal::kNone;        // gamma
  int rotation_cycles = kMinRotationCycles;    // tau, exploration, [1, 100]
  SignalColor color = SignalColor::kCyan;      // delta, following/elusion
  double turn_rate = 1.0;                      // theta, circling, (-pi, pi] \ {0}

  bool operator==(const BehaviorSpec&) const = default;
};

// One outgoing transition: fires with probability beta when the condition
// holds. `color` is only meaningful for kColorDetection.
struct TransitionSpec {
  ConditionKind condition = ConditionKind::kFixedProbability;
  double probability = 0.0;  // beta in [0, 1]
  SignalColor color = SignalColor::kCyan;
  int target = 0;

  bool operator==(const TransitionSpec&) const = default;
};

struct PfsmState {
  BehaviorSpec behavior;
  std::vector<TransitionSpec> transitions;

  bool operator==(const PfsmState&) const = default;
};

// Probabilistic finite-state machine: 1-4 states, up to 4 outgoing
// transitions each, never a self-transition. State 0 is initial.
struct PfsmConfig {
  std::vector<PfsmState> states;

  bool operator==(const PfsmConfig&) const = default;

  // Throws FormatError when any structural bound or parameter range is
  // violated; every producer in this library validates before returning.
  void validate() const;
};

struct BehaviorMemory {
  int turn_cycles_left = 0;
  int turn_dir = 1;
};

struct PfsmExecState {
  int current = 0;
  BehaviorMemory memory;
};

// Executes one behavior for one cycle (memory carries rotation countdowns);
// output includes the obstacle-repulsion overlay and is clamped.
Actuation behavior_output(const BehaviorSpec& spec, const SensorReadings& readings,
                          BehaviorMemory& memory, RngStream& rng);

// Condition check plus the single beta draw; no draw happens when the
// condition is unfulfilled.
bool transition_fires(const TransitionSpec& transition, const SensorReadings& readings,
                      RngStream& rng);

// One control cycle: first transition of the current state that fires wins,
// resets behavior memory, and the (possibly new) state's behavior runs.
Actuation pfsm_step(const PfsmConfig& config, PfsmExecState& exec, const SensorReadings& readings,
                    RngStream& rng);

// Uniform sample over the bounded architecture.
PfsmConfig sample_pfsm(RngStream& rng);

enum class PfsmEdit : std::uint8_t {
  kPerturbNumeric = 0,
  kChangeColor,
  kAddState,
  kRemoveState,
  kAddTransition,
  kRemoveTransition,
  kRetargetTransition,
};

// Applies exactly one structural or parametric edit drawn uniformly among
// the applicable kinds; the result always validates. The applied edit kind
// is reported through `applied` when non-null.
PfsmConfig mutate_pfsm(const PfsmConfig& config, RngStream& rng, PfsmEdit* applied = nullptr);

std::string pfsm_to_json(const PfsmConfig& config);
PfsmConfig pfsm_from_json(const std::string& text);

class PfsmController : public Controller {
 public:
  explicit PfsmController(PfsmConfig config) : config_(std::move(config)) { config_.validate(); }

  Actuation step(const SensorReadings& readings, RngStream& rng) override {
    return pfsm_step(config_, exec_, readings, rng);
  }

  const PfsmConfig& config() const { return config_; }
  const PfsmExecState& exec_state() const { return exec_; }

 private:
  PfsmConfig config_;
  PfsmExecState exec_;
};

}  // namespace herd
