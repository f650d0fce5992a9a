#include "herd/pfsm.hpp"

#include <algorithm>
#include <cmath>

#include "herd/errors.hpp"
#include "nlohmann/json.hpp"

namespace herd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinTurnRate = 1e-9;  // keeps theta out of zero

bool uses_tau(BehaviorKind k) { return k == BehaviorKind::kExploration; }
bool uses_delta(BehaviorKind k) {
  return k == BehaviorKind::kColorFollowing || k == BehaviorKind::kColorElusion;
}
bool uses_theta(BehaviorKind k) { return k == BehaviorKind::kCircling; }

Actuation finish(Actuation a, const SensorReadings& readings) {
  add_proximity_repulsion(readings.prox, a.v_left, a.v_right);
  a.v_left = std::clamp(a.v_left, -kMaxWheelSpeed, kMaxWheelSpeed);
  a.v_right = std::clamp(a.v_right, -kMaxWheelSpeed, kMaxWheelSpeed);
  return a;
}

// Straight-until-obstacle gait shared by exploration and the color-module
// fallback: on a blocked front, turn in place for a uniformly drawn number
// of cycles in [0, tau].
Actuation ballistic_motion(int tau, ColorSignal led, const SensorReadings& readings,
                           BehaviorMemory& memory, RngStream& rng) {
  if (memory.turn_cycles_left == 0 && front_blocked(readings.prox)) {
    memory.turn_cycles_left = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(tau) + 1));
    memory.turn_dir = rng.bernoulli(0.5) ? 1 : -1;
  }
  Actuation a;
  a.led = led;
  if (memory.turn_cycles_left > 0) {
    --memory.turn_cycles_left;
    a.v_left = -memory.turn_dir * kMaxWheelSpeed;
    a.v_right = memory.turn_dir * kMaxWheelSpeed;
  } else {
    a.v_left = kMaxWheelSpeed;
    a.v_right = kMaxWheelSpeed;
  }
  return a;
}

SignalColor sample_signal_color(RngStream& rng) {
  return static_cast<SignalColor>(rng.uniform_int(kSignalColorCount));
}

ColorSignal sample_led(RngStream& rng) { return static_cast<ColorSignal>(rng.uniform_int(4)); }

double sample_turn_rate(RngStream& rng) {
  double theta = 0.0;
  do {
    theta = rng.uniform(-kPi, kPi);
  } while (std::abs(theta) < kMinTurnRate);
  // Table range is (-pi, pi]; fold the open end onto pi.
  return theta == -kPi ? kPi : theta;
}

BehaviorSpec sample_behavior(RngStream& rng) {
  // Fields a behavior kind does not use stay at their defaults, keeping
  // configurations canonical (serialization round-trips to equality).
  BehaviorSpec b;
  b.kind = static_cast<BehaviorKind>(rng.uniform_int(kBehaviorKindCount));
  b.led = sample_led(rng);
  if (uses_tau(b.kind)) {
    b.rotation_cycles =
        kMinRotationCycles +
        static_cast<int>(rng.uniform_int(kMaxRotationCycles - kMinRotationCycles + 1));
  }
  if (uses_delta(b.kind)) b.color = sample_signal_color(rng);
  if (uses_theta(b.kind)) b.turn_rate = sample_turn_rate(rng);
  return b;
}

TransitionSpec sample_transition(RngStream& rng, int source, int state_count) {
  TransitionSpec t;
  t.condition = static_cast<ConditionKind>(rng.uniform_int(kConditionKindCount));
  t.probability = rng.uniform();
  if (t.condition == ConditionKind::kColorDetection) t.color = sample_signal_color(rng);
  int target = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(state_count) - 1));
  if (target >= source) ++target;  // uniform over states != source
  t.target = target;
  return t;
}

bool any_ground(const SensorReadings& readings, FloorColor color) {
  for (FloorColor g : readings.gnd) {
    if (g == color) return true;
  }
  return false;
}

}  // namespace

void PfsmConfig::validate() const {
  if (states.empty() || states.size() > kMaxPfsmStates) {
    throw FormatError("PFSM must have 1 to 4 states");
  }
  const int n = static_cast<int>(states.size());
  for (int s = 0; s < n; ++s) {
    const PfsmState& st = states[s];
    if (st.transitions.size() > kMaxTransitionsPerState) {
      throw FormatError("PFSM state exceeds 4 outgoing transitions");
    }
    if (uses_tau(st.behavior.kind) && (st.behavior.rotation_cycles < kMinRotationCycles ||
                                       st.behavior.rotation_cycles > kMaxRotationCycles)) {
      throw FormatError("exploration tau out of [1, 100]");
    }
    if (uses_theta(st.behavior.kind)) {
      const double theta = st.behavior.turn_rate;
      if (!(theta > -kPi && theta <= kPi) || theta == 0.0) {
        throw FormatError("circling theta out of (-pi, pi] or zero");
      }
    }
    for (const TransitionSpec& t : st.transitions) {
      if (t.target < 0 || t.target >= n) throw FormatError("transition target out of range");
      if (t.target == s) throw FormatError("self-transitions are not allowed");
      if (!(t.probability >= 0.0 && t.probability <= 1.0)) {
        throw FormatError("transition probability out of [0, 1]");
      }
    }
  }
}

Actuation behavior_output(const BehaviorSpec& spec, const SensorReadings& readings,
                          BehaviorMemory& memory, RngStream& rng) {
  Actuation a;
  switch (spec.kind) {
    case BehaviorKind::kExploration:
      a = ballistic_motion(spec.rotation_cycles, spec.led, readings, memory, rng);
      break;
    case BehaviorKind::kStop:
      a.led = spec.led;
      break;
    case BehaviorKind::kColorFollowing: {
      const int c = signal_index(spec.color);
      if (readings.cam[c]) {
        a = steer_toward(readings.v_color[c].angle, kMaxWheelSpeed, spec.led);
      } else {
        a = ballistic_motion(kFallbackRotationCycles, spec.led, readings, memory, rng);
      }
      break;
    }
    case BehaviorKind::kColorElusion: {
      const int c = signal_index(spec.color);
      if (readings.cam[c]) {
        a = steer_toward(readings.v_color[c].angle + kPi, kMaxWheelSpeed, spec.led);
      } else {
        a = ballistic_motion(kFallbackRotationCycles, spec.led, readings, memory, rng);
      }
      break;
    }
    case BehaviorKind::kCircling: {
      const double omega = spec.turn_rate;
      a.v_left = kCirclingSpeed - omega * kAxleLength / 2.0;
      a.v_right = kCirclingSpeed + omega * kAxleLength / 2.0;
      a.led = spec.led;
      break;
    }
  }
  return finish(a, readings);
}

bool transition_fires(const TransitionSpec& transition, const SensorReadings& readings,
                      RngStream& rng) {
  bool fulfilled = false;
  switch (transition.condition) {
    case ConditionKind::kBlackFloor:
      fulfilled = any_ground(readings, FloorColor::kBlack);
      break;
    case ConditionKind::kGrayFloor:
      fulfilled = any_ground(readings, FloorColor::kGray);
      break;
    case ConditionKind::kWhiteFloor:
      fulfilled = any_ground(readings, FloorColor::kWhite);
      break;
    case ConditionKind::kFixedProbability:
      fulfilled = true;
      break;
    case ConditionKind::kColorDetection:
      fulfilled = readings.cam[signal_index(transition.color)];
      break;
  }
  if (!fulfilled) return false;
  return rng.bernoulli(transition.probability);
}

Actuation pfsm_step(const PfsmConfig& config, PfsmExecState& exec, const SensorReadings& readings,
                    RngStream& rng) {
  for (const TransitionSpec& t : config.states[exec.current].transitions) {
    if (transition_fires(t, readings, rng)) {
      exec.current = t.target;
      exec.memory = BehaviorMemory{};
      break;
    }
  }
  return behavior_output(config.states[exec.current].behavior, readings, exec.memory, rng);
}

PfsmConfig sample_pfsm(RngStream& rng) {
  PfsmConfig cfg;
  const int n = 1 + static_cast<int>(rng.uniform_int(kMaxPfsmStates));
  cfg.states.resize(n);
  for (int s = 0; s < n; ++s) {
    cfg.states[s].behavior = sample_behavior(rng);
    if (n > 1) {
      const int m = static_cast<int>(rng.uniform_int(kMaxTransitionsPerState + 1));
      for (int t = 0; t < m; ++t) {
        cfg.states[s].transitions.push_back(sample_transition(rng, s, n));
      }
    }
  }
  cfg.validate();
  return cfg;
}

namespace {

struct NumericSlot {
  int state;
  int transition;  // -1 for a behavior parameter
};

std::vector<NumericSlot> numeric_slots(const PfsmConfig& cfg) {
  std::vector<NumericSlot> slots;
  for (int s = 0; s < static_cast<int>(cfg.states.size()); ++s) {
    const PfsmState& st = cfg.states[s];
    if (uses_tau(st.behavior.kind) || uses_theta(st.behavior.kind)) slots.push_back({s, -1});
    for (int t = 0; t < static_cast<int>(st.transitions.size()); ++t) slots.push_back({s, t});
  }
  return slots;
}

struct ColorSlot {
  int state;
  int transition;  // -1: behavior; -2: behavior led (gamma)
};

std::vector<ColorSlot> color_slots(const PfsmConfig& cfg) {
  std::vector<ColorSlot> slots;
  for (int s = 0; s < static_cast<int>(cfg.states.size()); ++s) {
    const PfsmState& st = cfg.states[s];
    slots.push_back({s, -2});
    if (uses_delta(st.behavior.kind)) slots.push_back({s, -1});
    for (int t = 0; t < static_cast<int>(st.transitions.size()); ++t) {
      if (st.transitions[t].condition == ConditionKind::kColorDetection) slots.push_back({s, t});
    }
  }
  return slots;
}

int transition_count(const PfsmConfig& cfg) {
  int n = 0;
  for (const PfsmState& st : cfg.states) n += static_cast<int>(st.transitions.size());
  return n;
}

bool can_add_transition(const PfsmConfig& cfg) {
  if (cfg.states.size() < 2) return false;
  for (const PfsmState& st : cfg.states) {
    if (st.transitions.size() < kMaxTransitionsPerState) return true;
  }
  return false;
}

bool can_retarget(const PfsmConfig& cfg) {
  return cfg.states.size() >= 3 && transition_count(cfg) > 0;
}

// Gaussian perturbation with sigma = 10% of the parameter range, clamped;
// redrawn until the stored value actually changes.
void perturb_numeric(PfsmConfig& cfg, NumericSlot slot, RngStream& rng) {
  PfsmState& st = cfg.states[slot.state];
  if (slot.transition >= 0) {
    double& beta = st.transitions[slot.transition].probability;
    const double old = beta;
    do {
      beta = std::clamp(old + rng.normal(0.0, 0.1), 0.0, 1.0);
    } while (beta == old);
  } else if (uses_tau(st.behavior.kind)) {
    int& tau = st.behavior.rotation_cycles;
    const int old = tau;
    do {
      const double next = std::round(old + rng.normal(0.0, 0.1 * (kMaxRotationCycles - kMinRotationCycles)));
      tau = std::clamp(static_cast<int>(next), kMinRotationCycles, kMaxRotationCycles);
    } while (tau == old);
  } else {
    double& theta = st.behavior.turn_rate;
    const double old = theta;
    do {
      double next = std::clamp(old + rng.normal(0.0, 0.1 * kTau), -kPi, kPi);
      if (next == 0.0 || next == -kPi) next = std::copysign(kMinTurnRate, old);
      theta = next;
    } while (theta == old);
  }
}

void change_color(PfsmConfig& cfg, ColorSlot slot, RngStream& rng) {
  PfsmState& st = cfg.states[slot.state];
  if (slot.transition == -2) {
    // Gamma has four values; draw one of the other three.
    const int old = static_cast<int>(st.behavior.led);
    int next = static_cast<int>(rng.uniform_int(3));
    if (next >= old) ++next;
    st.behavior.led = static_cast<ColorSignal>(next);
  } else {
    SignalColor& ref = slot.transition == -1 ? st.behavior.color
                                             : st.transitions[slot.transition].color;
    const int old = static_cast<int>(ref);
    int next = static_cast<int>(rng.uniform_int(kSignalColorCount - 1));
    if (next >= old) ++next;
    ref = static_cast<SignalColor>(next);
  }
}

}  // namespace

PfsmConfig mutate_pfsm(const PfsmConfig& config, RngStream& rng, PfsmEdit* applied) {
  PfsmConfig cfg = config;
  const int n = static_cast<int>(cfg.states.size());
  for (;;) {
    const auto edit = static_cast<PfsmEdit>(rng.uniform_int(7));
    switch (edit) {
      case PfsmEdit::kPerturbNumeric: {
        const auto slots = numeric_slots(cfg);
        if (slots.empty()) continue;
        perturb_numeric(cfg, slots[rng.uniform_int(slots.size())], rng);
        break;
      }
      case PfsmEdit::kChangeColor: {
        const auto slots = color_slots(cfg);
        change_color(cfg, slots[rng.uniform_int(slots.size())], rng);
        break;
      }
      case PfsmEdit::kAddState: {
        if (n >= kMaxPfsmStates) continue;
        PfsmState st;
        st.behavior = sample_behavior(rng);
        const int m = static_cast<int>(rng.uniform_int(kMaxTransitionsPerState + 1));
        for (int t = 0; t < m; ++t) {
          st.transitions.push_back(sample_transition(rng, n, n + 1));
        }
        cfg.states.push_back(std::move(st));
        break;
      }
      case PfsmEdit::kRemoveState: {
        if (n <= 1) continue;
        const int victim = static_cast<int>(rng.uniform_int(n));
        cfg.states.erase(cfg.states.begin() + victim);
        for (PfsmState& st : cfg.states) {
          std::erase_if(st.transitions,
                        [victim](const TransitionSpec& t) { return t.target == victim; });
          for (TransitionSpec& t : st.transitions) {
            if (t.target > victim) --t.target;
          }
        }
        break;
      }
      case PfsmEdit::kAddTransition: {
        if (!can_add_transition(cfg)) continue;
        int s;
        do {
          s = static_cast<int>(rng.uniform_int(n));
        } while (cfg.states[s].transitions.size() >= kMaxTransitionsPerState);
        cfg.states[s].transitions.push_back(sample_transition(rng, s, n));
        break;
      }
      case PfsmEdit::kRemoveTransition: {
        if (transition_count(cfg) == 0) continue;
        int s;
        do {
          s = static_cast<int>(rng.uniform_int(n));
        } while (cfg.states[s].transitions.empty());
        auto& ts = cfg.states[s].transitions;
        ts.erase(ts.begin() + static_cast<int>(rng.uniform_int(ts.size())));
        break;
      }
      case PfsmEdit::kRetargetTransition: {
        if (!can_retarget(cfg)) continue;
        int s;
        do {
          s = static_cast<int>(rng.uniform_int(n));
        } while (cfg.states[s].transitions.empty());
        auto& ts = cfg.states[s].transitions;
        TransitionSpec& t = ts[rng.uniform_int(ts.size())];
        // New target differs from both the source and the old target.
        int next;
        do {
          next = static_cast<int>(rng.uniform_int(n));
        } while (next == s || next == t.target);
        t.target = next;
        break;
      }
    }
    if (applied != nullptr) *applied = edit;
    break;
  }
  cfg.validate();
  return cfg;
}

std::string pfsm_to_json(const PfsmConfig& config) {
  config.validate();
  nlohmann::json j;
  j["format_version"] = 1;
  j["type"] = "pfsm";
  auto& states = j["states"] = nlohmann::json::array();
  for (const PfsmState& st : config.states) {
    nlohmann::json s;
    switch (st.behavior.kind) {
      case BehaviorKind::kExploration:
        s["behavior"] = "exploration";
        s["tau"] = st.behavior.rotation_cycles;
        break;
      case BehaviorKind::kStop:
        s["behavior"] = "stop";
        break;
      case BehaviorKind::kColorFollowing:
        s["behavior"] = "color_following";
        s["color"] = std::string(to_string(st.behavior.color));
        break;
      case BehaviorKind::kColorElusion:
        s["behavior"] = "color_elusion";
        s["color"] = std::string(to_string(st.behavior.color));
        break;
      case BehaviorKind::kCircling:
        s["behavior"] = "circling";
        s["theta"] = st.behavior.turn_rate;
        break;
    }
    s["led"] = std::string(to_string(st.behavior.led));
    auto& ts = s["transitions"] = nlohmann::json::array();
    for (const TransitionSpec& t : st.transitions) {
      nlohmann::json tj;
      switch (t.condition) {
        case ConditionKind::kBlackFloor: tj["condition"] = "black_floor"; break;
        case ConditionKind::kGrayFloor: tj["condition"] = "gray_floor"; break;
        case ConditionKind::kWhiteFloor: tj["condition"] = "white_floor"; break;
        case ConditionKind::kFixedProbability: tj["condition"] = "fixed_probability"; break;
        case ConditionKind::kColorDetection:
          tj["condition"] = "color_detection";
          tj["color"] = std::string(to_string(t.color));
          break;
      }
      tj["beta"] = t.probability;
      tj["target"] = t.target;
      ts.push_back(std::move(tj));
    }
    states.push_back(std::move(s));
  }
  return j.dump(2);
}

PfsmConfig pfsm_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("PFSM JSON parse failure: ") + e.what());
  }
  PfsmConfig cfg;
  try {
    if (j.at("format_version").get<int>() != 1) throw FormatError("unsupported PFSM format_version");
    if (j.at("type").get<std::string>() != "pfsm") throw FormatError("not a PFSM document");
    for (const auto& s : j.at("states")) {
      PfsmState st;
      const std::string kind = s.at("behavior").get<std::string>();
      if (kind == "exploration") {
        st.behavior.kind = BehaviorKind::kExploration;
        st.behavior.rotation_cycles = s.at("tau").get<int>();
      } else if (kind == "stop") {
        st.behavior.kind = BehaviorKind::kStop;
      } else if (kind == "color_following") {
        st.behavior.kind = BehaviorKind::kColorFollowing;
        st.behavior.color = signal_color_from_string(s.at("color").get<std::string>());
      } else if (kind == "color_elusion") {
        st.behavior.kind = BehaviorKind::kColorElusion;
        st.behavior.color = signal_color_from_string(s.at("color").get<std::string>());
      } else if (kind == "circling") {
        st.behavior.kind = BehaviorKind::kCircling;
        st.behavior.turn_rate = s.at("theta").get<double>();
      } else {
        throw FormatError("unknown behavior kind: " + kind);
      }
      st.behavior.led = color_signal_from_string(s.at("led").get<std::string>());
      for (const auto& t : s.value("transitions", nlohmann::json::array())) {
        TransitionSpec ts;
        const std::string cond = t.at("condition").get<std::string>();
        if (cond == "black_floor") {
          ts.condition = ConditionKind::kBlackFloor;
        } else if (cond == "gray_floor") {
          ts.condition = ConditionKind::kGrayFloor;
        } else if (cond == "white_floor") {
          ts.condition = ConditionKind::kWhiteFloor;
        } else if (cond == "fixed_probability") {
          ts.condition = ConditionKind::kFixedProbability;
        } else if (cond == "color_detection") {
          ts.condition = ConditionKind::kColorDetection;
          ts.color = signal_color_from_string(t.at("color").get<std::string>());
        } else {
          throw FormatError("unknown condition kind: " + cond);
        }
        ts.probability = t.at("beta").get<double>();
        ts.target = t.at("target").get<int>();
        st.transitions.push_back(ts);
      }
      cfg.states.push_back(std::move(st));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("PFSM JSON field error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace herd
