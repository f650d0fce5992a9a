#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "herd/mission.hpp"
#include "herd/nn.hpp"
#include "herd/pfsm.hpp"
#include "herd/rwalk.hpp"

namespace herd {

// Marker for the built-in random-walk baseline (needs no parameters).
struct RwalkSpec {
  bool operator==(const RwalkSpec&) const = default;
};

// Everything a shepherd swarm can run: a PFSM, a network genome, or the
// baseline walk. All shepherds in an episode share one spec but each gets
// its own controller instance (own memory).
using ShepherdSpec = std::variant<PfsmConfig, NnGenome, RwalkSpec>;

std::unique_ptr<Controller> make_controller(const ShepherdSpec& spec);

struct WorldState {
  ArenaSpec arena;
  std::vector<RobotBody> robots;  // shepherds first, then sheep
  int n_shepherds = 0;
  int n_sheep = 0;
  long tick = 0;
  RngStream rng;

  std::vector<Vec2> sheep_positions() const;
};

struct EpisodeResult {
  double objective = 0.0;
  std::uint64_t seed = 0;
  std::vector<Vec2> final_sheep_positions;
  int episodes_consumed = 1;
};

// Per-cycle observer; called with tick 0 before the first step.
using TraceSink = std::function<void(long tick, const WorldState&)>;

// Places all robots by rejection sampling (clearance kPlacementClearance
// between surfaces and from walls), headings uniform. Sheep LEDs start
// yellow, shepherd LEDs off. Throws PlacementInfeasibleError after 1e5
// failed attempts for one robot.
WorldState init_episode(const ScenarioSpec& scenario, std::uint64_t seed);

inline constexpr double kPlacementClearance = 0.04;  // m of free surface gap
inline constexpr int kPlacementMaxAttempts = 100000;

// One control cycle: every live robot senses the pre-step snapshot and is
// queried in index order, then all robots integrate simultaneously and
// collisions are resolved. Controllers are indexed like world.robots.
// Throws ControllerFaultError on non-finite actuation.
void step(WorldState& world, std::span<const std::unique_ptr<Controller>> controllers);

// Pushes overlapping robot pairs apart symmetrically and projects bodies
// back inside the arena; halted robots never move. At most 20 passes,
// residual overlap below 1e-6 m.
void resolve_collisions(WorldState& world);

// Full episode: init, duration_cycles steps, objective on final sheep
// positions. A controller fault aborts the episode with the scenario's
// worst-case objective. Bitwise deterministic in (scenario, spec, seed).
EpisodeResult run_episode(const ScenarioSpec& scenario, const ShepherdSpec& shepherd_spec,
                          std::uint64_t seed, const TraceSink& trace = nullptr);

// Same episode loop with caller-supplied shepherd controllers (sheep keep
// their built-in behavior); the factory is called once per shepherd index.
using ShepherdFactory = std::function<std::unique_ptr<Controller>(int shepherd_index)>;
EpisodeResult run_episode_with(const ScenarioSpec& scenario, const ShepherdFactory& factory,
                               std::uint64_t seed, const TraceSink& trace = nullptr);

}  // namespace herd
