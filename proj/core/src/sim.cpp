#include "herd/sim.hpp"

#include <cmath>

#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr int kCollisionPasses = 20;
constexpr double kOverlapTol = 1e-9;

struct ControllerFactory {
  std::unique_ptr<Controller> operator()(const PfsmConfig& cfg) const {
    return std::make_unique<PfsmController>(cfg);
  }
  std::unique_ptr<Controller> operator()(const NnGenome& genome) const {
    return std::make_unique<NnController>(genome);
  }
  std::unique_ptr<Controller> operator()(const RwalkSpec&) const {
    return std::make_unique<RwalkController>();
  }
};

bool placement_ok(const WorldState& world, std::size_t placed, Vec2 candidate, double radius) {
  // Wall clearance.
  for (const Vec2& n : world.arena.edge_normals) {
    if (candidate.dot(n) > world.arena.apothem - radius - kPlacementClearance) return false;
  }
  // Clearance from already placed robots.
  for (std::size_t j = 0; j < placed; ++j) {
    const double min_dist = radius + world.robots[j].radius + kPlacementClearance;
    if ((candidate - world.robots[j].pose.position()).norm_sq() < min_dist * min_dist) {
      return false;
    }
  }
  return true;
}

Vec2 sample_position(const ScenarioSpec& scenario, const ArenaSpec& arena, RngStream& rng) {
  if (scenario.placement == PlacementMode::kCentralDisk) {
    const double r = scenario.central_disk_radius * std::sqrt(rng.uniform());
    const double a = rng.uniform(0.0, kTau);
    return unit_vector(a) * r;
  }
  // Uniform over the octagon via bounding-box rejection; the caller
  // re-checks wall clearance.
  for (;;) {
    const Vec2 p{rng.uniform(-arena.circumradius, arena.circumradius),
                 rng.uniform(-arena.circumradius, arena.circumradius)};
    if (point_in_arena(arena, p)) return p;
  }
}

void integrate(RobotBody& body, const Actuation& act) {
  const double v = 0.5 * (act.v_left + act.v_right);
  const double omega = (act.v_right - act.v_left) / body.axle_length;
  body.pose.x += v * std::cos(body.pose.heading) * kControlPeriod;
  body.pose.y += v * std::sin(body.pose.heading) * kControlPeriod;
  body.pose.heading = wrap_angle_2pi(body.pose.heading + omega * kControlPeriod);
}

}  // namespace

std::unique_ptr<Controller> make_controller(const ShepherdSpec& spec) {
  return std::visit(ControllerFactory{}, spec);
}

std::vector<Vec2> WorldState::sheep_positions() const {
  std::vector<Vec2> out;
  out.reserve(n_sheep);
  for (int i = n_shepherds; i < n_shepherds + n_sheep; ++i) {
    out.push_back(robots[i].pose.position());
  }
  return out;
}

WorldState init_episode(const ScenarioSpec& scenario, std::uint64_t seed) {
  WorldState world{scenario.arena, {}, scenario.n_shepherds, scenario.n_sheep, 0,
                   RngStream(seed)};
  const int total = scenario.n_shepherds + scenario.n_sheep;
  world.robots.reserve(total);
  for (int i = 0; i < total; ++i) {
    const bool is_sheep = i >= scenario.n_shepherds;
    RobotBody body;
    body.kind = is_sheep ? RobotKind::kSheep : RobotKind::kShepherd;
    body.led = is_sheep ? ColorSignal::kYellow : ColorSignal::kNone;

    int attempts = 0;
    for (;;) {
      const Vec2 p = sample_position(scenario, world.arena, world.rng);
      if (placement_ok(world, world.robots.size(), p, body.radius)) {
        body.pose.x = p.x;
        body.pose.y = p.y;
        break;
      }
      if (++attempts >= kPlacementMaxAttempts) {
        throw PlacementInfeasibleError("robot placement failed after 1e5 rejections");
      }
    }
    body.pose.heading = wrap_angle_2pi(world.rng.uniform(0.0, kTau));
    world.robots.push_back(body);
  }
  return world;
}

void resolve_collisions(WorldState& world) {
  auto& robots = world.robots;
  const std::size_t n = robots.size();
  for (int pass = 0; pass < kCollisionPasses; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (robots[i].halted && robots[j].halted) continue;
        const Vec2 pi = robots[i].pose.position();
        const Vec2 pj = robots[j].pose.position();
        const double min_dist = robots[i].radius + robots[j].radius;
        Vec2 d = pj - pi;
        double dist = d.norm();
        if (dist >= min_dist - kOverlapTol) continue;
        // Coincident centers: separate along a fixed axis.
        if (dist < 1e-12) {
          d = {1.0, 0.0};
          dist = 1.0;
        }
        const Vec2 dir = d * (1.0 / dist);
        const double overlap = min_dist - dist;
        if (robots[i].halted) {
          robots[j].pose.x += dir.x * overlap;
          robots[j].pose.y += dir.y * overlap;
        } else if (robots[j].halted) {
          robots[i].pose.x -= dir.x * overlap;
          robots[i].pose.y -= dir.y * overlap;
        } else {
          robots[i].pose.x -= dir.x * overlap * 0.5;
          robots[i].pose.y -= dir.y * overlap * 0.5;
          robots[j].pose.x += dir.x * overlap * 0.5;
          robots[j].pose.y += dir.y * overlap * 0.5;
        }
        moved = true;
      }
    }
    for (RobotBody& r : robots) {
      if (r.halted) continue;
      const double limit = world.arena.apothem - r.radius;
      for (const Vec2& normal : world.arena.edge_normals) {
        const double excess = r.pose.position().dot(normal) - limit;
        if (excess > 0.0) {
          r.pose.x -= normal.x * excess;
          r.pose.y -= normal.y * excess;
          moved = true;
        }
      }
    }
    if (!moved) break;
  }
}

void step(WorldState& world, std::span<const std::unique_ptr<Controller>> controllers) {
  const std::size_t n = world.robots.size();
  std::vector<Actuation> acts(n);
  std::vector<char> latched(n, 0);

  // Control phase: sensing sees the cycle-start snapshot because actuation
  // and LED changes are buffered until every controller has run.
  for (std::size_t i = 0; i < n; ++i) {
    if (world.robots[i].halted) continue;
    const SensorReadings readings = sense_all(world.arena, world.robots, i);
    Actuation raw = controllers[i]->step(readings, world.rng);
    try {
      acts[i] = clamp_actuation(raw);
    } catch (const InvalidActuationError&) {
      throw ControllerFaultError("controller returned non-finite actuation");
    }
    latched[i] = controllers[i]->halt_latched() ? 1 : 0;
  }

  for (std::size_t i = 0; i < n; ++i) {
    RobotBody& body = world.robots[i];
    if (body.halted) continue;
    body.led = acts[i].led;
    if (latched[i]) {
      body.halted = true;
      body.led = ColorSignal::kNone;
      continue;
    }
    integrate(body, acts[i]);
  }
  resolve_collisions(world);
  ++world.tick;
}

EpisodeResult run_episode(const ScenarioSpec& scenario, const ShepherdSpec& shepherd_spec,
                          std::uint64_t seed, const TraceSink& trace) {
  return run_episode_with(
      scenario, [&shepherd_spec](int) { return make_controller(shepherd_spec); }, seed, trace);
}

EpisodeResult run_episode_with(const ScenarioSpec& scenario, const ShepherdFactory& factory,
                               std::uint64_t seed, const TraceSink& trace) {
  WorldState world = init_episode(scenario, seed);
  std::vector<std::unique_ptr<Controller>> controllers;
  controllers.reserve(world.robots.size());
  for (int i = 0; i < scenario.n_shepherds; ++i) controllers.push_back(factory(i));
  for (int i = 0; i < scenario.n_sheep; ++i) {
    controllers.push_back(std::make_unique<SheepController>(scenario.sheep_variant));
  }

  EpisodeResult result;
  result.seed = seed;
  if (trace) trace(0, world);
  for (int t = 0; t < scenario.duration_cycles; ++t) {
    try {
      step(world, controllers);
    } catch (const ControllerFaultError&) {
      result.objective = scenario.worst_objective();
      result.final_sheep_positions = world.sheep_positions();
      return result;
    }
    if (trace) trace(world.tick, world);
  }
  result.final_sheep_positions = world.sheep_positions();
  result.objective = mission_objective(scenario, result.final_sheep_positions);
  return result;
}

}  // namespace herd
