// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Criterion 7 replays the full scaled comparison campaign and dominates the
// runtime (a few hundred thousand simulated episodes).

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fmt/format.h"
#include "herd/campaign.hpp"
#include "herd/errors.hpp"

using namespace herd;
namespace fs = std::filesystem;

namespace {

unsigned g_threads = 0;
fs::path g_work_dir;

struct CriterionResult {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool strictly_better(double a, double b, ObjectiveSense sense) {
  return sense == ObjectiveSense::kMinimize ? a < b : a > b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion 1: objective oracles ---------------------------------------

double oracle_spread(const std::vector<Vec2>& pts) {
  long double cx = 0.0L;
  long double cy = 0.0L;
  for (const Vec2& p : pts) {
    cx += p.x;
    cy += p.y;
  }
  cx /= pts.size();
  cy /= pts.size();
  long double total = 0.0L;
  for (const Vec2& p : pts) {
    const long double dx = p.x - cx;
    const long double dy = p.y - cy;
    total += std::sqrt(static_cast<double>(dx * dx + dy * dy));
  }
  return static_cast<double>(total / pts.size());
}

int oracle_outside(const std::vector<Vec2>& pts, const std::vector<CircleRegion>& regions) {
  int outside = 0;
  for (const Vec2& p : pts) {
    bool in = false;
    for (const CircleRegion& r : regions) {
      const double dx = p.x - r.center.x;
      const double dy = p.y - r.center.y;
      if (dx * dx + dy * dy <= r.radius * r.radius) in = true;
    }
    if (!in) ++outside;
  }
  return outside;
}

CriterionResult criterion_objective_oracles() {
  CriterionResult res;
  const auto start = std::chrono::steady_clock::now();

  RngStream rng(1001);
  const std::vector<CircleRegion> regions =
      build_scenario(Mission::kHerding, SheepVariant::kC1Attraction).arena.regions;
  double max_err = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    max_err = std::max(max_err, std::abs(f1_centroid_spread(pts) - oracle_spread(pts)));
    res.require(f2_sheep_outside(pts, regions) == oracle_outside(pts, regions),
                "F2 disagrees with the brute-force oracle");
  }
  res.require(max_err <= 1e-12, fmt::format("F1 max error {} above 1e-12", max_err));

  res.require(f1_centroid_spread(std::vector<Vec2>(10, Vec2{0.3, -0.7})) == 0.0,
              "coincident sheep must have zero spread");
  std::vector<Vec2> split;
  for (int i = 0; i < 5; ++i) split.push_back({-1.0, 0.0});
  for (int i = 0; i < 5; ++i) split.push_back({1.0, 0.0});
  res.require(f1_centroid_spread(split) == 1.0, "symmetric split must score exactly 1");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.require(elapsed < 1.0, fmt::format("runtime {:.3f}s above 1s", elapsed));
  res.detail = fmt::format("1000 configurations, F1 max err {:.2e}, {:.2f}s", max_err, elapsed);
  return res;
}

// ---- criterion 2: interface conformance ------------------------------------

CriterionResult criterion_rm3_conformance() {
  CriterionResult res;
  res.require(kNnInputCount == 24 && kNnOutputCount == 8 && kNnWeightCount == 192,
              "network shape must be 24 inputs, 8 outputs, 192 weights");
  bool rejected = false;
  try {
    NnGenome(std::vector<double>(191, 0.0));
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  res.require(rejected, "191 weights must be rejected");

  // Every controller route respects the actuator range.
  RngStream rng(2002);
  SensorReadings r;
  double worst = 0.0;
  for (int trial = 0; trial < 5000; ++trial) {
    for (double& p : r.prox) p = rng.uniform();
    for (auto& g : r.gnd) g = static_cast<FloorColor>(rng.uniform_int(3));
    for (int c = 0; c < 3; ++c) {
      r.cam[c] = rng.bernoulli(0.5);
      r.v_color[c] = {r.cam[c], rng.uniform(0.0, kTau), r.cam[c] ? 1.0 : 0.0};
    }
    Actuation a;
    switch (trial % 3) {
      case 0: {
        const PfsmConfig cfg = sample_pfsm(rng);
        PfsmExecState exec;
        a = pfsm_step(cfg, exec, r, rng);
        break;
      }
      case 1: a = forward(random_genome(rng), encode_inputs(r)); break;
      default: {
        SheepController sheep(SheepVariant::kC3AttractionRepulsion);
        a = sheep.step(r, rng);
        break;
      }
    }
    worst = std::max({worst, std::abs(a.v_left), std::abs(a.v_right)});
  }
  res.require(worst <= kMaxWheelSpeed + 1e-12,
              fmt::format("actuation magnitude {} exceeds 0.12", worst));

  // Camera boundary at 0.40 m, center distance.
  std::vector<RobotBody> pair(2);
  pair[1].led = ColorSignal::kMagenta;
  std::array<bool, 3> cam;
  std::array<ColorDirection, 3> v;
  pair[1].pose = {0.40, 0.0, 0.0};
  sense_camera(pair, 0, cam, v);
  res.require(cam[1], "robot at exactly 0.40 m must be perceived");
  pair[1].pose = {0.4000001, 0.0, 0.0};
  sense_camera(pair, 0, cam, v);
  res.require(!cam[1], "robot beyond 0.40 m must be invisible");

  // Proximity boundary at 0.03 m, surface distance.
  const ArenaSpec arena = arena_regular_octagon(2.8);
  const double a0 = kProxSensorAngles[0];
  std::vector<RobotBody> prox_pair(2);
  prox_pair[1].pose = {(2 * kRobotRadius + 0.03) * std::cos(a0),
                       (2 * kRobotRadius + 0.03) * std::sin(a0), 0.0};
  auto prox = sense_proximity(arena, prox_pair, 0);
  res.require(std::all_of(prox.begin(), prox.end(), [](double p) { return p == 0.0; }),
              "obstacle at 0.03 m surface distance must read zero");
  prox_pair[1].pose = {(2 * kRobotRadius + 0.0299) * std::cos(a0),
                       (2 * kRobotRadius + 0.0299) * std::sin(a0), 0.0};
  prox = sense_proximity(arena, prox_pair, 0);
  res.require(prox[0] > 0.0, "obstacle just inside 0.03 m must register");
  res.detail = fmt::format("worst |v| = {:.4f} over 5000 mixed actuations", worst);
  return res;
}

// ---- criterion 3: PFSM structural suite ------------------------------------

CriterionResult criterion_pfsm_structure() {
  CriterionResult res;
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(3003);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const PfsmConfig cfg = sample_pfsm(rng);
    try {
      cfg.validate();
      ++checked;
    } catch (const FormatError& e) {
      res.require(false, fmt::format("sampled machine invalid: {}", e.what()));
    }
  }
  PfsmConfig cfg = sample_pfsm(rng);
  for (int i = 0; i < 10000; ++i) {
    cfg = mutate_pfsm(cfg, rng);
    try {
      cfg.validate();
      ++checked;
    } catch (const FormatError& e) {
      res.require(false, fmt::format("mutated machine invalid: {}", e.what()));
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.require(elapsed < 5.0, fmt::format("runtime {:.2f}s above 5s", elapsed));
  res.detail = fmt::format("{} machines validated in {:.2f}s", checked, elapsed);
  return res;
}

// ---- criterion 4: sheep passivity and capture -------------------------------

CriterionResult criterion_sheep_passivity() {
  CriterionResult res;
  const SheepVariant variants[] = {SheepVariant::kC1Attraction, SheepVariant::kC2Repulsion,
                                   SheepVariant::kC3AttractionRepulsion};
  int episodes = 0;
  for (std::uint64_t seed = 0; episodes < 100; ++seed) {
    for (Mission m : {Mission::kAggregation, Mission::kDispersion, Mission::kHerding}) {
      if (episodes >= 100) break;
      ScenarioSpec s = build_scenario(m, variants[seed % 3]);
      if (m == Mission::kHerding) s.arena.regions.clear();  // no white floor underfoot
      s.n_shepherds = 0;
      WorldState world = init_episode(s, seed);
      const std::vector<RobotBody> start = world.robots;
      std::vector<std::unique_ptr<Controller>> ctrl;
      for (int i = 0; i < s.n_sheep; ++i) {
        ctrl.push_back(std::make_unique<SheepController>(s.sheep_variant));
      }
      for (int t = 0; t < 1200; ++t) step(world, ctrl);
      for (int i = 0; i < s.n_sheep; ++i) {
        const bool same = world.robots[i].pose.x == start[i].pose.x &&
                          world.robots[i].pose.y == start[i].pose.y &&
                          world.robots[i].pose.heading == start[i].pose.heading;
        res.require(same, fmt::format("sheep {} moved in shepherd-free episode (seed {})",
                                      i, seed));
      }
      ++episodes;
    }
  }

  // Capture: a sheep standing on white floor halts to the end.
  ScenarioSpec herding = build_scenario(Mission::kHerding, SheepVariant::kC1Attraction);
  WorldState world = init_episode(herding, 12345);
  std::vector<std::unique_ptr<Controller>> ctrl;
  for (int i = 0; i < 5; ++i) {
    ctrl.push_back(make_controller(RwalkSpec{}));
  }
  for (int i = 0; i < 10; ++i) {
    ctrl.push_back(std::make_unique<SheepController>(herding.sheep_variant));
  }
  world.robots[5].pose = {herding.arena.regions[0].center.x,
                          herding.arena.regions[0].center.y, 1.0};
  step(world, ctrl);
  res.require(world.robots[5].halted, "sheep on white floor must halt");
  const Pose frozen = world.robots[5].pose;
  for (int t = 1; t < 1200; ++t) step(world, ctrl);
  res.require(world.robots[5].halted && world.robots[5].led == ColorSignal::kNone,
              "halted sheep must stay halted with LEDs off");
  res.require(world.robots[5].pose.x == frozen.x && world.robots[5].pose.y == frozen.y &&
                  world.robots[5].pose.heading == frozen.heading,
              "halted sheep must not move");
  res.detail = fmt::format("{} shepherd-free episodes, 1 capture episode", episodes);
  return res;
}

// ---- criterion 5: determinism -----------------------------------------------

bool identical_results(const EpisodeResult& a, const EpisodeResult& b) {
  if (std::bit_cast<std::uint64_t>(a.objective) != std::bit_cast<std::uint64_t>(b.objective) ||
      a.seed != b.seed || a.final_sheep_positions.size() != b.final_sheep_positions.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.final_sheep_positions.size(); ++i) {
    if (std::memcmp(&a.final_sheep_positions[i], &b.final_sheep_positions[i], sizeof(Vec2)) !=
        0) {
      return false;
    }
  }
  return true;
}

CriterionResult criterion_determinism() {
  CriterionResult res;
  RngStream rng(5005);
  const ScenarioSpec s = build_scenario(Mission::kHerding, SheepVariant::kC3AttractionRepulsion);
  const ShepherdSpec specs[] = {ShepherdSpec{RwalkSpec{}}, ShepherdSpec{sample_pfsm(rng)},
                                ShepherdSpec{random_genome(rng)}};
  for (const ShepherdSpec& spec : specs) {
    const EpisodeResult a = run_episode(s, spec, 987654321);
    const EpisodeResult b = run_episode(s, spec, 987654321);
    res.require(identical_results(a, b), "repeated episode differs bitwise");
  }

  // Campaign CSV: two runs, single- versus multi-threaded.
  CampaignConfig config;
  config.master_seed = 20240915;
  config.scenarios = {{Mission::kAggregation, SheepVariant::kC1Attraction},
                      {Mission::kDispersion, SheepVariant::kC2Repulsion}};
  config.methods = {{DesignMethod::kRwalk, 1, 3, 0, ""}};

  const fs::path dir1 = g_work_dir / "det_t1";
  const fs::path dir4 = g_work_dir / "det_t4";
  fs::remove_all(dir1);
  fs::remove_all(dir4);
  config.output_dir = dir1.string();
  config.threads = 1;
  run_campaign(config);
  config.output_dir = dir4.string();
  config.threads = 4;
  run_campaign(config);
  const std::string csv1 = slurp(dir1 / "observations.csv");
  const std::string csv4 = slurp(dir4 / "observations.csv");
  res.require(!csv1.empty() && csv1 == csv4,
              "campaign CSV differs between 1-thread and 4-thread runs");
  res.detail = "3 controller routes bitwise stable; CSV equal for 1 vs 4 threads";
  return res;
}

// ---- criterion 6: budget exactness ------------------------------------------

CriterionResult criterion_budget_exactness() {
  CriterionResult res;
  const ScenarioSpec s = build_scenario(Mission::kAggregation, SheepVariant::kC1Attraction);

  {
    Budget budget(2000);
    long episodes = 0;
    auto inner = make_pfsm_sim_evaluator(s, budget, g_threads);
    auto counting = [&](const std::vector<PfsmConfig>& c, const std::vector<std::uint64_t>& sd) {
      episodes += static_cast<long>(c.size());
      return inner(c, sd);
    };
    (void)iterated_race(s.sense(), budget, 66, counting);
    res.require(episodes <= 2000, fmt::format("racing ran {} episodes over budget", episodes));
    res.require(static_cast<std::uint64_t>(episodes) == budget.consumed(),
                "episode count must equal the budget's consumed counter");
    res.detail = fmt::format("racing consumed {} of 2000", episodes);
  }
  {
    Budget budget(2000);
    long episodes = 0;
    auto inner = make_nn_sim_evaluator(s, budget, g_threads);
    auto counting = [&](const std::vector<NnGenome>& c, const std::vector<std::uint64_t>& sd) {
      episodes += static_cast<long>(c.size());
      return inner(c, sd);
    };
    (void)evolve(s.sense(), budget, 66, counting);
    res.require(episodes == 2000, fmt::format("evolution ran {} episodes, expected 2000",
                                              episodes));
    res.require(budget.consumed() == 2000, "budget must record exactly 2000 episodes");
    res.detail += fmt::format("; evolution consumed {} of 2000", episodes);
  }
  return res;
}

// ---- criterion 7: scaled ordinal reproduction -------------------------------

CriterionResult criterion_ordinal_reproduction() {
  CriterionResult res;
  const auto start = std::chrono::steady_clock::now();

  CampaignConfig config;
  config.master_seed = 77007;
  config.output_dir = (g_work_dir / "ordinal").string();
  config.threads = g_threads;
  for (Mission m : {Mission::kAggregation, Mission::kDispersion, Mission::kHerding}) {
    for (SheepVariant v : {SheepVariant::kC1Attraction, SheepVariant::kC2Repulsion,
                           SheepVariant::kC3AttractionRepulsion}) {
      config.scenarios.push_back({m, v});
    }
  }
  config.methods = {{DesignMethod::kPistacchio, 3, 1, 5000, ""},
                    {DesignMethod::kEvoCmy, 3, 1, 5000, ""},
                    {DesignMethod::kRwalk, 1, 3, 0, ""}};

  const std::vector<Observation> observations = run_campaign(config);

  int pistacchio_wins = 0;
  int evocmy_wins = 0;
  std::printf("    %-16s %-6s %10s %10s %10s\n", "scenario", "sense", "pistacchio", "evocmy",
              "rwalk");
  for (const ScenarioId& id : config.scenarios) {
    std::vector<double> by_method[3];
    for (const Observation& o : observations) {
      if (o.mission != id.mission || o.sheep != id.sheep) continue;
      if (o.method == "pistacchio") by_method[0].push_back(o.objective);
      if (o.method == "evocmy") by_method[1].push_back(o.objective);
      if (o.method == "rwalk") by_method[2].push_back(o.objective);
    }
    const ObjectiveSense sense =
        id.mission == Mission::kDispersion ? ObjectiveSense::kMaximize
                                           : ObjectiveSense::kMinimize;
    const double med_p = median(by_method[0]);
    const double med_e = median(by_method[1]);
    const double med_r = median(by_method[2]);
    if (strictly_better(med_p, med_r, sense)) ++pistacchio_wins;
    if (strictly_better(med_e, med_r, sense)) ++evocmy_wins;
    std::printf("    %-10s %-5s %-6s %10.4f %10.4f %10.4f\n",
                std::string(to_string(id.mission)).c_str(),
                std::string(to_string(id.sheep)).c_str(),
                std::string(to_string(sense)).c_str(), med_p, med_e, med_r);
  }
  res.require(pistacchio_wins >= 7,
              fmt::format("pistacchio beats rwalk in only {}/9 scenarios", pistacchio_wins));
  res.require(evocmy_wins >= 7,
              fmt::format("evocmy beats rwalk in only {}/9 scenarios", evocmy_wins));

  const RankSummary summary = summarize_observations(observations);
  std::size_t rwalk_idx = 0;
  for (std::size_t i = 0; i < summary.methods.size(); ++i) {
    if (summary.methods[i].method == "rwalk") rwalk_idx = i;
    std::printf("    rank %-12s %.3f  [%.3f, %.3f]\n", summary.methods[i].method.c_str(),
                summary.methods[i].mean_rank, summary.methods[i].ci_lower,
                summary.methods[i].ci_upper);
  }
  for (std::size_t i = 0; i < summary.methods.size(); ++i) {
    if (i == rwalk_idx) continue;
    res.require(summary.methods[rwalk_idx].mean_rank > summary.methods[i].mean_rank,
                fmt::format("rwalk must rank behind {}", summary.methods[i].method));
    res.require(summary.methods[i].ci_upper < summary.methods[rwalk_idx].ci_lower,
                fmt::format("rwalk interval must be disjoint from {}",
                            summary.methods[i].method));
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.detail = fmt::format("pistacchio {}/9, evocmy {}/9 scenarios; {:.1f} min", pistacchio_wins,
                           evocmy_wins, elapsed / 60.0);
  return res;
}

// ---- criterion 8: Friedman implementation check ------------------------------

CriterionResult criterion_friedman_check() {
  CriterionResult res;
  std::vector<std::vector<double>> perfect(10, {1.0, 2.0, 3.0});
  const double statistic = friedman_statistic(perfect);
  res.require(statistic == 20.0, fmt::format("perfect 3x10 statistic is {}, expected 20",
                                             statistic));
  res.require(statistic > chi_squared_quantile(0.95, 2), "statistic 20 must reject at 0.05");

  std::vector<std::vector<double>> equal_scores(3, std::vector<double>(10, 1.0));
  res.require(friedman_statistic(std::vector<std::vector<double>>(10, {2.0, 2.0, 2.0})) == 0.0,
              "all-equal matrix must yield statistic 0");
  const auto survivors = friedman_eliminate(equal_scores, 0.05, ObjectiveSense::kMinimize);
  res.require(survivors.size() == 3, "all-equal scores must eliminate nobody");
  res.detail = fmt::format("statistic(perfect) = {}, chi2(0.95, 2) = {:.3f}", statistic,
                           chi_squared_quantile(0.95, 2));
  return res;
}

struct Criterion {
  int id;
  const char* name;
  std::function<CriterionResult()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  g_work_dir = fs::temp_directory_path() / "herd_acceptance";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) {
      g_threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.push_back(std::atoi(tok.c_str()));
    } else if (arg == "--work-dir" && i + 1 < argc) {
      g_work_dir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--threads N] [--only 1,2,...] [--work-dir DIR]\n",
                   argv[0]);
      return 2;
    }
  }
  fs::create_directories(g_work_dir);

  const std::vector<Criterion> criteria = {
      {1, "objective oracles (F1/F2 vs brute force)", criterion_objective_oracles},
      {2, "robot interface conformance", criterion_rm3_conformance},
      {3, "PFSM structural bounds", criterion_pfsm_structure},
      {4, "sheep passivity and white-floor capture", criterion_sheep_passivity},
      {5, "bitwise determinism (episodes and campaign CSV)", criterion_determinism},
      {6, "episode budget exactness", criterion_budget_exactness},
      {7, "scaled ordinal reproduction vs rwalk", criterion_ordinal_reproduction},
      {8, "Friedman statistic hand checks", criterion_friedman_check},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = fmt::format("exception: {}", e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", result.pass ? "PASS" : "FAIL", c.id,
                c.name, elapsed, result.detail.empty() ? "" : " -- ",
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  return failures;
}
