// Command-line front end: design controllers, assess them, rank methods,
// trace episodes, and drive full campaigns.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "herd/campaign.hpp"
#include "herd/errors.hpp"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;
using namespace herd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitBudgetOrIo = 3;

struct ScenarioArgs {
  std::string mission;
  std::string sheep;

  ScenarioSpec build() const {
    return build_scenario(mission_from_string(mission), sheep_variant_from_string(sheep));
  }
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
  cmd->add_option("--mission", args.mission, "aggregation | dispersion | herding")->required();
  cmd->add_option("--sheep", args.sheep, "c1 | c2 | c3")->required();
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_design(const std::string& method_name, const ScenarioArgs& scenario_args,
               std::uint64_t budget, std::uint64_t seed, const std::string& out_dir,
               unsigned threads) {
  const DesignMethod method = design_method_from_string(method_name);
  if (method != DesignMethod::kPistacchio && method != DesignMethod::kEvoCmy) {
    throw FormatError("design supports the automatic methods: pistacchio, evocmy");
  }
  const ScenarioSpec scenario = scenario_args.build();
  fs::create_directories(out_dir);
  std::string manifest;
  const ShepherdSpec spec =
      design_controller(method, scenario, budget, seed, threads, &manifest);
  const std::string stem = fmt::format("{}_{}_{}_s{}", method_name, scenario_args.mission,
                                       scenario_args.sheep, seed);
  const fs::path controller_path = fs::path(out_dir) / (stem + ".json");
  write_text(controller_path, controller_to_json(spec));
  nlohmann::json mj = nlohmann::json::parse(manifest);
  mj["controller_file"] = controller_path.string();
  write_text(fs::path(out_dir) / (stem + ".manifest.json"), mj.dump(2));
  std::printf("%s\n", controller_path.string().c_str());
  return kExitOk;
}

int run_assess(const std::string& controller, const ScenarioArgs& scenario_args, int n,
               std::uint64_t seed, unsigned threads, const std::string& out_file) {
  const ShepherdSpec spec = controller_from_file(controller);
  const ScenarioSpec scenario = scenario_args.build();
  const std::vector<EpisodeResult> results = assess(spec, scenario, n, seed, threads);

  std::vector<Observation> observations;
  const std::string method = controller == "rwalk" ? "rwalk" : fs::path(controller).stem().string();
  for (int i = 0; i < n; ++i) {
    observations.push_back({method, scenario.mission, scenario.sheep_variant, 0,
                            results[i].seed, results[i].objective, scenario.sense()});
  }
  const std::string csv = observations_to_csv(observations);
  if (out_file.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text(out_file, csv);
  }
  return kExitOk;
}

int run_stats(const std::string& input, double alpha) {
  const std::vector<Observation> observations = observations_from_csv(read_text(input));
  const RankSummary summary = summarize_observations(observations, alpha);
  std::printf("blocks: %zu   Friedman statistic: %.4f   significant at alpha=%.2g: %s\n",
              summary.block_count, summary.statistic, alpha,
              summary.significant ? "yes" : "no");
  std::printf("%-20s %12s %22s\n", "method", "mean rank", "confidence interval");
  for (const MethodRank& m : summary.methods) {
    std::printf("%-20s %12.4f        [%.4f, %.4f]\n", m.method.c_str(), m.mean_rank, m.ci_lower,
                m.ci_upper);
  }
  for (const auto& [a, b] : summary.significant_pairs) {
    std::printf("difference: %s vs %s (disjoint intervals)\n",
                summary.methods[a].method.c_str(), summary.methods[b].method.c_str());
  }
  return kExitOk;
}

int run_trace(const std::string& controller, const ScenarioArgs& scenario_args,
              std::uint64_t seed, const std::string& out_file) {
  const ShepherdSpec spec = controller_from_file(controller);
  const ScenarioSpec scenario = scenario_args.build();
  std::string csv = "tick,robot,x,y,heading,led\r\n";
  run_episode(scenario, spec, seed, [&](long tick, const WorldState& world) {
    for (std::size_t i = 0; i < world.robots.size(); ++i) {
      const RobotBody& r = world.robots[i];
      csv += fmt::format("{},{},{},{},{},{}\r\n", tick, i, r.pose.x, r.pose.y, r.pose.heading,
                         to_string(r.led));
    }
  });
  write_text(out_file, csv);
  std::printf("%s\n", out_file.c_str());
  return kExitOk;
}

int run_campaign_cmd(const std::string& config_file, unsigned threads_override) {
  CampaignConfig config = campaign_config_from_json(read_text(config_file));
  if (threads_override > 0) config.threads = threads_override;
  const std::vector<Observation> observations = run_campaign(config);
  std::printf("%zu observations written to %s\n", observations.size(),
              (fs::path(config.output_dir) / "observations.csv").string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shepherd-swarm design workbench"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // design
  auto* design = app.add_subcommand("design", "run one automatic design");
  std::string design_method;
  ScenarioArgs design_scenario;
  std::uint64_t design_budget = 100000;
  std::uint64_t design_seed = 1;
  std::string design_out = ".";
  design->add_option("--method", design_method, "pistacchio | evocmy")->required();
  add_scenario_options(design, design_scenario);
  design->add_option("--budget", design_budget, "episode budget (>= 1000)");
  design->add_option("--seed", design_seed, "master seed")->required();
  design->add_option("--out", design_out, "output directory")->required();

  // assess
  auto* assess_cmd = app.add_subcommand("assess", "evaluate a controller file");
  std::string assess_controller;
  ScenarioArgs assess_scenario;
  int assess_n = 10;
  std::uint64_t assess_seed = 1;
  std::string assess_out;
  assess_cmd->add_option("--controller", assess_controller,
                         "controller JSON file, or the baseline name 'rwalk'")
      ->required();
  add_scenario_options(assess_cmd, assess_scenario);
  assess_cmd->add_option("-n", assess_n, "number of assessment episodes");
  assess_cmd->add_option("--seed", assess_seed, "base seed")->required();
  assess_cmd->add_option("--out", assess_out, "CSV output file (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "rank methods from an observations CSV");
  std::string stats_input;
  double stats_alpha = 0.05;
  stats->add_option("--input", stats_input, "observations CSV")->required();
  stats->add_option("--alpha", stats_alpha, "significance level");

  // trace
  auto* trace = app.add_subcommand("trace", "write a per-cycle pose trace");
  std::string trace_controller;
  ScenarioArgs trace_scenario;
  std::uint64_t trace_seed = 1;
  std::string trace_out;
  trace->add_option("--controller", trace_controller, "controller file or 'rwalk'")->required();
  add_scenario_options(trace, trace_scenario);
  trace->add_option("--seed", trace_seed, "episode seed")->required();
  trace->add_option("--out", trace_out, "trace CSV path")->required();

  // campaign
  auto* campaign = app.add_subcommand("campaign", "run a full campaign from a config file");
  std::string campaign_config;
  campaign->add_option("--config", campaign_config, "campaign JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (design->parsed()) {
      return run_design(design_method, design_scenario, design_budget, design_seed, design_out,
                        threads);
    }
    if (assess_cmd->parsed()) {
      return run_assess(assess_controller, assess_scenario, assess_n, assess_seed, threads,
                        assess_out);
    }
    if (stats->parsed()) return run_stats(stats_input, stats_alpha);
    if (trace->parsed()) {
      return run_trace(trace_controller, trace_scenario, trace_seed, trace_out);
    }
    if (campaign->parsed()) return run_campaign_cmd(campaign_config, threads);
  } catch (const FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidConfig;
  } catch (const BudgetExhaustedError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudgetOrIo;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudgetOrIo;
  } catch (const HerdError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
