#include "herd/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fmt/format.h"
#include "herd/parallel.hpp"
#include "nlohmann/json.hpp"

namespace herd {

namespace fs = std::filesystem;

namespace {

std::uint64_t scenario_code(Mission m, SheepVariant v) {
  return static_cast<std::uint64_t>(m) * 3 + static_cast<std::uint64_t>(v);
}

std::string scenario_slug(const ScenarioId& id) {
  return fmt::format("{}_{}", to_string(id.mission), to_string(id.sheep));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

// Adds the written controller path into a design manifest document.
std::string manifest_with_controller(const std::string& manifest_json, const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(manifest_json);
  j["controller_file"] = path;
  return j.dump(2);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Minimal RFC 4180 reader; accepts both CRLF and LF records.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        break;
      case '\r': break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        break;
      default: field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

int observations_per_scenario(const MethodConfig& m) {
  return m.designs_per_scenario * m.assessments_per_design;
}

std::uint64_t method_stream(std::uint64_t master, const MethodConfig& m) {
  return derive_seed(master, to_string(m.method));
}

}  // namespace

std::string_view to_string(DesignMethod m) {
  switch (m) {
    case DesignMethod::kPistacchio: return "pistacchio";
    case DesignMethod::kEvoCmy: return "evocmy";
    case DesignMethod::kRwalk: return "rwalk";
    case DesignMethod::kFileController: return "file-controller";
  }
  return "rwalk";
}

DesignMethod design_method_from_string(std::string_view s) {
  if (s == "pistacchio") return DesignMethod::kPistacchio;
  if (s == "evocmy") return DesignMethod::kEvoCmy;
  if (s == "rwalk") return DesignMethod::kRwalk;
  if (s == "file-controller") return DesignMethod::kFileController;
  throw FormatError("unknown design method: " + std::string(s));
}

void CampaignConfig::validate() const {
  if (methods.empty()) throw FormatError("campaign config lists no methods");
  if (scenarios.empty()) throw FormatError("campaign config lists no scenarios");
  const int observations = observations_per_scenario(methods.front());
  for (const MethodConfig& m : methods) {
    if (m.designs_per_scenario < 1 || m.assessments_per_design < 1) {
      throw FormatError("designs and assessments must be positive");
    }
    if (observations_per_scenario(m) != observations) {
      throw FormatError("methods must yield equal observation counts per scenario");
    }
    const bool automatic =
        m.method == DesignMethod::kPistacchio || m.method == DesignMethod::kEvoCmy;
    if (automatic && m.budget < 1000) {
      throw FormatError("automatic methods need a budget of at least 1000 episodes");
    }
    if (m.method == DesignMethod::kFileController && m.controller_dir.empty()) {
      throw FormatError("file-controller method needs controller_dir");
    }
  }
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (std::size_t j = i + 1; j < scenarios.size(); ++j) {
      if (scenarios[i] == scenarios[j]) throw FormatError("duplicate scenario in config");
    }
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      if (methods[i].method == methods[j].method) {
        throw FormatError("duplicate method in config");
      }
    }
  }
  if (output_dir.empty()) throw FormatError("campaign config needs an output_dir");
}

std::string campaign_config_to_json(const CampaignConfig& config) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["type"] = "campaign";
  j["master_seed"] = config.master_seed;
  j["output_dir"] = config.output_dir;
  j["threads"] = config.threads;
  auto& scenarios = j["scenarios"] = nlohmann::json::array();
  for (const ScenarioId& s : config.scenarios) {
    scenarios.push_back({{"mission", std::string(to_string(s.mission))},
                         {"sheep", std::string(to_string(s.sheep))}});
  }
  auto& methods = j["methods"] = nlohmann::json::array();
  for (const MethodConfig& m : config.methods) {
    nlohmann::json mj;
    mj["name"] = std::string(to_string(m.method));
    mj["designs_per_scenario"] = m.designs_per_scenario;
    mj["assessments_per_design"] = m.assessments_per_design;
    if (m.budget > 0) mj["budget"] = m.budget;
    if (!m.controller_dir.empty()) mj["controller_dir"] = m.controller_dir;
    methods.push_back(std::move(mj));
  }
  return j.dump(2);
}

CampaignConfig campaign_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("campaign JSON parse failure: ") + e.what());
  }
  CampaignConfig config;
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw FormatError("unsupported campaign format_version");
    }
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    config.output_dir = j.at("output_dir").get<std::string>();
    config.threads = j.value("threads", 0u);
    for (const auto& s : j.at("scenarios")) {
      config.scenarios.push_back({mission_from_string(s.at("mission").get<std::string>()),
                                  sheep_variant_from_string(s.at("sheep").get<std::string>())});
    }
    for (const auto& m : j.at("methods")) {
      MethodConfig mc;
      mc.method = design_method_from_string(m.at("name").get<std::string>());
      mc.designs_per_scenario = m.value("designs_per_scenario", 1);
      mc.assessments_per_design = m.value("assessments_per_design", 1);
      mc.budget = m.value("budget", std::uint64_t{0});
      mc.controller_dir = m.value("controller_dir", std::string{});
      config.methods.push_back(std::move(mc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("campaign JSON field error: ") + e.what());
  }
  config.validate();
  return config;
}

std::string observations_to_csv(std::span<const Observation> observations) {
  std::string out = "method,mission,sheep,design_idx,seed,objective,sense\r\n";
  for (const Observation& o : observations) {
    out += fmt::format("{},{},{},{},{},{},{}\r\n", csv_field(o.method), to_string(o.mission),
                       to_string(o.sheep), o.design_idx, o.seed, o.objective,
                       to_string(o.sense));
  }
  return out;
}

std::vector<Observation> observations_from_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw FormatError("empty observations CSV");
  const std::vector<std::string> header = {"method", "mission", "sheep",
                                           "design_idx", "seed", "objective", "sense"};
  if (rows.front() != header) throw FormatError("unexpected observations CSV header");
  std::vector<Observation> observations;
  observations.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw FormatError(fmt::format("observations CSV row {} has {} fields", r, row.size()));
    }
    try {
      Observation o;
      o.method = row[0];
      o.mission = mission_from_string(row[1]);
      o.sheep = sheep_variant_from_string(row[2]);
      o.design_idx = std::stoi(row[3]);
      o.seed = std::stoull(row[4]);
      o.objective = std::stod(row[5]);
      o.sense = sense_from_string(row[6]);
      observations.push_back(std::move(o));
    } catch (const std::logic_error& e) {
      throw FormatError(fmt::format("observations CSV row {}: {}", r, e.what()));
    }
  }
  return observations;
}

ShepherdSpec controller_from_file(const std::string& path_or_name) {
  if (path_or_name == "rwalk") return RwalkSpec{};
  const std::string text = read_file(path_or_name);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("controller JSON parse failure: ") + e.what());
  }
  std::string type;
  try {
    type = j.at("type").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("controller file lacks a type field");
  }
  if (type == "pfsm") return pfsm_from_json(text);
  if (type == "nn") return nn_from_json(text);
  if (type == "rwalk") return RwalkSpec{};
  throw FormatError("unknown controller type: " + type);
}

std::string controller_to_json(const ShepherdSpec& spec) {
  if (const auto* pfsm = std::get_if<PfsmConfig>(&spec)) return pfsm_to_json(*pfsm);
  if (const auto* genome = std::get_if<NnGenome>(&spec)) return nn_to_json(*genome);
  nlohmann::json j;
  j["format_version"] = 1;
  j["type"] = "rwalk";
  return j.dump(2);
}

ShepherdSpec design_controller(DesignMethod method, const ScenarioSpec& scenario,
                               std::uint64_t budget_episodes, std::uint64_t seed,
                               unsigned threads, std::string* manifest_json) {
  const auto started = std::chrono::steady_clock::now();
  nlohmann::json manifest;
  manifest["format_version"] = 1;
  manifest["type"] = "design_manifest";
  manifest["method"] = std::string(to_string(method));
  manifest["mission"] = std::string(to_string(scenario.mission));
  manifest["sheep"] = std::string(to_string(scenario.sheep_variant));
  manifest["seed"] = seed;
  manifest["budget"] = budget_episodes;
  auto& iterations = manifest["iterations"] = nlohmann::json::array();

  Budget budget(budget_episodes);
  ShepherdSpec result = RwalkSpec{};
  switch (method) {
    case DesignMethod::kPistacchio: {
      const RaceOptions options;
      manifest["options"] = {{"generation_size", options.generation_size},
                             {"planned_iterations", options.planned_iterations},
                             {"elite_count", options.elite_count},
                             {"min_instances_before_test", options.min_instances_before_test},
                             {"alpha", options.alpha}};
      auto evaluator = make_pfsm_sim_evaluator(scenario, budget, threads);
      result = iterated_race(scenario.sense(), budget, seed, evaluator, options,
                             [&](const RaceIterationReport& r) {
                               iterations.push_back({{"iteration", r.iteration},
                                                     {"instances", r.instances_completed},
                                                     {"survivors", r.survivors},
                                                     {"best_score", r.best_mean_objective},
                                                     {"consumed", r.consumed_after}});
                             });
      break;
    }
    case DesignMethod::kEvoCmy: {
      const EvoOptions options;
      manifest["options"] = {{"population_size", options.population_size},
                             {"elite_count", options.elite_count},
                             {"episodes_per_individual", options.episodes_per_individual}};
      auto evaluator = make_nn_sim_evaluator(scenario, budget, threads);
      result = evolve(scenario.sense(), budget, seed, evaluator, options,
                      [&](const GenerationReport& r) {
                        iterations.push_back({{"generation", r.generation},
                                              {"best_score", r.best_fitness},
                                              {"consumed", r.consumed_after}});
                      });
      break;
    }
    case DesignMethod::kRwalk:
      result = RwalkSpec{};
      break;
    case DesignMethod::kFileController:
      throw std::invalid_argument("file controllers are loaded, not designed");
  }

  manifest["consumed"] = budget.consumed();
  manifest["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (manifest_json != nullptr) *manifest_json = manifest.dump(2);
  return result;
}

std::vector<EpisodeResult> assess(const ShepherdSpec& spec, const ScenarioSpec& scenario, int n,
                                  std::uint64_t seed, unsigned threads) {
  std::vector<EpisodeResult> results(n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    results[i] = run_episode(scenario, spec, derive_seed(seed, "assess", i));
  });
  return results;
}

std::vector<Observation> run_campaign(const CampaignConfig& config) {
  config.validate();
  const fs::path root(config.output_dir);
  std::error_code ec;
  fs::create_directories(root / "scenarios", ec);
  fs::create_directories(root / "controllers", ec);
  fs::create_directories(root / "manifests", ec);
  if (ec) throw IoError("cannot create campaign output directories: " + ec.message());

  // Scenario files (also exercised as the arena serialization surface).
  std::vector<ScenarioSpec> scenarios;
  scenarios.reserve(config.scenarios.size());
  for (const ScenarioId& id : config.scenarios) {
    scenarios.push_back(build_scenario(id.mission, id.sheep));
    write_file(root / "scenarios" / (scenario_slug(id) + ".json"),
               scenario_to_json(scenarios.back()));
  }

  // Design phase; completed controller files short-circuit their run.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ShepherdSpec>> designed;
  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    const MethodConfig& method = config.methods[mi];
    for (std::size_t si = 0; si < config.scenarios.size(); ++si) {
      const ScenarioId& id = config.scenarios[si];
      std::vector<ShepherdSpec>& cell = designed[{mi, si}];
      for (int d = 0; d < method.designs_per_scenario; ++d) {
        switch (method.method) {
          case DesignMethod::kRwalk:
            cell.push_back(RwalkSpec{});
            continue;
          case DesignMethod::kFileController:
            cell.push_back(controller_from_file(
                (fs::path(method.controller_dir) / (scenario_slug(id) + ".json")).string()));
            continue;
          default: break;
        }
        const fs::path controller_path =
            root / "controllers" /
            fmt::format("{}_{}_{}.json", to_string(method.method), scenario_slug(id), d);
        if (fs::exists(controller_path)) {
          cell.push_back(controller_from_file(controller_path.string()));
          continue;
        }
        const std::uint64_t design_seed =
            derive_seed(method_stream(config.master_seed, method), "design",
                        scenario_code(id.mission, id.sheep), static_cast<std::uint64_t>(d));
        std::string manifest;
        ShepherdSpec spec = design_controller(method.method, scenarios[si], method.budget,
                                              design_seed, config.threads, &manifest);
        write_file(controller_path, controller_to_json(spec));
        write_file(root / "manifests" /
                       fmt::format("{}_{}_{}.json", to_string(method.method), scenario_slug(id), d),
                   manifest_with_controller(manifest, controller_path.string()));
        cell.push_back(std::move(spec));
      }
    }
  }

  // Assessment phase: all episodes across the campaign form one batch.
  struct Job {
    std::size_t method;
    std::size_t scenario;
    int design;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    const MethodConfig& method = config.methods[mi];
    for (std::size_t si = 0; si < config.scenarios.size(); ++si) {
      const ScenarioId& id = config.scenarios[si];
      for (int d = 0; d < method.designs_per_scenario; ++d) {
        for (int a = 0; a < method.assessments_per_design; ++a) {
          const std::uint64_t seed = derive_seed(
              method_stream(config.master_seed, method), "assess",
              scenario_code(id.mission, id.sheep), static_cast<std::uint64_t>(d),
              static_cast<std::uint64_t>(a));
          jobs.push_back({mi, si, d, seed});
        }
      }
    }
  }
  std::vector<double> objectives(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    objectives[i] = run_episode(scenarios[job.scenario],
                                designed.at({job.method, job.scenario})[job.design], job.seed)
                        .objective;
  });

  std::vector<Observation> observations;
  observations.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    const ScenarioId& id = config.scenarios[job.scenario];
    observations.push_back({std::string(to_string(config.methods[job.method].method)),
                            id.mission, id.sheep, job.design, job.seed, objectives[i],
                            scenarios[job.scenario].sense()});
  }
  write_file(root / "observations.csv", observations_to_csv(observations));
  return observations;
}

RankSummary summarize_observations(std::span<const Observation> observations, double alpha) {
  if (observations.empty()) throw std::invalid_argument("no observations");

  std::vector<std::string> methods;
  std::vector<ScenarioId> scenarios;
  for (const Observation& o : observations) {
    if (std::find(methods.begin(), methods.end(), o.method) == methods.end()) {
      methods.push_back(o.method);
    }
    const ScenarioId id{o.mission, o.sheep};
    if (std::find(scenarios.begin(), scenarios.end(), id) == scenarios.end()) {
      scenarios.push_back(id);
    }
  }

  // Cell = replicate list for one (method, scenario); balance is required.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> cells;
  std::map<std::size_t, ObjectiveSense> scenario_sense;
  for (const Observation& o : observations) {
    const std::size_t mi =
        std::find(methods.begin(), methods.end(), o.method) - methods.begin();
    const std::size_t si =
        std::find(scenarios.begin(), scenarios.end(), ScenarioId{o.mission, o.sheep}) -
        scenarios.begin();
    cells[{mi, si}].push_back(o.objective);
    const auto [it, inserted] = scenario_sense.emplace(si, o.sense);
    if (!inserted && it->second != o.sense) {
      throw std::invalid_argument("inconsistent objective sense within a scenario");
    }
  }
  const std::size_t replicates = cells.begin()->second.size();
  for (const auto& [key, values] : cells) {
    if (values.size() != replicates) {
      throw std::invalid_argument("unbalanced observations: equal counts per cell required");
    }
  }
  if (cells.size() != methods.size() * scenarios.size()) {
    throw std::invalid_argument("unbalanced observations: missing (method, scenario) cells");
  }

  std::vector<std::vector<double>> block_scores;
  std::vector<ObjectiveSense> block_sense;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    for (std::size_t r = 0; r < replicates; ++r) {
      std::vector<double> row(methods.size());
      for (std::size_t mi = 0; mi < methods.size(); ++mi) row[mi] = cells[{mi, si}][r];
      block_scores.push_back(std::move(row));
      block_sense.push_back(scenario_sense[si]);
    }
  }
  return friedman_rank_summary(methods, block_scores, block_sense, alpha);
}

}  // namespace herd
