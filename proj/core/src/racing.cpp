#include "herd/racing.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "herd/rng.hpp"

namespace herd {

namespace {

bool better(double a, double b, ObjectiveSense sense) {
  return sense == ObjectiveSense::kMinimize ? a < b : a > b;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

PfsmConfig iterated_race(ObjectiveSense sense, Budget& budget, std::uint64_t seed,
                         const PfsmBatchEvaluator& evaluate, const RaceOptions& options,
                         const RaceObserver& observer) {
  if (budget.max_episodes() < 1000) {
    throw std::invalid_argument("iterated racing requires a budget of at least 1000 episodes");
  }
  const std::size_t gen_size = static_cast<std::size_t>(options.generation_size);
  RngStream rng(derive_seed(seed, "race"));

  std::vector<PfsmConfig> elites;
  std::optional<PfsmConfig> best;
  double best_score = 0.0;

  for (int iteration = 0;; ++iteration) {
    if (budget.remaining() < 2 * gen_size) break;  // not enough for a meaningful race

    // Equal shares over the planned iterations; late iterations soak up
    // whatever elimination saved earlier.
    const int iterations_left = std::max(1, options.planned_iterations - iteration);
    const std::uint64_t allotment =
        std::max<std::uint64_t>(2 * gen_size, budget.remaining() / iterations_left);

    std::vector<PfsmConfig> generation;
    generation.reserve(gen_size);
    if (elites.empty()) {
      for (std::size_t i = 0; i < gen_size; ++i) generation.push_back(sample_pfsm(rng));
    } else {
      generation = elites;
      while (generation.size() < gen_size) {
        generation.push_back(mutate_pfsm(elites[rng.uniform_int(elites.size())], rng));
      }
    }

    std::vector<std::size_t> alive(generation.size());
    std::iota(alive.begin(), alive.end(), 0);
    std::vector<std::vector<double>> scores(generation.size());
    const std::size_t stop_survivors = std::max<std::size_t>(2, generation.size() / 4);

    std::uint64_t spent = 0;
    int instance = 0;
    while (alive.size() > stop_survivors && spent + alive.size() <= allotment &&
           budget.remaining() >= alive.size()) {
      const std::uint64_t instance_seed =
          derive_seed(seed, "race-instance", static_cast<std::uint64_t>(iteration),
                      static_cast<std::uint64_t>(instance));
      std::vector<PfsmConfig> batch;
      batch.reserve(alive.size());
      for (std::size_t idx : alive) batch.push_back(generation[idx]);
      const std::vector<std::uint64_t> seeds(alive.size(), instance_seed);
      const std::vector<double> values = evaluate(batch, seeds);
      for (std::size_t k = 0; k < alive.size(); ++k) scores[alive[k]].push_back(values[k]);
      spent += alive.size();
      ++instance;

      if (instance >= options.min_instances_before_test && alive.size() >= 2) {
        std::vector<std::vector<double>> matrix;
        matrix.reserve(alive.size());
        for (std::size_t idx : alive) matrix.push_back(scores[idx]);
        const std::vector<std::size_t> surviving =
            friedman_eliminate(matrix, options.alpha, sense);
        std::vector<std::size_t> next_alive;
        next_alive.reserve(surviving.size());
        for (std::size_t s : surviving) next_alive.push_back(alive[s]);
        alive = std::move(next_alive);
      }
    }
    if (instance == 0) break;  // could not afford a single instance

    // Order survivors by mean rank over the instances they all completed.
    std::vector<std::vector<double>> matrix;
    matrix.reserve(alive.size());
    for (std::size_t idx : alive) matrix.push_back(scores[idx]);
    std::vector<double> mean_rank(alive.size(), 0.0);
    std::vector<double> column(alive.size());
    for (int inst = 0; inst < instance; ++inst) {
      for (std::size_t c = 0; c < alive.size(); ++c) column[c] = matrix[c][inst];
      const std::vector<double> ranks = rank_values(column, sense);
      for (std::size_t c = 0; c < alive.size(); ++c) mean_rank[c] += ranks[c];
    }
    std::vector<std::size_t> order(alive.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return mean_rank[a] < mean_rank[b]; });

    elites.clear();
    for (std::size_t i = 0; i < order.size() && i < static_cast<std::size_t>(options.elite_count);
         ++i) {
      elites.push_back(generation[alive[order[i]]]);
    }

    const double race_best_score = mean(scores[alive[order[0]]]);
    if (!best.has_value() || better(race_best_score, best_score, sense)) {
      best = generation[alive[order[0]]];
      best_score = race_best_score;
    }
    if (observer) {
      observer({iteration, instance, static_cast<int>(alive.size()), best_score,
                budget.consumed()});
    }
  }
  // A budget too small to race anything still returns a valid machine.
  return best.has_value() ? *best : sample_pfsm(rng);
}

}  // namespace herd
