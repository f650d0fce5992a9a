#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "herd/evolution.hpp"
#include "herd/racing.hpp"
#include "herd/rng.hpp"

using namespace herd;

namespace {

// Score derived deterministically from the candidate and seed; charges the
// budget like the simulation evaluator and counts every episode.
struct StubPfsmEvaluator {
  Budget* budget;
  long* episodes;
  double (*score)(const PfsmConfig&, std::uint64_t);

  std::vector<double> operator()(const std::vector<PfsmConfig>& candidates,
                                 const std::vector<std::uint64_t>& seeds) const {
    budget->charge(candidates.size());
    *episodes += static_cast<long>(candidates.size());
    std::vector<double> out(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = score(candidates[i], seeds[i]);
    return out;
  }
};

double noisy_state_count(const PfsmConfig& cfg, std::uint64_t seed) {
  // Fewer states is better, plus seed-dependent noise shared per instance.
  RngStream rng(seed);
  return static_cast<double>(cfg.states.size()) + rng.uniform(0.0, 0.4);
}

}  // namespace

TEST_CASE("budget charges, refuses overdrafts, and never decreases") {
  Budget b(100);
  CHECK(b.max_episodes() == 100);
  CHECK(b.remaining() == 100);
  b.charge(90);
  CHECK(b.consumed() == 90);
  b.charge(10);
  CHECK(b.consumed() == 100);
  CHECK(b.remaining() == 0);
  CHECK_THROWS_AS(b.charge(1), BudgetExhaustedError);
  CHECK(b.consumed() == 100);  // failed charge leaves no trace

  Budget c(100);
  c.charge(95);
  CHECK_FALSE(c.try_charge(10));
  CHECK(c.consumed() == 95);
  CHECK(c.try_charge(5));
  CHECK(c.consumed() == 100);
}

TEST_CASE("racing consumes at most the budget, counted by the evaluator") {
  Budget budget(1000);
  long episodes = 0;
  StubPfsmEvaluator eval{&budget, &episodes, noisy_state_count};
  (void)iterated_race(ObjectiveSense::kMinimize, budget, 42, eval);
  CHECK(episodes <= 1000);
  CHECK(static_cast<std::uint64_t>(episodes) == budget.consumed());
  CHECK(episodes > 0);
}

TEST_CASE("racing rejects budgets below the documented minimum") {
  Budget budget(999);
  long episodes = 0;
  StubPfsmEvaluator eval{&budget, &episodes, noisy_state_count};
  CHECK_THROWS_AS((void)iterated_race(ObjectiveSense::kMinimize, budget, 1, eval),
                  std::invalid_argument);
}

TEST_CASE("racing returns a rigged always-best configuration") {
  // The target: whatever config the race samples first. Score 0 for it
  // (and exact clones), 1 plus noise for everything else.
  static PfsmConfig target;
  {
    RngStream probe(derive_seed(9001, "race"));
    target = sample_pfsm(probe);  // reproduces the race's first sample
  }
  Budget budget(5000);
  long episodes = 0;
  StubPfsmEvaluator eval{&budget, &episodes, [](const PfsmConfig& cfg, std::uint64_t seed) {
                           if (cfg == target) return 0.0;
                           RngStream rng(seed);
                           return 1.0 + rng.uniform();
                         }};
  const PfsmConfig winner = iterated_race(ObjectiveSense::kMinimize, budget, 9001, eval);
  CHECK(winner == target);
}

TEST_CASE("racing is deterministic in the master seed") {
  for (std::uint64_t seed : {7u, 11u}) {
    Budget b1(2000);
    Budget b2(2000);
    long n1 = 0;
    long n2 = 0;
    const PfsmConfig a = iterated_race(ObjectiveSense::kMinimize, b1, seed,
                                       StubPfsmEvaluator{&b1, &n1, noisy_state_count});
    const PfsmConfig b = iterated_race(ObjectiveSense::kMinimize, b2, seed,
                                       StubPfsmEvaluator{&b2, &n2, noisy_state_count});
    CHECK(a == b);
    CHECK(n1 == n2);
  }
}

TEST_CASE("racing reports a monotone best-so-far score") {
  Budget budget(10000);
  long episodes = 0;
  StubPfsmEvaluator eval{&budget, &episodes, noisy_state_count};
  std::vector<double> best_scores;
  (void)iterated_race(ObjectiveSense::kMinimize, budget, 13, eval, RaceOptions{},
                      [&](const RaceIterationReport& r) {
                        best_scores.push_back(r.best_mean_objective);
                      });
  REQUIRE(best_scores.size() >= 2);
  for (std::size_t i = 1; i < best_scores.size(); ++i) {
    CHECK(best_scores[i] <= best_scores[i - 1] + 1e-12);
  }
}

namespace {

struct StubNnEvaluator {
  Budget* budget;
  long* episodes;

  std::vector<double> operator()(const std::vector<NnGenome>& genomes,
                                 const std::vector<std::uint64_t>& seeds) const {
    budget->charge(genomes.size());
    *episodes += static_cast<long>(genomes.size());
    std::vector<double> out(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) {
      // Mean absolute weight, to be minimized; tiny seed noise.
      double sum = 0.0;
      for (double w : genomes[i].weights()) sum += std::abs(w);
      RngStream rng(seeds[i]);
      out[i] = sum / kNnWeightCount + rng.uniform(0.0, 1e-3);
    }
    return out;
  }
};

}  // namespace

TEST_CASE("evolution runs exactly budget/1000 generations of 100 genomes") {
  Budget budget(100000);
  long episodes = 0;
  StubNnEvaluator eval{&budget, &episodes};
  int generations = 0;
  std::vector<NnGenome> previous_population;
  std::vector<double> previous_fitness;
  int elite_violations = 0;

  (void)evolve(ObjectiveSense::kMinimize, budget, 5, eval, EvoOptions{},
               [&](const GenerationReport& r) {
                 ++generations;
                 REQUIRE(r.population->size() == 100);
                 if (!previous_population.empty()) {
                   // The 20 elites of the previous generation reappear
                   // unchanged at the head of this one.
                   std::vector<std::size_t> order(100);
                   std::iota(order.begin(), order.end(), 0);
                   std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                     return previous_fitness[a] < previous_fitness[b];
                   });
                   for (int e = 0; e < 20; ++e) {
                     if (!((*r.population)[e] == previous_population[order[e]])) {
                       ++elite_violations;
                     }
                   }
                 }
                 previous_population = *r.population;
                 previous_fitness = *r.fitnesses;
               });
  CHECK(generations == 100);
  CHECK(episodes == 100000);
  CHECK(budget.consumed() == 100000);
  CHECK(elite_violations == 0);
}

TEST_CASE("evolution improves the surrogate objective") {
  Budget budget(20000);
  long episodes = 0;
  StubNnEvaluator eval{&budget, &episodes};
  std::vector<double> best;
  const NnGenome winner =
      evolve(ObjectiveSense::kMinimize, budget, 17, eval, EvoOptions{},
             [&](const GenerationReport& r) { best.push_back(r.best_fitness); });
  REQUIRE(best.size() == 20);
  // Monotone best-so-far, and the surrogate really got smaller.
  for (std::size_t i = 1; i < best.size(); ++i) CHECK(best[i] <= best[i - 1] + 1e-12);
  CHECK(best.back() < best.front());
  double mean_abs = 0.0;
  for (double w : winner.weights()) mean_abs += std::abs(w);
  CHECK(mean_abs / kNnWeightCount < 2.0);  // uniform random would sit near 2.5
}

TEST_CASE("evolution with a sub-generation budget evaluates what it can") {
  Budget budget(500);
  long episodes = 0;
  StubNnEvaluator eval{&budget, &episodes};
  CHECK_NOTHROW((void)evolve(ObjectiveSense::kMinimize, budget, 23, eval));
  CHECK(episodes == 500);  // 50 individuals x 10 episodes
  CHECK(budget.consumed() == 500);
}

TEST_CASE("evolution is deterministic in the master seed") {
  Budget b1(5000);
  Budget b2(5000);
  long n1 = 0;
  long n2 = 0;
  const NnGenome a =
      evolve(ObjectiveSense::kMinimize, b1, 29, StubNnEvaluator{&b1, &n1});
  const NnGenome b =
      evolve(ObjectiveSense::kMinimize, b2, 29, StubNnEvaluator{&b2, &n2});
  CHECK(a == b);
  CHECK(n1 == n2);
}

TEST_CASE("design seeds and assessment seeds never collide") {
  std::set<std::uint64_t> design;
  std::set<std::uint64_t> assessment;
  for (std::uint64_t i = 0; i < 200; ++i) {
    for (std::uint64_t j = 0; j < 50; ++j) {
      design.insert(derive_seed(99, "race-instance", i, j));
      design.insert(derive_seed(99, "evolution-fitness", i, j, 0));
      assessment.insert(derive_seed(99, "assess", i, j, 0));
    }
  }
  for (std::uint64_t s : assessment) CHECK(design.count(s) == 0);
}
