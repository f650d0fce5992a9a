#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "herd/mission.hpp"

namespace herd {

// Within-group ranks, 1 = best under the sense; tied values share the mean
// of the positions they span.
std::vector<double> rank_values(std::span<const double> values, ObjectiveSense sense);

// Friedman statistic with the tie correction; 0 when every rank is tied.
// ranks[block][treatment], rectangular.
double friedman_statistic(const std::vector<std::vector<double>>& ranks);

double chi_squared_quantile(double p, int dof);
double student_t_quantile(double p, int dof);

// One racing elimination round: candidates x instances scores, blocked by
// instance. When the Friedman test rejects at alpha, every candidate whose
// rank sum trails the best by more than Conover's critical difference is
// dropped; the rank-best candidate always survives. Returns surviving row
// indices in ascending order. Requires >= 2 candidates and >= 2 instances.
std::vector<std::size_t> friedman_eliminate(const std::vector<std::vector<double>>& scores,
                                            double alpha, ObjectiveSense sense);

struct MethodRank {
  std::string method;
  double mean_rank = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
};

struct RankSummary {
  std::vector<MethodRank> methods;
  std::size_t block_count = 0;
  double statistic = 0.0;
  bool significant = false;  // Friedman test at alpha
  // Pairs of method indices whose intervals do not overlap.
  std::vector<std::pair<std::size_t, std::size_t>> significant_pairs;
};

// Cross-scenario rank aggregation: methods ranked inside every block under
// that block's sense, averaged, with the interval half-width set to half of
// Conover's critical difference so that disjoint intervals coincide with a
// pairwise difference at alpha.
RankSummary friedman_rank_summary(const std::vector<std::string>& method_names,
                                  const std::vector<std::vector<double>>& block_scores,
                                  const std::vector<ObjectiveSense>& block_sense,
                                  double alpha = 0.05);

}  // namespace herd
