#include "herd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace herd {

namespace {

constexpr double kDegenerateTol = 1e-12;

struct RankStats {
  std::vector<double> rank_sums;   // per treatment
  double sum_sq_ranks = 0.0;       // A1
  std::size_t blocks = 0;
  std::size_t treatments = 0;
};

RankStats accumulate_ranks(const std::vector<std::vector<double>>& ranks) {
  RankStats rs;
  rs.blocks = ranks.size();
  rs.treatments = ranks.empty() ? 0 : ranks.front().size();
  rs.rank_sums.assign(rs.treatments, 0.0);
  for (const auto& row : ranks) {
    for (std::size_t j = 0; j < rs.treatments; ++j) {
      rs.rank_sums[j] += row[j];
      rs.sum_sq_ranks += row[j] * row[j];
    }
  }
  return rs;
}

double statistic_from(const RankStats& rs) {
  const double n = static_cast<double>(rs.blocks);
  const double k = static_cast<double>(rs.treatments);
  const double c1 = n * k * (k + 1.0) * (k + 1.0) / 4.0;
  const double denom = rs.sum_sq_ranks - c1;
  if (denom <= kDegenerateTol) return 0.0;
  double deviation = 0.0;
  for (double rj : rs.rank_sums) {
    const double d = rj - n * (k + 1.0) / 2.0;
    deviation += d * d;
  }
  return (k - 1.0) * deviation / denom;
}

// Conover's critical difference on rank sums at confidence 1 - alpha.
double critical_difference(const RankStats& rs, double alpha) {
  const double n = static_cast<double>(rs.blocks);
  const double k = static_cast<double>(rs.treatments);
  double sum_rj_sq = 0.0;
  for (double rj : rs.rank_sums) sum_rj_sq += rj * rj;
  const double residual = n * rs.sum_sq_ranks - sum_rj_sq;
  if (residual <= kDegenerateTol) return 0.0;
  const int dof = static_cast<int>((n - 1.0) * (k - 1.0));
  const double t = student_t_quantile(1.0 - alpha / 2.0, dof);
  return t * std::sqrt(2.0 * residual / ((n - 1.0) * (k - 1.0)));
}

}  // namespace

std::vector<double> rank_values(std::span<const double> values, ObjectiveSense sense) {
  const std::size_t k = values.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sense == ObjectiveSense::kMinimize ? values[a] < values[b] : values[a] > values[b];
  });
  std::vector<double> ranks(k, 0.0);
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j + 1 < k && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t m = i; m <= j; ++m) ranks[order[m]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double friedman_statistic(const std::vector<std::vector<double>>& ranks) {
  return statistic_from(accumulate_ranks(ranks));
}

double chi_squared_quantile(double p, int dof) {
  return boost::math::quantile(boost::math::chi_squared(dof), p);
}

double student_t_quantile(double p, int dof) {
  return boost::math::quantile(boost::math::students_t(dof), p);
}

std::vector<std::size_t> friedman_eliminate(const std::vector<std::vector<double>>& scores,
                                            double alpha, ObjectiveSense sense) {
  const std::size_t k = scores.size();
  if (k < 2) throw std::invalid_argument("friedman_eliminate needs >= 2 candidates");
  const std::size_t n = scores.front().size();
  if (n < 2) throw std::invalid_argument("friedman_eliminate needs >= 2 instances");
  for (const auto& row : scores) {
    if (row.size() != n) throw std::invalid_argument("score matrix must be rectangular");
  }

  // Rank candidates within each instance.
  std::vector<std::vector<double>> ranks(n, std::vector<double>(k));
  std::vector<double> column(k);
  for (std::size_t inst = 0; inst < n; ++inst) {
    for (std::size_t c = 0; c < k; ++c) column[c] = scores[c][inst];
    ranks[inst] = rank_values(column, sense);
  }

  const RankStats rs = accumulate_ranks(ranks);
  const double statistic = statistic_from(rs);
  std::vector<std::size_t> survivors;
  if (statistic <= chi_squared_quantile(1.0 - alpha, static_cast<int>(k) - 1)) {
    survivors.resize(k);
    std::iota(survivors.begin(), survivors.end(), 0);
    return survivors;
  }

  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (rs.rank_sums[c] < rs.rank_sums[best]) best = c;
  }
  const double cd = critical_difference(rs, alpha);
  for (std::size_t c = 0; c < k; ++c) {
    if (c == best || rs.rank_sums[c] - rs.rank_sums[best] <= cd) survivors.push_back(c);
  }
  return survivors;
}

RankSummary friedman_rank_summary(const std::vector<std::string>& method_names,
                                  const std::vector<std::vector<double>>& block_scores,
                                  const std::vector<ObjectiveSense>& block_sense,
                                  double alpha) {
  const std::size_t k = method_names.size();
  const std::size_t n = block_scores.size();
  if (k < 2) throw std::invalid_argument("rank summary needs >= 2 methods");
  if (n < 2) throw std::invalid_argument("rank summary needs >= 2 blocks");
  if (block_sense.size() != n) throw std::invalid_argument("one sense per block required");
  for (const auto& row : block_scores) {
    if (row.size() != k) throw std::invalid_argument("every block needs one score per method");
  }

  std::vector<std::vector<double>> ranks(n);
  for (std::size_t b = 0; b < n; ++b) {
    ranks[b] = rank_values(block_scores[b], block_sense[b]);
  }
  const RankStats rs = accumulate_ranks(ranks);

  RankSummary summary;
  summary.block_count = n;
  summary.statistic = statistic_from(rs);
  summary.significant =
      summary.statistic > chi_squared_quantile(1.0 - alpha, static_cast<int>(k) - 1);
  const double half_width = critical_difference(rs, alpha) / (2.0 * static_cast<double>(n));
  for (std::size_t j = 0; j < k; ++j) {
    const double mean = rs.rank_sums[j] / static_cast<double>(n);
    summary.methods.push_back({method_names[j], mean, mean - half_width, mean + half_width});
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const bool disjoint = summary.methods[a].ci_upper < summary.methods[b].ci_lower ||
                            summary.methods[b].ci_upper < summary.methods[a].ci_lower;
      if (disjoint) summary.significant_pairs.emplace_back(a, b);
    }
  }
  return summary;
}

}  // namespace herd
