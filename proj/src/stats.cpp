#include "selftaught/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "selftaught/errors.hpp"

namespace selftaught {

namespace {

double sorted_median(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

// P(W >= observed) for the rank sum of n1 draws from ranks 1..N, no ties.
double exact_upper_tail(std::size_t n1, std::size_t total, long observed) {
  const long max_sum = static_cast<long>(total * (total + 1) / 2);
  // ways[k][s]: subsets of size k from the ranks seen so far with sum s.
  std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t rank = 1; rank <= total; ++rank) {
    for (std::size_t k = std::min(n1, rank); k >= 1; --k) {
      for (long s = max_sum; s >= static_cast<long>(rank); --s) {
        ways[k][static_cast<std::size_t>(s)] += ways[k - 1][static_cast<std::size_t>(s) - rank];
      }
    }
  }
  double tail = 0.0;
  double all = 0.0;
  for (long s = 0; s <= max_sum; ++s) {
    const double w = ways[n1][static_cast<std::size_t>(s)];
    all += w;
    if (s >= observed) tail += w;
  }
  return tail / all;
}

}  // namespace

double median(std::span<const double> values) {
  if (values.empty()) throw StatsError("median of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_median(sorted);
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw StatsError("aggregate of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  Aggregate a;
  a.n = n;
  a.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  a.median = sorted_median(sorted);
  a.min = sorted.front();
  a.max = sorted.back();
  if (n == 1) {
    a.q1 = a.q3 = sorted.front();
  } else {
    const std::size_t half = n / 2;
    const std::span<const double> all(sorted);
    a.q1 = sorted_median(all.first(half));
    a.q3 = sorted_median(all.last(half));
  }
  return a;
}

std::vector<GenerationStats> final_generation_rows(std::span<const GenerationStats> stats) {
  std::map<std::size_t, GenerationStats> last;
  for (const auto& s : stats) {
    auto it = last.find(s.run_id);
    if (it == last.end() || s.generation > it->second.generation) last[s.run_id] = s;
  }
  std::vector<GenerationStats> rows;
  rows.reserve(last.size());
  for (const auto& [run, s] : last) rows.push_back(s);
  return rows;
}

ExperimentSummary summarize(std::span<const GenerationStats> stats) {
  if (stats.empty()) throw StatsError("summarize needs at least one stats record");

  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> by_generation;
  std::map<std::size_t, double> best_per_run;
  for (const auto& s : stats) {
    auto& [best, mean] = by_generation[s.generation];
    best.push_back(static_cast<double>(s.best_fitness));
    mean.push_back(s.mean_fitness);
    auto [it, inserted] = best_per_run.try_emplace(s.run_id, static_cast<double>(s.best_fitness));
    if (!inserted) it->second = std::max(it->second, static_cast<double>(s.best_fitness));
  }

  ExperimentSummary summary;
  for (const auto& [gen, samples] : by_generation) {
    summary.per_generation.push_back({gen, aggregate(samples.first), aggregate(samples.second)});
  }

  std::vector<double> final_best;
  std::vector<double> final_mean;
  for (const auto& s : final_generation_rows(stats)) {
    final_best.push_back(static_cast<double>(s.best_fitness));
    final_mean.push_back(s.mean_fitness);
  }
  summary.final_generation = {by_generation.rbegin()->first, aggregate(final_best), aggregate(final_mean)};

  std::vector<double> run_best;
  for (const auto& [run, best] : best_per_run) run_best.push_back(best);
  summary.run_best = aggregate(run_best);
  return summary;
}

double rank_sum_p_greater(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw StatsError("rank-sum test needs two non-empty samples");
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const auto ranks = average_ranks(pooled);

  const std::size_t n1 = x.size();
  const std::size_t n2 = y.size();
  const std::size_t total = n1 + n2;
  double w = 0.0;
  for (std::size_t i = 0; i < n1; ++i) w += ranks[i];

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j + 1 < total && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  if (tie_term == 0.0 && n1 <= 50 && n2 <= 50) {
    return exact_upper_tail(n1, total, std::lround(w));
  }

  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(total);
  const double u = w - dn1 * (dn1 + 1.0) / 2.0;
  const double mean_u = dn1 * dn2 / 2.0;
  const double var_u = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var_u <= 0.0) return 1.0;
  const double z = (u - mean_u - 0.5) / std::sqrt(var_u);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw StatsError("spearman needs two equal samples of size >= 2");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace selftaught
