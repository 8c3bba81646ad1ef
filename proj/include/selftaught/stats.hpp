#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "selftaught/experiment.hpp"

namespace selftaught {

/// Five-number-style summary of one sample. Quartiles use the
/// median-of-halves rule: for odd n the median is left out of both halves.
struct Aggregate {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Throws StatsError on an empty sample.
Aggregate aggregate(std::span<const double> values);
double median(std::span<const double> values);

struct GenerationSummary {
  std::size_t generation = 0;
  Aggregate best_fitness;
  Aggregate mean_fitness;
};

struct ExperimentSummary {
  /// Across runs, one entry per generation, in generation order.
  std::vector<GenerationSummary> per_generation;
  /// Across runs, at each run's last generation.
  GenerationSummary final_generation;
  /// Across runs, of each run's highest best_fitness over all generations.
  Aggregate run_best;
};

/// Throws StatsError on empty input.
ExperimentSummary summarize(std::span<const GenerationStats> stats);

/// Rows at each run's final generation, in run order.
std::vector<GenerationStats> final_generation_rows(std::span<const GenerationStats> stats);

/// One-sided Wilcoxon rank-sum (Mann-Whitney) p-value for the alternative
/// "x tends to be larger than y". Exact null distribution when there are no
/// ties and both samples have at most 50 values; otherwise the normal
/// approximation with tie and continuity corrections.
double rank_sum_p_greater(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace selftaught
