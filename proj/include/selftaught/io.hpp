#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>

#include "selftaught/experiment.hpp"
#include "selftaught/stats.hpp"

namespace selftaught {

inline constexpr std::string_view kStatsHeader = "run_id,generation,mode,map,best_fitness,mean_fitness";
inline constexpr std::string_view kSummaryHeader = "scope,generation,metric,n,mean,median,q1,q3,min,max";

/// Locale-independent fixed-point rendering.
std::string format_fixed(double value, int decimals = 6);

/// Header line, then one comma-separated row per record. Integers are
/// written verbatim and reals with six decimals.
void write_stats_csv(std::span<const GenerationStats> stats, std::ostream& out);

/// One JSON object per line, fields in the order generation, step,
/// agent_id, x, y, heading, energy, action.
void write_trace_jsonl(std::span<const GenerationTrace> traces, std::ostream& out);

/// Rows with scope `generation` (one pair per generation), `final` and
/// `run_best`.
void write_summary_csv(const ExperimentSummary& summary, std::ostream& out);

/// Runs `writer` against a temporary sibling of `path` and renames it into
/// place only if everything succeeded. Throws IoError; on failure `path`
/// is left untouched.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

}  // namespace selftaught
