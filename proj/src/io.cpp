#include "selftaught/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "selftaught/errors.hpp"

namespace selftaught {

std::string format_fixed(double value, int decimals) {
  std::array<char, 128> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) throw IoError("cannot format value");
  std::string s(buf.data(), ptr);
  // Normalise negative zero so identical numbers print identically.
  if (!s.empty() && s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_stats_csv(std::span<const GenerationStats> stats, std::ostream& out) {
  out << kStatsHeader << '\n';
  for (const auto& s : stats) {
    out << s.run_id << ',' << s.generation << ',' << to_string(s.mode) << ',' << to_string(s.map) << ','
        << s.best_fitness << ',' << format_fixed(s.mean_fitness) << '\n';
  }
}

void write_trace_jsonl(std::span<const GenerationTrace> traces, std::ostream& out) {
  for (const auto& trace : traces) {
    for (const auto& r : trace.records) {
      out << "{\"generation\":" << r.generation << ",\"step\":" << r.step << ",\"agent_id\":" << r.agent_id
          << ",\"x\":" << format_fixed(r.x) << ",\"y\":" << format_fixed(r.y)
          << ",\"heading\":" << format_fixed(r.heading) << ",\"energy\":" << r.energy << ",\"action\":\""
          << to_string(r.action) << "\"}\n";
    }
  }
}

namespace {

void write_aggregate_row(std::ostream& out, std::string_view scope, const std::string& generation,
                         std::string_view metric, const Aggregate& a) {
  out << scope << ',' << generation << ',' << metric << ',' << a.n << ',' << format_fixed(a.mean) << ','
      << format_fixed(a.median) << ',' << format_fixed(a.q1) << ',' << format_fixed(a.q3) << ','
      << format_fixed(a.min) << ',' << format_fixed(a.max) << '\n';
}

}  // namespace

void write_summary_csv(const ExperimentSummary& summary, std::ostream& out) {
  out << kSummaryHeader << '\n';
  for (const auto& g : summary.per_generation) {
    const auto gen = std::to_string(g.generation);
    write_aggregate_row(out, "generation", gen, "best_fitness", g.best_fitness);
    write_aggregate_row(out, "generation", gen, "mean_fitness", g.mean_fitness);
  }
  const auto& f = summary.final_generation;
  const auto gen = std::to_string(f.generation);
  write_aggregate_row(out, "final", gen, "best_fitness", f.best_fitness);
  write_aggregate_row(out, "final", gen, "mean_fitness", f.mean_fitness);
  write_aggregate_row(out, "run_best", "all", "best_fitness", summary.run_best);
}

void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    try {
      writer(out);
    } catch (...) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw;
    }
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace selftaught
