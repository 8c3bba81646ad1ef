#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "selftaught/evolution.hpp"
#include "selftaught/neural.hpp"
#include "selftaught/rng.hpp"
#include "selftaught/world.hpp"

namespace selftaught {

enum class Mode { Evo, EvoSelfTaught, SelfTaughtAlone };

std::string_view to_string(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::Evo;
  WorldConfig world{};
  EvolutionParams evo{};
  LayerSpec layers{};
  double learning_rate = 0.01;
  std::size_t n_generations = 100;
  std::size_t steps_per_generation = 5000;
  std::size_t n_runs = 30;
  std::uint64_t base_seed = 0;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Full-length schedule: 100 generations x 5000 steps x 30 runs.
ExperimentConfig full_profile();
/// Reduced schedule for quick comparisons: 20 generations x 2000 steps x 10 runs.
ExperimentConfig desk_profile();

struct GenerationStats {
  std::size_t run_id = 0;
  std::size_t generation = 0;
  long best_fitness = 0;
  double mean_fitness = 0.0;
  Mode mode = Mode::Evo;
  MapKind map = MapKind::A;

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

/// State of one agent after its move in one step.
struct TraceRecord {
  std::size_t generation = 0;
  std::size_t step = 0;
  std::size_t agent_id = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  long energy = 0;
  Action action = Action::Forward;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct GenerationTrace {
  std::size_t generation = 0;
  std::vector<TraceRecord> records;
  std::vector<std::size_t> respawns_per_step;
  std::vector<std::size_t> foods_per_step;
};

struct GenerationResult {
  std::vector<long> fitnesses;
  /// Phenotypes as they stand at the end of the generation.
  std::vector<SelfTaughtController> final_controllers;
  std::size_t teach_calls = 0;
  std::size_t respawns = 0;
  std::optional<GenerationTrace> trace;
};

/// Evaluates one generation in a fresh world. In SelfTaughtAlone mode the
/// genomes are ignored and each agent gets fresh Gaussian weights (action
/// then reinforcement, agent by agent) before the world is initialised.
GenerationResult run_generation(std::span<const Genome> genomes, const ExperimentConfig& config, Rng& rng,
                                std::size_t generation = 0, bool trace = false);

/// Which generations of a run keep a trace.
struct TraceSelection {
  bool all = false;
  std::vector<std::size_t> generations;

  bool includes(std::size_t generation) const;
};

struct RunResult {
  std::vector<GenerationStats> stats;
  std::vector<GenerationTrace> traces;
  std::size_t teach_calls = 0;
};

/// One replicate: the rng is seeded with derive_run_seed(base_seed, run_id),
/// initial genomes are drawn from it, then each generation is evaluated,
/// recorded and (except in SelfTaughtAlone) replaced by next_generation.
RunResult run_experiment(const ExperimentConfig& config, std::size_t run_id, const TraceSelection& trace = {});

/// All n_runs replicates, ordered by (run_id, generation). Runs execute on up
/// to `threads` worker threads; the output does not depend on the count.
std::vector<GenerationStats> run_replicates(const ExperimentConfig& config, unsigned threads = 1);

}  // namespace selftaught
