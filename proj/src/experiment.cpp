#include "selftaught/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "selftaught/errors.hpp"

namespace selftaught {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Evo: return "EVO";
    case Mode::EvoSelfTaught: return "EVO_SELF_TAUGHT";
    case Mode::SelfTaughtAlone: return "SELF_TAUGHT_ALONE";
  }
  return "UNKNOWN";
}

void ExperimentConfig::validate() const {
  world.validate();
  evo.validate();
  try {
    layers.validate();
  } catch (const InvalidSpec& e) {
    throw ConfigError("n_hidden", e.what());
  }
  if (layers.n_input != 3) throw ConfigError("n_input", "the agent has exactly 3 sensors");
  if (layers.n_output != 3) throw ConfigError("n_output", "the agent has exactly 3 motor actions");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate", "must be a finite number >= 0");
  }
  if (n_generations == 0) throw ConfigError("n_generations", "must be at least 1");
  if (steps_per_generation == 0) throw ConfigError("steps_per_generation", "must be at least 1");
  if (n_runs == 0) throw ConfigError("n_runs", "must be at least 1");
  if (evo.population_size != world.n_agents) {
    throw ConfigError("population_size", "must equal n_agents (" + std::to_string(world.n_agents) +
                                             ") so every genome is evaluated in the shared world");
  }
}

ExperimentConfig full_profile() { return ExperimentConfig{}; }

ExperimentConfig desk_profile() {
  ExperimentConfig c;
  c.n_generations = 20;
  c.steps_per_generation = 2000;
  c.n_runs = 10;
  return c;
}

GenerationResult run_generation(std::span<const Genome> genomes, const ExperimentConfig& config, Rng& rng,
                                std::size_t generation, bool trace) {
  if (genomes.size() != config.world.n_agents) {
    throw ConfigError("population_size", "population of " + std::to_string(genomes.size()) +
                                             " does not match " + std::to_string(config.world.n_agents) +
                                             " agents");
  }

  std::vector<SelfTaughtController> controllers;
  controllers.reserve(genomes.size());
  for (const auto& genome : genomes) {
    if (config.mode == Mode::SelfTaughtAlone) {
      controllers.push_back(spawn_phenotype(random_genome(config.layers, rng), config.learning_rate));
    } else {
      controllers.push_back(spawn_phenotype(genome, config.learning_rate));
    }
  }

  World world = init_world(config.world, std::move(controllers), rng);
  const StepMode step_mode = config.mode == Mode::Evo ? StepMode::Evo : StepMode::SelfTaught;

  GenerationResult result;
  if (trace) {
    GenerationTrace t;
    t.generation = generation;
    t.records.reserve(config.steps_per_generation * world.agents.size());
    t.respawns_per_step.reserve(config.steps_per_generation);
    t.foods_per_step.reserve(config.steps_per_generation);
    result.trace = std::move(t);
  }

  for (std::size_t step = 0; step < config.steps_per_generation; ++step) {
    const StepReport report = world_step(world, step_mode, rng);
    result.teach_calls += report.teach_calls;
    result.respawns += report.respawns;
    if (result.trace) {
      auto& t = *result.trace;
      for (std::size_t i = 0; i < world.agents.size(); ++i) {
        const auto& a = world.agents[i];
        t.records.push_back({generation, step, i, a.position.x, a.position.y, a.heading, a.energy,
                             report.actions[i]});
      }
      t.respawns_per_step.push_back(report.respawns);
      t.foods_per_step.push_back(world.foods.size());
    }
  }

  result.fitnesses.reserve(world.agents.size());
  result.final_controllers.reserve(world.agents.size());
  for (auto& agent : world.agents) {
    result.fitnesses.push_back(agent.energy);
    result.final_controllers.push_back(std::move(agent.controller));
  }
  return result;
}

bool TraceSelection::includes(std::size_t generation) const {
  return all || std::find(generations.begin(), generations.end(), generation) != generations.end();
}

RunResult run_experiment(const ExperimentConfig& config, std::size_t run_id, const TraceSelection& trace) {
  config.validate();
  Rng rng(derive_run_seed(config.base_seed, run_id));

  std::vector<Genome> genomes;
  genomes.reserve(config.evo.population_size);
  for (std::size_t i = 0; i < config.evo.population_size; ++i) {
    genomes.push_back(random_genome(config.layers, rng));
  }

  RunResult run;
  run.stats.reserve(config.n_generations);
  for (std::size_t gen = 0; gen < config.n_generations; ++gen) {
    auto result = run_generation(genomes, config, rng, gen, trace.includes(gen));
    run.teach_calls += result.teach_calls;

    GenerationStats s;
    s.run_id = run_id;
    s.generation = gen;
    s.mode = config.mode;
    s.map = config.world.map;
    long total = 0;
    for (long f : result.fitnesses) {
      s.best_fitness = std::max(s.best_fitness, f);
      total += f;
    }
    s.mean_fitness = static_cast<double>(total) / static_cast<double>(result.fitnesses.size());
    run.stats.push_back(s);
    if (result.trace) run.traces.push_back(std::move(*result.trace));

    if (config.mode != Mode::SelfTaughtAlone) {
      genomes = next_generation(genomes, result.fitnesses, config.evo, rng);
    }
  }
  return run;
}

std::vector<GenerationStats> run_replicates(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  std::vector<std::vector<GenerationStats>> per_run(config.n_runs);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(config.n_runs)));

  if (workers == 1) {
    for (std::size_t r = 0; r < config.n_runs; ++r) per_run[r] = run_experiment(config, r).stats;
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < config.n_runs; r = next++) {
          try {
            per_run[r] = run_experiment(config, r).stats;
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<GenerationStats> all;
  all.reserve(config.n_runs * config.n_generations);
  for (auto& stats : per_run) all.insert(all.end(), stats.begin(), stats.end());
  return all;
}

}  // namespace selftaught
