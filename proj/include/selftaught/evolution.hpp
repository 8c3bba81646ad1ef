#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "selftaught/neural.hpp"
#include "selftaught/rng.hpp"

namespace selftaught {

/// Innate weights of both modules. Reproduction treats the action weights
/// followed by the reinforcement weights as one position sequence.
struct Genome {
  NetworkWeights innate_action;
  NetworkWeights innate_reinforcement;

  std::size_t size() const { return innate_action.size() + innate_reinforcement.size(); }
  bool same_shape(const Genome& other) const;

  friend bool operator==(const Genome&, const Genome&) = default;
};

struct EvolutionParams {
  std::size_t population_size = 20;
  double mutation_rate = 0.05;
  double mutation_amplitude = 0.05;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  friend bool operator==(const EvolutionParams&, const EvolutionParams&) = default;
};

/// Draws action weights then reinforcement weights.
Genome random_genome(const LayerSpec& spec, Rng& rng);

/// Fresh phenotype holding copies of the innate weights.
SelfTaughtController spawn_phenotype(const Genome& genome, double learning_rate);

/// Fitness-proportionate sampling with replacement; uniform when every
/// fitness is zero. Consumes exactly two uniforms.
std::pair<std::size_t, std::size_t> select_parent_pair(std::span<const long> fitnesses, Rng& rng);

/// Per position, one uniform u: the fitter parent's weight when u > 0.5,
/// otherwise the other parent's. Equal fitness treats `first` as fitter.
Genome crossover(const Genome& first, long first_fitness, const Genome& second, long second_fitness,
                 Rng& rng);

/// Per position, one uniform; if below mutation_rate, adds a second
/// uniform draw from [-amplitude, amplitude).
Genome mutate(Genome genome, const EvolutionParams& params, Rng& rng);

/// population_size children, each from select_parent_pair, crossover and
/// mutate, in that order. No elitism.
std::vector<Genome> next_generation(std::span<const Genome> genomes, std::span<const long> fitnesses,
                                    const EvolutionParams& params, Rng& rng);

}  // namespace selftaught
