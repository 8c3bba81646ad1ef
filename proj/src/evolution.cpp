#include "selftaught/evolution.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "selftaught/errors.hpp"

namespace selftaught {

namespace {

// Position k of the combined action + reinforcement sequence.
double& position(Genome& g, std::size_t k) {
  const std::size_t n = g.innate_action.size();
  return k < n ? g.innate_action.values()[k] : g.innate_reinforcement.values()[k - n];
}

double position(const Genome& g, std::size_t k) {
  const std::size_t n = g.innate_action.size();
  return k < n ? g.innate_action.values()[k] : g.innate_reinforcement.values()[k - n];
}

std::size_t roulette(std::span<const long> fitnesses, long total, double u) {
  const double target = u * static_cast<double>(total);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    cumulative += static_cast<double>(fitnesses[i]);
    if (fitnesses[i] > 0 && target < cumulative) return i;
  }
  // Rounding fallback: last index with positive mass.
  for (std::size_t i = fitnesses.size(); i-- > 0;) {
    if (fitnesses[i] > 0) return i;
  }
  return 0;
}

}  // namespace

bool Genome::same_shape(const Genome& other) const {
  return innate_action.spec() == other.innate_action.spec() &&
         innate_reinforcement.spec() == other.innate_reinforcement.spec();
}

void EvolutionParams::validate() const {
  if (population_size == 0) throw ConfigError("population_size", "must be at least 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw ConfigError("mutation_rate", "must lie in [0, 1]");
  }
  if (!(mutation_amplitude >= 0.0) || !std::isfinite(mutation_amplitude)) {
    throw ConfigError("mutation_amplitude", "must be a finite number >= 0");
  }
}

Genome random_genome(const LayerSpec& spec, Rng& rng) {
  Genome g;
  g.innate_action = init_weights(spec, rng);
  g.innate_reinforcement = init_weights(spec, rng);
  return g;
}

SelfTaughtController spawn_phenotype(const Genome& genome, double learning_rate) {
  SelfTaughtController c{genome.innate_action, genome.innate_reinforcement, learning_rate};
  c.validate();
  return c;
}

std::pair<std::size_t, std::size_t> select_parent_pair(std::span<const long> fitnesses, Rng& rng) {
  if (fitnesses.empty()) throw InvalidGenome("cannot select from an empty population");
  long total = 0;
  for (long f : fitnesses) {
    if (f < 0) throw InvalidGenome("fitness must be non-negative");
    total += f;
  }
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  if (total == 0) {
    auto uniform_index = [&](double u) {
      const auto i = static_cast<std::size_t>(u * static_cast<double>(fitnesses.size()));
      return i < fitnesses.size() ? i : fitnesses.size() - 1;
    };
    return {uniform_index(u1), uniform_index(u2)};
  }
  return {roulette(fitnesses, total, u1), roulette(fitnesses, total, u2)};
}

Genome crossover(const Genome& first, long first_fitness, const Genome& second, long second_fitness,
                 Rng& rng) {
  if (!first.same_shape(second)) throw InvalidGenome("crossover parents have different shapes");
  const bool first_fitter = first_fitness >= second_fitness;
  const Genome& fitter = first_fitter ? first : second;
  const Genome& other = first_fitter ? second : first;

  Genome child = fitter;
  for (std::size_t k = 0; k < child.size(); ++k) {
    if (!(rng.uniform01() > 0.5)) position(child, k) = position(other, k);
  }
  return child;
}

Genome mutate(Genome genome, const EvolutionParams& params, Rng& rng) {
  for (std::size_t k = 0; k < genome.size(); ++k) {
    if (rng.uniform01() < params.mutation_rate) {
      position(genome, k) += rng.uniform(-params.mutation_amplitude, params.mutation_amplitude);
    }
  }
  return genome;
}

std::vector<Genome> next_generation(std::span<const Genome> genomes, std::span<const long> fitnesses,
                                    const EvolutionParams& params, Rng& rng) {
  params.validate();
  if (genomes.size() != fitnesses.size()) {
    throw InvalidGenome("genome and fitness counts differ: " + std::to_string(genomes.size()) + " vs " +
                        std::to_string(fitnesses.size()));
  }
  std::vector<Genome> children;
  children.reserve(params.population_size);
  while (children.size() < params.population_size) {
    const auto [a, b] = select_parent_pair(fitnesses, rng);
    Genome child = crossover(genomes[a], fitnesses[a], genomes[b], fitnesses[b], rng);
    children.push_back(mutate(std::move(child), params, rng));
  }
  return children;
}

}  // namespace selftaught
