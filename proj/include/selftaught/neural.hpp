#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "selftaught/rng.hpp"

namespace selftaught {

/// Layer sizes of a three-layer, fully connected, bias-free network.
struct LayerSpec {
  std::size_t n_input = 3;
  std::size_t n_hidden = 10;
  std::size_t n_output = 3;

  /// Throws InvalidSpec if any count is zero.
  void validate() const;

  std::size_t input_hidden_count() const { return n_hidden * n_input; }
  std::size_t hidden_output_count() const { return n_output * n_hidden; }
  std::size_t weight_count() const { return input_hidden_count() + hidden_output_count(); }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Weights of one network, stored flat: input->hidden row-major
/// ([hidden][input]) followed by hidden->output row-major ([output][hidden]).
/// The flat order is also the draw order of init_weights and the
/// position order used by crossover and mutation.
class NetworkWeights {
public:
  NetworkWeights() : NetworkWeights(LayerSpec{}) {}
  /// All-zero weights for `spec`.
  explicit NetworkWeights(const LayerSpec& spec);
  NetworkWeights(const LayerSpec& spec, std::vector<double> values);

  const LayerSpec& spec() const { return spec_; }

  double& input_hidden(std::size_t hidden, std::size_t input) {
    return values_[hidden * spec_.n_input + input];
  }
  double input_hidden(std::size_t hidden, std::size_t input) const {
    return values_[hidden * spec_.n_input + input];
  }
  double& hidden_output(std::size_t output, std::size_t hidden) {
    return values_[spec_.input_hidden_count() + output * spec_.n_hidden + hidden];
  }
  double hidden_output(std::size_t output, std::size_t hidden) const {
    return values_[spec_.input_hidden_count() + output * spec_.n_hidden + hidden];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  bool all_finite() const;

  friend bool operator==(const NetworkWeights&, const NetworkWeights&) = default;

private:
  LayerSpec spec_;
  std::vector<double> values_;
};

/// Binary readings of the left, front and right sensors.
struct SensoryInput {
  std::uint8_t left = 0;
  std::uint8_t front = 0;
  std::uint8_t right = 0;

  std::array<double, 3> as_array() const {
    return {static_cast<double>(left), static_cast<double>(front), static_cast<double>(right)};
  }

  friend bool operator==(const SensoryInput&, const SensoryInput&) = default;
};

/// Motor action; the value is the output-neuron index that selects it.
enum class Action : std::uint8_t { TurnLeft = 0, Forward = 1, TurnRight = 2 };

std::string_view to_string(Action action);

/// Action module plus reinforcement module. Only `action` changes during
/// an agent's lifetime.
struct SelfTaughtController {
  NetworkWeights action;
  NetworkWeights reinforcement;
  double learning_rate = 0.01;

  /// Throws InvalidSpec on mismatched input/output sizes or negative rate.
  void validate() const;
};

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Hidden and output activations of one forward pass.
struct Activations {
  std::vector<double> hidden;
  std::vector<double> output;
};

/// Gaussian(0, 1) weights, drawn input->hidden row-major then
/// hidden->output row-major.
NetworkWeights init_weights(const LayerSpec& spec, Rng& rng);

Activations forward_full(const NetworkWeights& w, std::span<const double> input);
std::vector<double> forward(const NetworkWeights& w, std::span<const double> input);
std::vector<double> forward(const NetworkWeights& w, const SensoryInput& input);

/// Argmax over three outputs, lowest index wins ties.
Action choose_action(std::span<const double> outputs);

/// Teaching loss 0.5 * |a - r|^2, where a is the action-module output and r
/// the reinforcement-module output for the same input.
double teaching_loss(const SelfTaughtController& c, std::span<const double> input);

/// Gradient of teaching_loss with respect to the action weights, with the
/// reinforcement output held constant. Same layout as NetworkWeights.
NetworkWeights teaching_gradient(const SelfTaughtController& c, std::span<const double> input);

/// One gradient-descent step of the action module toward the reinforcement
/// module's output. Reinforcement weights are not touched.
void self_teach(SelfTaughtController& c, std::span<const double> input);
void self_teach(SelfTaughtController& c, const SensoryInput& input);

}  // namespace selftaught
