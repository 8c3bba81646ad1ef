#include "selftaught/neural.hpp"

#include <cmath>
#include <string>

#include "selftaught/errors.hpp"

namespace selftaught {

void LayerSpec::validate() const {
  if (n_input == 0 || n_hidden == 0 || n_output == 0) {
    throw InvalidSpec("layer sizes must be at least 1, got " + std::to_string(n_input) + "/" +
                      std::to_string(n_hidden) + "/" + std::to_string(n_output));
  }
}

NetworkWeights::NetworkWeights(const LayerSpec& spec) : spec_(spec) {
  spec_.validate();
  values_.assign(spec_.weight_count(), 0.0);
}

NetworkWeights::NetworkWeights(const LayerSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != spec_.weight_count()) {
    throw InvalidSpec("expected " + std::to_string(spec_.weight_count()) + " weights, got " +
                      std::to_string(values_.size()));
  }
}

bool NetworkWeights::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string_view to_string(Action action) {
  switch (action) {
    case Action::TurnLeft: return "TURN_LEFT";
    case Action::Forward: return "FORWARD";
    case Action::TurnRight: return "TURN_RIGHT";
  }
  return "UNKNOWN";
}

void SelfTaughtController::validate() const {
  const auto& a = action.spec();
  const auto& r = reinforcement.spec();
  if (a.n_input != r.n_input || a.n_output != r.n_output) {
    throw InvalidSpec("action and reinforcement modules must share input and output sizes");
  }
  if (!(learning_rate >= 0.0)) throw InvalidSpec("learning_rate must be >= 0");
}

NetworkWeights init_weights(const LayerSpec& spec, Rng& rng) {
  NetworkWeights w(spec);
  for (double& v : w.values()) v = rng.normal();
  return w;
}

Activations forward_full(const NetworkWeights& w, std::span<const double> input) {
  const auto& spec = w.spec();
  if (input.size() != spec.n_input) throw InvalidSpec("input size does not match network");

  Activations act;
  act.hidden.resize(spec.n_hidden);
  act.output.resize(spec.n_output);
  for (std::size_t h = 0; h < spec.n_hidden; ++h) {
    double z = 0.0;
    for (std::size_t i = 0; i < spec.n_input; ++i) z += w.input_hidden(h, i) * input[i];
    act.hidden[h] = sigmoid(z);
  }
  for (std::size_t o = 0; o < spec.n_output; ++o) {
    double z = 0.0;
    for (std::size_t h = 0; h < spec.n_hidden; ++h) z += w.hidden_output(o, h) * act.hidden[h];
    act.output[o] = sigmoid(z);
  }
  return act;
}

std::vector<double> forward(const NetworkWeights& w, std::span<const double> input) {
  return forward_full(w, input).output;
}

std::vector<double> forward(const NetworkWeights& w, const SensoryInput& input) {
  const auto x = input.as_array();
  return forward(w, x);
}

Action choose_action(std::span<const double> outputs) {
  if (outputs.size() != 3) throw InvalidSpec("choose_action needs exactly three outputs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    if (outputs[i] > outputs[best]) best = i;
  }
  return static_cast<Action>(best);
}

double teaching_loss(const SelfTaughtController& c, std::span<const double> input) {
  const auto a = forward(c.action, input);
  const auto r = forward(c.reinforcement, input);
  double loss = 0.0;
  for (std::size_t o = 0; o < a.size(); ++o) {
    const double e = a[o] - r[o];
    loss += 0.5 * e * e;
  }
  return loss;
}

NetworkWeights teaching_gradient(const SelfTaughtController& c, std::span<const double> input) {
  const auto& spec = c.action.spec();
  const auto act = forward_full(c.action, input);
  const auto target = forward(c.reinforcement, input);

  // Output deltas: dL/dz_o = (a_o - r_o) * a_o * (1 - a_o).
  std::vector<double> delta_out(spec.n_output);
  for (std::size_t o = 0; o < spec.n_output; ++o) {
    const double a = act.output[o];
    delta_out[o] = (a - target[o]) * a * (1.0 - a);
  }

  NetworkWeights grad(spec);
  for (std::size_t o = 0; o < spec.n_output; ++o) {
    for (std::size_t h = 0; h < spec.n_hidden; ++h) {
      grad.hidden_output(o, h) = delta_out[o] * act.hidden[h];
    }
  }
  for (std::size_t h = 0; h < spec.n_hidden; ++h) {
    double back = 0.0;
    for (std::size_t o = 0; o < spec.n_output; ++o) back += c.action.hidden_output(o, h) * delta_out[o];
    const double hv = act.hidden[h];
    const double delta_hidden = back * hv * (1.0 - hv);
    for (std::size_t i = 0; i < spec.n_input; ++i) grad.input_hidden(h, i) = delta_hidden * input[i];
  }
  return grad;
}

void self_teach(SelfTaughtController& c, std::span<const double> input) {
  if (c.learning_rate == 0.0) return;
  const auto grad = teaching_gradient(c, input);
  auto w = c.action.values();
  const auto g = grad.values();
  for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c.learning_rate * g[k];
}

void self_teach(SelfTaughtController& c, const SensoryInput& input) {
  const auto x = input.as_array();
  self_teach(c, x);
}

}  // namespace selftaught
