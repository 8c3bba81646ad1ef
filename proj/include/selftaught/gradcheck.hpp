#pragma once

#include <cstddef>
#include <cstdint>

#include "selftaught/neural.hpp"

namespace selftaught {

struct GradCheckOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double epsilon = 1e-5;
  /// Weights whose analytic and numeric gradients are both below this
  /// magnitude are compared absolutely instead of relatively.
  double zero_floor = 1e-9;
  LayerSpec spec{};
};

struct GradCheckReport {
  std::size_t trials = 0;
  std::size_t weights_checked = 0;
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
};

/// Compares teaching_gradient() against central finite differences of
/// teaching_loss() on random controllers and random binary inputs.
GradCheckReport run_gradient_check(const GradCheckOptions& options);

}  // namespace selftaught
