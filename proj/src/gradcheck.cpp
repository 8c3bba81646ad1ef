#include "selftaught/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace selftaught {

GradCheckReport run_gradient_check(const GradCheckOptions& options) {
  options.spec.validate();
  Rng rng(options.seed);
  GradCheckReport report;

  std::vector<double> input(options.spec.n_input);
  for (std::size_t t = 0; t < options.trials; ++t) {
    SelfTaughtController c{init_weights(options.spec, rng), init_weights(options.spec, rng), 0.01};
    for (double& x : input) x = rng.uniform01() < 0.5 ? 0.0 : 1.0;

    const auto analytic = teaching_gradient(c, input);
    auto weights = c.action.values();
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const double saved = weights[k];
      weights[k] = saved + options.epsilon;
      const double up = teaching_loss(c, input);
      weights[k] = saved - options.epsilon;
      const double down = teaching_loss(c, input);
      weights[k] = saved;

      const double numeric = (up - down) / (2.0 * options.epsilon);
      const double a = analytic.values()[k];
      const double abs_err = std::abs(a - numeric);
      const double scale = std::max(std::abs(a), std::abs(numeric));
      report.max_absolute_error = std::max(report.max_absolute_error, abs_err);
      if (scale >= options.zero_floor) {
        report.max_relative_error = std::max(report.max_relative_error, abs_err / scale);
      }
      ++report.weights_checked;
    }
    ++report.trials;
  }
  return report;
}

}  // namespace selftaught
