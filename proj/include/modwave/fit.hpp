#pragma once

#include <span>
#include <utility>
#include <vector>

namespace modwave {

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  int log_correction_power = 0;  ///< p in value / (1 + log t)^p
};

/// Least squares of log(value) - p log(1 + log t) against log t.
/// Needs at least three samples with increasing t and positive values.
DecayFit fit_decay(std::span<const std::pair<double, double>> samples, int log_correction_power = 0);

/// Samples with t inside [lo, hi].
std::vector<std::pair<double, double>> window(std::span<const std::pair<double, double>> samples, double lo,
                                              double hi);

/// Log-spaced times from lo to hi with `per_decade` points per factor ten.
std::vector<double> log_times(double lo, double hi, int per_decade);

}  // namespace modwave
