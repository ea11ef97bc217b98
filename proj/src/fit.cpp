#include "modwave/fit.hpp"

#include <cmath>
#include <string>

#include "modwave/types.hpp"

namespace modwave {

DecayFit fit_decay(std::span<const std::pair<double, double>> samples, int log_correction_power) {
  if (samples.size() < 3) throw InvalidArgument("fit_decay: needs at least 3 samples");
  if (log_correction_power < 0) throw InvalidArgument("fit_decay: log correction power must be >= 0");
  const auto n = static_cast<double>(samples.size());
  std::vector<double> X, Y;
  X.reserve(samples.size());
  Y.reserve(samples.size());
  double prev = -INFINITY;
  for (const auto& [t, value] : samples) {
    if (!(t > prev) || !(t > 0.0)) throw InvalidArgument("fit_decay: times must be positive and increasing");
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw InvalidArgument("fit_decay: nonpositive value " + std::to_string(value) + " at t = " + std::to_string(t));
    }
    prev = t;
    const double lt = std::log(t);
    X.push_back(lt);
    Y.push_back(log_correction_power > 0 ? std::log(value) - log_correction_power * std::log1p(lt) : std::log(value));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::min(1.0, std::max(0.0, sxy * sxy / (sxx * syy))) : 1.0;
  fit.n_points = static_cast<int>(samples.size());
  fit.log_correction_power = log_correction_power;
  return fit;
}

std::vector<std::pair<double, double>> window(std::span<const std::pair<double, double>> samples, double lo,
                                              double hi) {
  std::vector<std::pair<double, double>> out;
  for (const auto& s : samples) {
    if (s.first >= lo * (1 - 1e-12) && s.first <= hi * (1 + 1e-12)) out.push_back(s);
  }
  return out;
}

std::vector<double> log_times(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo) || per_decade < 1) throw InvalidArgument("log_times: bad range");
  const int count = std::max(2, static_cast<int>(std::lround(std::log10(hi / lo) * per_decade)) + 1);
  std::vector<double> t(count);
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int k = 0; k < count; ++k) t[k] = lo * std::exp(ratio * k);
  t.front() = lo;
  t.back() = hi;
  return t;
}

}  // namespace modwave
