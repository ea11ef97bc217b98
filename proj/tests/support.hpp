#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "modwave/spectral.hpp"

namespace modwave::testing {

template <class Tag>
double max_diff(const Field<Tag>& a, const Field<Tag>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <class Tag>
double max_abs(const Field<Tag>& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i]));
  return d;
}

inline PhysicalField sample_x(const GridPtr& g, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(g->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(g->x()[j]);
  return PhysicalField(g, std::move(v));
}

inline FrequencyField sample_xi(const GridPtr& g, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(g->size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = f(g->xi()[m]);
  return FrequencyField(g, std::move(v));
}

inline std::vector<cplx> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& z : v) {
    const double re = nd(rng);
    z = cplx(re, nd(rng));
  }
  return v;
}

}  // namespace modwave::testing
