#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "modwave/kernels.hpp"

namespace modwave::kernels {

namespace {

constexpr std::ptrdiff_t kChunk = 2048;

std::ptrdiff_t ssize(std::span<const cplx> v) { return static_cast<std::ptrdiff_t>(v.size()); }

}  // namespace

namespace parallel {

void multiply_chirp(std::span<const cplx> in, std::span<const double> xi, double t, std::span<cplx> out) {
  const std::ptrdiff_t n = ssize(in);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const double theta = -0.5 * t * xi[k] * xi[k];
    out[k] = in[k] * cplx(std::cos(theta), std::sin(theta));
  }
}

void cubic(std::span<const cplx> in, std::span<cplx> out) {
  const std::ptrdiff_t n = ssize(in);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = std::norm(in[j]) * in[j];
}

void cubic_difference(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  const std::ptrdiff_t n = ssize(a);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const cplx aj = a[j];
    const cplx bj = b[j];
    const double na = std::norm(aj);
    const double nb = std::norm(bj);
    out[j] = 2.0 * na * bj + aj * aj * std::conj(bj) + 2.0 * nb * aj + std::conj(aj) * bj * bj + nb * bj;
  }
}

void rotate_phase(std::span<cplx> u, double angle) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double theta = -angle * std::norm(u[j]);
    u[j] *= cplx(std::cos(theta), std::sin(theta));
  }
}

double sum_abs2(std::span<const cplx> v) {
  const std::ptrdiff_t n = ssize(v);
  const std::ptrdiff_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    double s = 0.0;
    const std::ptrdiff_t end = std::min(n, (c + 1) * kChunk);
    for (std::ptrdiff_t j = c * kChunk; j < end; ++j) s += std::norm(v[j]);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

double max_abs(std::span<const cplx> v) {
  const std::ptrdiff_t n = ssize(v);
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t j = 0; j < n; ++j) m = std::max(m, std::abs(v[j]));
  return m;
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace modwave::kernels
