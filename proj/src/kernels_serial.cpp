#include <algorithm>
#include <cmath>

#include "modwave/kernels.hpp"

namespace modwave::kernels::serial {

void multiply_chirp(std::span<const cplx> in, std::span<const double> xi, double t, std::span<cplx> out) {
  for (std::size_t k = 0; k < in.size(); ++k) {
    const double theta = -0.5 * t * xi[k] * xi[k];
    out[k] = in[k] * cplx(std::cos(theta), std::sin(theta));
  }
}

void cubic(std::span<const cplx> in, std::span<cplx> out) {
  for (std::size_t j = 0; j < in.size(); ++j) out[j] = std::norm(in[j]) * in[j];
}

void cubic_difference(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const cplx aj = a[j];
    const cplx bj = b[j];
    const double na = std::norm(aj);
    const double nb = std::norm(bj);
    out[j] = 2.0 * na * bj + aj * aj * std::conj(bj) + 2.0 * nb * aj + std::conj(aj) * bj * bj + nb * bj;
  }
}

void rotate_phase(std::span<cplx> u, double angle) {
  for (cplx& z : u) {
    const double theta = -angle * std::norm(z);
    z *= cplx(std::cos(theta), std::sin(theta));
  }
}

double sum_abs2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace modwave::kernels::serial
