#include "modwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modwave/kernels.hpp"

namespace modwave {

namespace {

// With N/2 even, (-1)^k for k = m - N/2 equals (-1)^m.
double alternating(std::size_t m) { return (m & 1U) != 0U ? -1.0 : 1.0; }

}  // namespace

FrequencyField forward_transform(const PhysicalField& f) {
  const SpectralGrid& g = f.grid();
  const std::size_t n = g.size();
  std::vector<cplx> buf(f.values().begin(), f.values().end());
  for (std::size_t j = 1; j < n; j += 2) buf[j] = -buf[j];
  g.fft_forward(buf);
  const double dx = g.dx();
  for (std::size_t m = 0; m < n; ++m) buf[m] *= dx * alternating(m);
  return FrequencyField(f.grid_ptr(), std::move(buf));
}

PhysicalField inverse_transform(const FrequencyField& F) {
  const SpectralGrid& g = F.grid();
  const std::size_t n = g.size();
  std::vector<cplx> buf(F.values().begin(), F.values().end());
  for (std::size_t m = 1; m < n; m += 2) buf[m] = -buf[m];
  g.fft_backward(buf);
  const double scale = 1.0 / g.box_length();
  for (std::size_t j = 0; j < n; ++j) buf[j] *= scale * alternating(j);
  return PhysicalField(F.grid_ptr(), std::move(buf));
}

FrequencyField free_propagate(const FrequencyField& F, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("free_propagate: non-finite time");
  std::vector<cplx> out(F.size());
  kernels::parallel::multiply_chirp(F.values(), F.grid().xi(), t, out);
  return FrequencyField(F.grid_ptr(), std::move(out));
}

XiDerivative xi_derivative(const FrequencyField& F) {
  const std::size_t n = F.size();
  const auto v = F.values();
  const double inv = 1.0 / (12.0 * F.grid().dxi());
  std::vector<cplx> d(n);
  for (std::size_t m = 2; m + 2 < n; ++m) {
    d[m] = (v[m - 2] - 8.0 * v[m - 1] + 8.0 * v[m + 1] - v[m + 2]) * inv;
  }
  d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) * inv;
  d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) * inv;
  d[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) * inv;
  d[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) * inv;

  const double cut = 0.9 * F.grid().xi_max();
  double outer = 0.0;
  double total = 0.0;
  const auto xi = F.grid().xi();
  for (std::size_t m = 0; m < n; ++m) {
    const double w = std::norm(v[m]);
    total += w;
    if (std::abs(xi[m]) > cut) outer += w;
  }
  const double fraction = total > 0.0 ? outer / total : 0.0;
  return XiDerivative{FrequencyField(F.grid_ptr(), std::move(d)), fraction, fraction <= 1e-8};
}

NormBundle norms(const FrequencyField& F) {
  const double dxi = F.grid().dxi();
  NormBundle nb;
  nb.linf = kernels::parallel::max_abs(F.values());
  const double l2sq = dxi * kernels::parallel::sum_abs2(F.values());
  nb.l2 = std::sqrt(l2sq);
  const FrequencyField d1 = xi_derivative(F).derivative;
  const double d1sq = dxi * kernels::parallel::sum_abs2(d1.values());
  nb.dxi_l2 = std::sqrt(d1sq);
  const FrequencyField d2 = xi_derivative(d1).derivative;
  const double d2sq = dxi * kernels::parallel::sum_abs2(d2.values());
  nb.h2 = std::sqrt(l2sq + d1sq + d2sq);
  return nb;
}

double physical_l2(const PhysicalField& u) {
  return std::sqrt(u.grid().dx() * kernels::parallel::sum_abs2(u.values()));
}

double physical_linf(const PhysicalField& u) { return kernels::parallel::max_abs(u.values()); }

double frequency_linf(const FrequencyField& F) { return kernels::parallel::max_abs(F.values()); }

double xt_weight(double t, const NormBundle& n, double alpha) {
  if (!(t >= 2.0)) throw InvalidArgument("xt_weight: requires t >= 2");
  return std::pow(t, alpha) * (n.linf + n.l2 + n.dxi_l2 / (1.0 + std::log(t)));
}

double xt_weight(double t, const FrequencyField& F, double alpha) {
  if (!(t >= 2.0)) throw InvalidArgument("xt_weight: requires t >= 2");
  return xt_weight(t, norms(F), alpha);
}

FrequencyField refine(const FrequencyField& F, std::size_t factor) {
  if (factor == 0 || (factor & (factor - 1)) != 0) throw InvalidArgument("refine: factor must be a power of two");
  if (factor == 1) return F;
  const SpectralGrid& g = F.grid();
  const std::size_t n = g.size();
  auto fine = SpectralGrid::make(n * factor, g.box_length() * static_cast<double>(factor));
  const PhysicalField f = inverse_transform(F);
  std::vector<cplx> padded(fine->size());
  const std::size_t offset = (factor - 1) * n / 2;
  std::copy(f.values().begin(), f.values().end(), padded.begin() + static_cast<std::ptrdiff_t>(offset));
  return forward_transform(PhysicalField(fine, std::move(padded)));
}

double effective_support(const FrequencyField& F, double rel) {
  const double peak = frequency_linf(F);
  if (peak == 0.0) return 0.0;
  const auto xi = F.grid().xi();
  double r = 0.0;
  for (std::size_t m = 0; m < F.size(); ++m) {
    if (std::abs(F[m]) > rel * peak) r = std::max(r, std::abs(xi[m]));
  }
  return r;
}

void require_coverage(const SpectralGrid& grid, double support, double t_max) {
  const double needed = 2.0 * t_max * support;
  if (grid.box_length() < needed) {
    std::ostringstream os;
    os << "box_length " << grid.box_length() << " too small: a profile supported in |xi| <= " << support
       << " spreads over |x| <= " << t_max * support << " by t = " << t_max << " (need box_length >= " << needed
       << ")";
    throw InvalidArgument(os.str());
  }
}

cplx interpolate_cubic(const FrequencyField& F, double xi) {
  const SpectralGrid& g = F.grid();
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const double pos = xi / g.dxi() + static_cast<double>(n / 2);
  if (pos < 0.0 || pos > static_cast<double>(n - 1)) return cplx{};
  auto base = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
  base = std::clamp<std::ptrdiff_t>(base, 0, n - 4);
  const double s = pos - static_cast<double>(base);
  // Lagrange weights for nodes at 0, 1, 2, 3.
  const double w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
  const double w1 = s * (s - 2.0) * (s - 3.0) / 2.0;
  const double w2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
  const double w3 = s * (s - 1.0) * (s - 2.0) / 6.0;
  const auto v = F.values();
  return w0 * v[base] + w1 * v[base + 1] + w2 * v[base + 2] + w3 * v[base + 3];
}

}  // namespace modwave
