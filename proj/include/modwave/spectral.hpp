#pragma once

#include <cstddef>

#include "modwave/field.hpp"

namespace modwave {

/// Continuum-normalized transform f^(xi) = int e^{-i x xi} f(x) dx, discretized
/// as a dx-weighted DFT with the box-offset phase folded in.
FrequencyField forward_transform(const PhysicalField& f);

/// f(x) = (2pi)^{-1} int e^{i x xi} f^(xi) dxi; exact inverse of forward_transform.
PhysicalField inverse_transform(const FrequencyField& F);

/// Free Schrodinger flow on the frequency side: multiplication by exp(-i t xi^2/2).
FrequencyField free_propagate(const FrequencyField& F, double t);

struct XiDerivative {
  FrequencyField derivative;
  /// Fraction of sum|F|^2 sitting at |xi| > 0.9 xi_max.
  double outer_band_fraction = 0.0;
  /// False when outer_band_fraction exceeds 1e-8; the stencil then sees the
  /// grid edge and the derivative should not be trusted.
  bool reliable = true;
};

/// Fourth-order centred difference in xi, one-sided fourth-order closure on
/// the two outermost nodes at each end.
XiDerivative xi_derivative(const FrequencyField& F);

struct NormBundle {
  double linf = 0.0;
  double l2 = 0.0;      ///< sqrt(dxi * sum |F|^2)
  double dxi_l2 = 0.0;  ///< L2 norm of dF/dxi
  double h2 = 0.0;      ///< sqrt(l2^2 + |F'|^2 + |F''|^2)
};

NormBundle norms(const FrequencyField& F);

double physical_l2(const PhysicalField& u);
double physical_linf(const PhysicalField& u);
double frequency_linf(const FrequencyField& F);

/// t^alpha (|F|_inf + |F|_2 + |dF|_2 / (1 + log t)); requires t >= 2.
double xt_weight(double t, const FrequencyField& F, double alpha);
double xt_weight(double t, const NormBundle& n, double alpha);

/// Same function on a box `factor` times larger: the x-samples are zero
/// padded, which interpolates exactly in xi. Every factor-th frequency of the
/// result coincides with a frequency of the input grid.
FrequencyField refine(const FrequencyField& F, std::size_t factor);

/// Largest |xi| at which |F| exceeds rel * max|F| (0 for the zero field).
double effective_support(const FrequencyField& F, double rel = 1e-7);

/// A wave with frequency support |xi| <= support reaches |x| = t * support by
/// time t. Throws unless the box covers that out to t_max.
void require_coverage(const SpectralGrid& grid, double support, double t_max);

/// Four-point Lagrange interpolation of F at xi (0 outside the grid).
cplx interpolate_cubic(const FrequencyField& F, double xi);

}  // namespace modwave
