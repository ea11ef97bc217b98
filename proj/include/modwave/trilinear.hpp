#pragma once

#include <cstddef>

#include "modwave/profile.hpp"

namespace modwave {

/// |u|^2 u pointwise; the sign lambda is applied by callers.
PhysicalField cubic(const PhysicalField& u);

/// |a+b|^2 (a+b) - |a|^2 a, expanded so that |b| << |a| loses no digits.
PhysicalField cubic_difference(const PhysicalField& a, const PhysicalField& b);

/// i e^{i s xi^2/2} F[ |u|^2 u ] with u = U(s) f, i.e. the cubic pulled back
/// to the interaction picture at time s.
FrequencyField pulled_back_cubic(const FrequencyField& fhat, double s);

struct TrilinearSplit {
  FrequencyField leading;    ///< resonant part (i kResonantCoupling / s) |f^|^2 f^
  FrequencyField remainder;  ///< pulled_back_cubic - leading
  double s = 0.0;
};

TrilinearSplit trilinear_split(const FrequencyField& fhat, double s);

/// Largest grid the oscillatory-integral oracle accepts (cost is O(N^4)).
inline constexpr std::size_t kOracleMaxPoints = 64;

enum class OracleKernel {
  remainder,  ///< e^{-i a b / s} - 1
  full,       ///< e^{-i a b / s}: reproduces the whole pulled-back cubic
};

/// Direct triple-sum quadrature of
///   (i kResonantCoupling / s) sum_{x,y,z} K((y-z)(x-z)) e^{-i xi (x+y-z)} f(x) f(y) conj f(z) dx^3
/// with f = inverse_transform(fhat) taken as zero outside the box.
/// `kappa` is the overall complex constant fixed by calibrate_oracle.
FrequencyField oscillatory_oracle(const FrequencyField& fhat, double s, OracleKernel kernel, cplx kappa = 1.0);

FrequencyField remainder_oracle(const FrequencyField& fhat, double s, cplx kappa = 1.0);

/// The FFT-route remainder for coarse-grid data: the coarse profile is
/// refined by `factor` (exact interpolation in xi), split there, and sampled
/// back at the coarse frequencies. A 64-point box is far too small to hold
/// the dispersed wave at s ~ 50, hence the detour.
FrequencyField remainder_on_coarse_nodes(const FrequencyField& fhat, double s, std::size_t factor);

struct OracleCalibration {
  cplx kappa;                  ///< least-squares constant mapping oracle onto the FFT route
  double relative_mismatch = 0.0;  ///< max|kappa oracle - fft| / max|fft|
};

OracleCalibration calibrate_oracle(const FrequencyField& fhat, double s, std::size_t factor);

/// eps(t) = i U(t) d_t phi(t) - lambda |u_app|^2 u_app
PhysicalField forcing(const FinalData& data, double t, const SolverParams& params);

/// U(-t) eps(t) on the frequency side.
FrequencyField forcing_profile(const FinalData& data, double t, const SolverParams& params);

enum class RemainderRoute { fft, oracle };

struct ForcingResidual {
  double absolute = 0.0;   ///< max |U(-t)eps - i lambda R|
  double reference = 0.0;  ///< max |U(-t)eps|
  double relative() const { return reference > 0.0 ? absolute / reference : absolute; }
};

/// Checks U(-t)eps = i lambda R, where R is the remainder of trilinear_split
/// applied to v(t). The oracle route needs a grid of at most kOracleMaxPoints
/// points and evaluates U(-t)eps on a box refined by `factor`.
ForcingResidual forcing_identity_residual(const FinalData& data, double t, const SolverParams& params,
                                          RemainderRoute route = RemainderRoute::fft, std::size_t factor = 16);

}  // namespace modwave
