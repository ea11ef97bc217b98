#pragma once

#include <span>
#include <vector>

#include "modwave/profile.hpp"

namespace modwave {

struct EvolutionState {
  double t = 0.0;
  PhysicalField u;
  double mass = 0.0;    ///< int |u|^2 dx
  double energy = 0.0;  ///< int |u_x|^2 / 2 + lambda |u|^4 / 2 dx
  long step_count = 0;
};

double mass(const PhysicalField& u);
double energy(const PhysicalField& u, Nonlinearity lambda);
EvolutionState make_state(PhysicalField u, double t, Nonlinearity lambda);

/// Half phase rotation, free flight, half phase rotation.
EvolutionState strang_step(const EvolutionState& state, double dt, Nonlinearity lambda);

inline constexpr double kDefaultDtCap = 0.1;
/// Relative mass drift at which a run is abandoned.
inline constexpr double kMassAbortDrift = 1e-6;

/// States at each sample time. Between samples the interval is cut into equal
/// steps no longer than min(dt_cap, dx^2 / 2); consecutive half rotations
/// are merged. Throws NumericalError on NaN or mass drift beyond kMassAbortDrift.
std::vector<EvolutionState> evolve(const PhysicalField& u0, double t0, std::span<const double> sample_times,
                                   const SolverParams& params, double dt_cap = kDefaultDtCap);

/// Self-convergence order of Strang splitting: runs u0 over [0, t_end] with each
/// step in `dts` and against a reference at min(dts) / 8, and fits the slope
/// of the sup-norm error against dt.
double strang_order(const PhysicalField& u0, double t_end, Nonlinearity lambda, std::span<const double> dts);

/// f^(t) = e^{i t xi^2 / 2} u^(t).
FrequencyField extract_profile(const EvolutionState& state);

/// Norms of f^(t) - v(t).
NormBundle scattering_deviation(const EvolutionState& state, const FinalData& data, const SolverParams& params);

/// (2 pi)^{-1/2} (i t)^{-1/2} e^{i x^2 / 2t} h(x/t) at every grid x, with h
/// interpolated on the frequency grid.
PhysicalField stationary_phase_leading(const FrequencyField& h, double t);

/// max |u(t) - leading|, leading built from v(t) = W e^{-i lambda c |W|^2 log t}.
/// Throws when x/t leaves the frequency grid where u still carries mass.
double asymptotic_error(const EvolutionState& state, const FinalData& data, const SolverParams& params);

/// max |U(t)h - leading| for the free flow.
double stationary_phase_error(const FrequencyField& hhat, double t);

/// |U(t)h|_inf / (t^{-1/2} |h^|_inf + t^{-3/4} |d h^|_2); 0 for h = 0.
double dispersive_ratio(const FrequencyField& hhat, double t);

}  // namespace modwave
