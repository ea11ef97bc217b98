#pragma once

#include <optional>
#include <vector>

#include "modwave/trilinear.hpp"

namespace modwave {

/// Log-spaced nodes T = t_0 < ... < t_{n-1} = t_max.
class TimeGrid {
 public:
  TimeGrid(double T, double t_max, int count);

  /// Count chosen as round(per_decade * log10(t_max / T)) + 1.
  static TimeGrid per_decade(double T, double t_max, int per_decade);
  static TimeGrid from(const SolverParams& params);

  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t k) const { return nodes_[k]; }
  std::span<const double> nodes() const { return nodes_; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  /// Constant spacing in log t.
  double log_step() const { return log_step_; }

 private:
  std::vector<double> nodes_;
  double log_step_;
};

struct ProfileTrajectory {
  TimeGrid time_grid;
  std::vector<FrequencyField> fields;
  /// Set by backward integrals: estimated size (sup norm) of the part of the
  /// integral beyond t_max. Never added to `fields`.
  double tail_estimate = 0.0;
  /// False when the integrand did not decay over the last decade.
  bool tail_valid = true;

  static ProfileTrajectory zeros(const TimeGrid& tg, const GridPtr& grid);
  std::size_t size() const { return fields.size(); }
  const GridPtr& grid_ptr() const { return fields.front().grid_ptr(); }
  /// Throws unless there is one field per node, all on one grid.
  void validate() const;
};

ProfileTrajectory operator-(const ProfileTrajectory& a, const ProfileTrajectory& b);
ProfileTrajectory operator+(const ProfileTrajectory& a, const ProfileTrajectory& b);
ProfileTrajectory operator*(cplx c, const ProfileTrajectory& a);

class TailFitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// All partial integrals int_{t_k}^{t_max} of the integrand at once: trapezoid
/// rule in log t, accumulated from the top node down. The power-law tail beyond
/// t_max is fitted on the last decade and reported in tail_estimate; throws
/// TailFitError when the integrand norm is not decreasing there.
ProfileTrajectory backward_integrals(const ProfileTrajectory& integrand);

FrequencyField backward_integral(const ProfileTrajectory& integrand, std::size_t k);

/// sup_k t_k^alpha (|g|_inf + |g|_2 + |dg|_2 / (1 + log t_k))
double xt_norm(const ProfileTrajectory& g, double alpha);

/// -i int_t^{t_max} U(-s) eps(s) ds
ProfileTrajectory phi_eps(const FinalData& data, const SolverParams& params, const TimeGrid& tg);

/// i lambda int_t^{t_max} U(-s) (|u_app + w|^2 (u_app + w) - |u_app|^2 u_app) ds, w = U(s) g(s).
ProfileTrajectory phi_nl(const ProfileTrajectory& g, const FinalData& data, const SolverParams& params);

/// phi_nl(g) + phi_eps_cached. The tail estimates of both parts are summed.
ProfileTrajectory apply_phi(const ProfileTrajectory& g, const FinalData& data, const SolverParams& params,
                            const ProfileTrajectory& phi_eps_cached);

struct PicardReport {
  int iterates = 0;
  std::vector<double> xt_norms;            ///< |g_n|_{X_T} for n = 1, 2, ...
  std::vector<double> step_distances;      ///< |g_n - g_{n-1}|_{X_T}
  std::vector<double> contraction_ratios;  ///< successive quotients of step_distances
  bool converged = false;
  double tail_estimate = 0.0;
  double fixed_point_residual = 0.0;  ///< |Phi(g*) - g*|_{X_T}, one extra application
  double phi_eps_norm = 0.0;          ///< |Phi_eps|_{X_T}
};

struct PicardResult {
  ProfileTrajectory g;
  PicardReport report;
};

/// Numerical blow-up guard for the iteration.
inline constexpr double kBlowUpNorm = 1e6;

/// g_{n+1} = Phi(g_n) from g_0 = 0 (or `initial`) until the X_T step is <= tol.
/// Reaching max_iter yields an unconverged report; a norm above kBlowUpNorm throws.
PicardResult picard_iterate(const FinalData& data, const SolverParams& params, int max_iter, double tol,
                            const ProfileTrajectory* initial = nullptr,
                            const ProfileTrajectory* phi_eps_cached = nullptr);

/// |Phi(g1) - Phi(g2)|_{X_T} / |g1 - g2|_{X_T}; Phi_eps cancels and is not formed.
double contraction_probe(const ProfileTrajectory& g1, const ProfileTrajectory& g2, const FinalData& data,
                         const SolverParams& params);

/// A smooth trajectory r (T/t)^{1/2} B(xi) with B a random band-limited shape,
/// scaled so that its X_T norm equals `radius`.
ProfileTrajectory random_trajectory(const TimeGrid& tg, const GridPtr& grid, double alpha, double radius,
                                    std::uint64_t seed);

}  // namespace modwave
