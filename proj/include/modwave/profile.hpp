#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "modwave/spectral.hpp"

namespace modwave {

/// Coefficient of the resonant self-interaction under the f^ = int e^{-ixxi} f
/// convention: |U(t)phi|^2 ~ |phi^(x/t)|^2 / (2 pi t), hence the profile phase
/// rotates at rate |W|^2 / (2 pi t).
inline constexpr double kResonantCoupling = 1.0 / (2.0 * kPi);

struct SolverParams {
  Nonlinearity lambda = Nonlinearity::defocusing;
  double delta = 0.2;
  double alpha = 0.1;
  double eps0 = 0.05;
  double T = 10.0;       ///< construction start time
  double t_max = 1000.0; ///< numerical stand-in for t = infinity
  GridPtr grid;
  int time_grid_points = 129;

  /// 0 < alpha < delta < 1/4, T >= 2, t_max >= 10 T, eps0 >= 0.
  void validate() const;
  double sign() const { return sign_of(lambda); }
};

enum class DataKind { gaussian, bump, random_bandlimited };

DataKind parse_data_kind(std::string_view name);
std::string_view to_string(DataKind kind);

struct FinalData {
  FrequencyField W;
  double eps0_actual = 0.0;     ///< |W|_inf + |W|_{H^2}
  double support_radius = 0.0;  ///< |W| < 1e-7 max|W| beyond this |xi|
};

/// |W|_inf + |W|_{H^2} as measured on the grid.
double final_data_size(const FrequencyField& W);

FinalData make_final_data(DataKind kind, const GridPtr& grid, double eps0, std::uint64_t seed);
FinalData make_final_data(DataKind kind, const SolverParams& params, std::uint64_t seed);

/// Sum of randomly placed gaussian wave packets, |xi| support inside 4,
/// unnormalized. Shared by the random final-data family and the dispersive
/// Monte Carlo.
FrequencyField random_bandlimited_shape(const GridPtr& grid, std::uint64_t seed);

/// Independent stream seed for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// v(t, xi) = W exp(-i lambda kResonantCoupling |W|^2 log t)
FrequencyField asymptotic_profile(const FrequencyField& W, double t, Nonlinearity lambda);
FrequencyField asymptotic_profile(const FinalData& data, double t, Nonlinearity lambda);

/// d/dt v = -(i lambda kResonantCoupling / t) |v|^2 v
FrequencyField profile_time_derivative(const FrequencyField& v, double t, Nonlinearity lambda);

/// u_app(t) = U(t) phi(t) with phi^ = v(t).
PhysicalField approximate_solution(const FinalData& data, double t, const SolverParams& params);

/// CSV rows "xi,re,im" with a header line.
void write_final_data_csv(std::ostream& os, const FinalData& data);
FinalData read_final_data_csv(std::istream& is, const GridPtr& grid);

}  // namespace modwave
