#include "modwave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modwave/fit.hpp"
#include "modwave/kernels.hpp"

namespace modwave {

double mass(const PhysicalField& u) { return u.grid().dx() * kernels::parallel::sum_abs2(u.values()); }

double energy(const PhysicalField& u, Nonlinearity lambda) {
  const FrequencyField U = forward_transform(u);
  const SpectralGrid& g = u.grid();
  const auto xi = g.xi();
  double kinetic = 0.0;
  for (std::size_t m = 0; m < U.size(); ++m) kinetic += xi[m] * xi[m] * std::norm(U[m]);
  kinetic *= 0.5 * g.dxi() / (2.0 * kPi);
  double quartic = 0.0;
  for (const cplx& z : u.values()) quartic += std::norm(z) * std::norm(z);
  quartic *= 0.5 * g.dx();
  return kinetic + sign_of(lambda) * quartic;
}

EvolutionState make_state(PhysicalField u, double t, Nonlinearity lambda) {
  const double m = mass(u);
  const double e = energy(u, lambda);
  return EvolutionState{t, std::move(u), m, e, 0};
}

namespace {

/// Free flight over dt on raw samples: FFT, chirp (with 1/N folded in), inverse FFT.
class FreeFlight {
 public:
  FreeFlight(const SpectralGrid& grid, double dt) : grid_(grid), chirp_(grid.size()) {
    const std::size_t n = grid.size();
    const double dxi = grid.dxi();
    for (std::size_t q = 0; q < n; ++q) {
      const double k = q < n / 2 ? static_cast<double>(q) : static_cast<double>(q) - static_cast<double>(n);
      const double xi = k * dxi;
      chirp_[q] = std::polar(1.0 / static_cast<double>(n), -0.5 * dt * xi * xi);
    }
  }

  void apply(std::span<cplx> u) const {
    grid_.fft_forward(u);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < n; ++q) u[q] *= chirp_[q];
    grid_.fft_backward(u);
  }

 private:
  const SpectralGrid& grid_;
  std::vector<cplx> chirp_;
};

void require_finite(std::span<const cplx> u, double t) {
  for (const cplx& z : u) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      std::ostringstream os;
      os << "evolution produced a non-finite value at t = " << t;
      throw NumericalError(os.str());
    }
  }
}

}  // namespace

EvolutionState strang_step(const EvolutionState& state, double dt, Nonlinearity lambda) {
  if (!(dt > 0.0)) throw InvalidArgument("strang_step: requires dt > 0");
  std::vector<cplx> u(state.u.values().begin(), state.u.values().end());
  const double half = 0.5 * sign_of(lambda) * dt;
  kernels::parallel::rotate_phase(u, half);
  FreeFlight(state.u.grid(), dt).apply(u);
  kernels::parallel::rotate_phase(u, half);
  EvolutionState next = make_state(PhysicalField(state.u.grid_ptr(), std::move(u)), state.t + dt, lambda);
  next.step_count = state.step_count + 1;
  return next;
}

std::vector<EvolutionState> evolve(const PhysicalField& u0, double t0, std::span<const double> sample_times,
                                   const SolverParams& params, double dt_cap) {
  if (!(dt_cap > 0.0)) throw InvalidArgument("evolve: dt cap must be positive");
  double prev = t0;
  for (double t : sample_times) {
    if (!(t >= prev)) throw InvalidArgument("evolve: sample times must be increasing and start at or after t0");
    prev = t;
  }
  const SpectralGrid& grid = u0.grid();
  const double dt_max = std::min(dt_cap, 0.5 * grid.dx() * grid.dx());
  const double sign = params.sign();

  std::vector<EvolutionState> out;
  out.reserve(sample_times.size());
  std::vector<cplx> u(u0.values().begin(), u0.values().end());
  const double m0 = mass(u0);
  double t = t0;
  long steps = 0;
  for (double target : sample_times) {
    const double interval = target - t;
    if (interval > 0.0) {
      const long n = static_cast<long>(std::ceil(interval / dt_max * (1.0 - 1e-12)));
      const double dt = interval / static_cast<double>(n);
      const FreeFlight flight(grid, dt);
      kernels::parallel::rotate_phase(u, 0.5 * sign * dt);
      for (long k = 0; k < n; ++k) {
        flight.apply(u);
        kernels::parallel::rotate_phase(u, (k + 1 < n ? 1.0 : 0.5) * sign * dt);
      }
      steps += n;
      t = target;
    }
    require_finite(u, t);
    EvolutionState s = make_state(PhysicalField(u0.grid_ptr(), u), t, params.lambda);
    s.step_count = steps;
    if (m0 > 0.0 && std::abs(s.mass - m0) > kMassAbortDrift * m0) {
      std::ostringstream os;
      os << "mass drift " << std::abs(s.mass - m0) / m0 << " exceeds " << kMassAbortDrift << " at t = " << t;
      throw NumericalError(os.str());
    }
    out.push_back(std::move(s));
  }
  return out;
}

double strang_order(const PhysicalField& u0, double t_end, Nonlinearity lambda, std::span<const double> dts) {
  if (dts.size() < 3) throw InvalidArgument("strang_order: needs at least 3 step sizes");
  auto run = [&](double dt) {
    const long n = std::lround(t_end / dt);
    if (n < 1 || std::abs(n * dt - t_end) > 1e-9 * t_end) throw InvalidArgument("strang_order: dt must divide t_end");
    EvolutionState s = make_state(u0, 0.0, lambda);
    for (long k = 0; k < n; ++k) s = strang_step(s, dt, lambda);
    return s.u;
  };
  std::vector<double> sorted(dts.begin(), dts.end());
  std::sort(sorted.begin(), sorted.end());
  const PhysicalField ref = run(sorted.front() / 8.0);
  std::vector<std::pair<double, double>> err;
  for (double dt : sorted) err.emplace_back(dt, physical_linf(run(dt) - ref));
  return fit_decay(err).slope;
}

FrequencyField extract_profile(const EvolutionState& state) {
  return free_propagate(forward_transform(state.u), -state.t);
}

NormBundle scattering_deviation(const EvolutionState& state, const FinalData& data, const SolverParams& params) {
  return norms(extract_profile(state) - asymptotic_profile(data.W, state.t, params.lambda));
}

PhysicalField stationary_phase_leading(const FrequencyField& h, double t) {
  if (!(t > 0.0)) throw InvalidArgument("stationary_phase_leading: requires t > 0");
  const SpectralGrid& g = h.grid();
  const auto x = g.x();
  // (2 pi)^{-1/2} (i t)^{-1/2} = (2 pi t)^{-1/2} e^{-i pi/4}
  const cplx pre = std::polar(1.0 / std::sqrt(2.0 * kPi * t), -0.25 * kPi);
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = pre * std::polar(1.0, x[j] * x[j] / (2.0 * t)) * interpolate_cubic(h, x[j] / t);
  }
  return PhysicalField(h.grid_ptr(), std::move(out));
}

namespace {

void require_interpolation_range(const PhysicalField& u, double t) {
  const SpectralGrid& g = u.grid();
  const auto x = g.x();
  const double total = mass(u);
  const double limit = g.xi_max() - 2.0 * g.dxi();
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (std::abs(x[j]) / t > limit && std::norm(u[j]) * g.dx() > 1e-10 * total) {
      std::ostringstream os;
      os << "asymptotic_error: x/t = " << x[j] / t << " leaves the frequency grid where u carries mass";
      throw NumericalError(os.str());
    }
  }
}

}  // namespace

double asymptotic_error(const EvolutionState& state, const FinalData& data, const SolverParams& params) {
  if (!(state.t > 0.0)) throw InvalidArgument("asymptotic_error: requires t > 0");
  require_interpolation_range(state.u, state.t);
  const PhysicalField lead = stationary_phase_leading(asymptotic_profile(data.W, state.t, params.lambda), state.t);
  return physical_linf(state.u - lead);
}

double stationary_phase_error(const FrequencyField& hhat, double t) {
  const PhysicalField u = inverse_transform(free_propagate(hhat, t));
  require_interpolation_range(u, t);
  return physical_linf(u - stationary_phase_leading(hhat, t));
}

double dispersive_ratio(const FrequencyField& hhat, double t) {
  if (!(t >= 1.0)) throw InvalidArgument("dispersive_ratio: requires t >= 1");
  const NormBundle n = norms(hhat);
  const double denom = std::pow(t, -0.5) * n.linf + std::pow(t, -0.75) * n.dxi_l2;
  if (denom == 0.0) return 0.0;
  return physical_linf(inverse_transform(free_propagate(hhat, t))) / denom;
}

}  // namespace modwave
