#include "modwave/fixedpoint.hpp"

#include <cmath>
#include <sstream>

#include "modwave/fit.hpp"
#include "modwave/kernels.hpp"

namespace modwave {

TimeGrid::TimeGrid(double T, double t_max, int count) {
  if (!(T >= 2.0)) throw InvalidArgument("TimeGrid: first node must be >= 2");
  if (!(t_max > T)) throw InvalidArgument("TimeGrid: t_max must exceed T");
  if (count < 3) throw InvalidArgument("TimeGrid: needs at least 3 nodes");
  log_step_ = std::log(t_max / T) / (count - 1);
  nodes_.resize(count);
  for (int k = 0; k < count; ++k) nodes_[k] = T * std::exp(log_step_ * k);
  nodes_.front() = T;
  nodes_.back() = t_max;
}

TimeGrid TimeGrid::per_decade(double T, double t_max, int per_decade) {
  const int count = static_cast<int>(std::lround(per_decade * std::log10(t_max / T))) + 1;
  return TimeGrid(T, t_max, std::max(count, 3));
}

TimeGrid TimeGrid::from(const SolverParams& params) { return TimeGrid(params.T, params.t_max, params.time_grid_points); }

ProfileTrajectory ProfileTrajectory::zeros(const TimeGrid& tg, const GridPtr& grid) {
  return ProfileTrajectory{tg, std::vector<FrequencyField>(tg.size(), FrequencyField(grid))};
}

void ProfileTrajectory::validate() const {
  if (fields.size() != time_grid.size() || fields.empty()) {
    throw InvalidArgument("trajectory has " + std::to_string(fields.size()) + " fields for " +
                          std::to_string(time_grid.size()) + " nodes");
  }
  for (const auto& f : fields) {
    if (!f.grid().same_as(fields.front().grid())) throw InvalidArgument("trajectory fields live on different grids");
  }
}

namespace {

void require_compatible(const ProfileTrajectory& a, const ProfileTrajectory& b) {
  a.validate();
  b.validate();
  if (a.size() != b.size()) throw InvalidArgument("trajectories have different lengths");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a.time_grid[k] - b.time_grid[k]) > 1e-12 * a.time_grid[k]) {
      throw InvalidArgument("trajectories live on different time grids");
    }
  }
}

template <class Op>
ProfileTrajectory combine(const ProfileTrajectory& a, const ProfileTrajectory& b, Op op) {
  require_compatible(a, b);
  ProfileTrajectory out{a.time_grid, {}};
  out.fields.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.fields.push_back(op(a.fields[k], b.fields[k]));
  return out;
}

}  // namespace

ProfileTrajectory operator-(const ProfileTrajectory& a, const ProfileTrajectory& b) {
  return combine(a, b, [](const FrequencyField& x, const FrequencyField& y) { return x - y; });
}

ProfileTrajectory operator+(const ProfileTrajectory& a, const ProfileTrajectory& b) {
  return combine(a, b, [](const FrequencyField& x, const FrequencyField& y) { return x + y; });
}

ProfileTrajectory operator*(cplx c, const ProfileTrajectory& a) {
  ProfileTrajectory out{a.time_grid, {}};
  out.fields.reserve(a.size());
  for (const auto& f : a.fields) out.fields.push_back(c * f);
  return out;
}

namespace {

/// Power-law tail C s^b fitted to the last decade of the sup norms.
double tail_estimate(const TimeGrid& tg, const std::vector<double>& sup) {
  const double t_max = tg.back();
  std::vector<std::pair<double, double>> samples;
  bool any = false;
  for (std::size_t k = 0; k < tg.size(); ++k) {
    if (tg[k] < t_max / 10.0 * (1 - 1e-12)) continue;
    any = any || sup[k] > 0.0;
    if (sup[k] > 0.0) samples.emplace_back(tg[k], sup[k]);
  }
  if (!any) return 0.0;
  if (samples.size() < 3) throw TailFitError("tail fit: fewer than 3 nonzero samples in the last decade");
  const DecayFit fit = fit_decay(samples);
  if (!(fit.slope < 0.0)) {
    std::ostringstream os;
    os << "tail fit: integrand norm does not decrease over the last decade (slope " << fit.slope << ")";
    throw TailFitError(os.str());
  }
  if (fit.slope >= -1.0) return INFINITY;
  return std::exp(fit.intercept) * std::pow(t_max, fit.slope + 1.0) / (-fit.slope - 1.0);
}

}  // namespace

namespace {

// d s = s d(log s): trapezoid on the uniform log grid, accumulated downward.
ProfileTrajectory cumulate(const ProfileTrajectory& integrand) {
  integrand.validate();
  const TimeGrid& tg = integrand.time_grid;
  const std::size_t n = tg.size();
  const double h = tg.log_step();
  std::vector<cplx> acc(integrand.fields.front().size());
  std::vector<FrequencyField> out(n, FrequencyField(integrand.grid_ptr()));
  for (std::size_t k = n - 1; k-- > 0;) {
    const auto lo = integrand.fields[k].values();
    const auto hi = integrand.fields[k + 1].values();
    const double wl = 0.5 * h * tg[k];
    const double wh = 0.5 * h * tg[k + 1];
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += wl * lo[m] + wh * hi[m];
    out[k] = FrequencyField(integrand.grid_ptr(), acc);
  }
  return ProfileTrajectory{tg, std::move(out)};
}

std::vector<double> sup_norms(const ProfileTrajectory& g) {
  std::vector<double> sup(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) sup[k] = frequency_linf(g.fields[k]);
  return sup;
}

}  // namespace

ProfileTrajectory backward_integrals(const ProfileTrajectory& integrand) {
  ProfileTrajectory result = cumulate(integrand);
  result.tail_estimate = tail_estimate(integrand.time_grid, sup_norms(integrand));
  return result;
}

FrequencyField backward_integral(const ProfileTrajectory& integrand, std::size_t k) {
  if (k >= integrand.size()) throw InvalidArgument("backward_integral: node index out of range");
  return backward_integrals(integrand).fields[k];
}

double xt_norm(const ProfileTrajectory& g, double alpha) {
  g.validate();
  double best = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) best = std::max(best, xt_weight(g.time_grid[k], g.fields[k], alpha));
  return best;
}

namespace {

ProfileTrajectory integrate_or_flag(const ProfileTrajectory& integrand) {
  ProfileTrajectory result = cumulate(integrand);
  try {
    result.tail_estimate = tail_estimate(integrand.time_grid, sup_norms(integrand));
  } catch (const TailFitError&) {
    result.tail_estimate = INFINITY;
    result.tail_valid = false;
  }
  return result;
}

}  // namespace

ProfileTrajectory phi_eps(const FinalData& data, const SolverParams& params, const TimeGrid& tg) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(tg.size());
  ProfileTrajectory integrand = ProfileTrajectory::zeros(tg, data.W.grid_ptr());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    integrand.fields[k] = cplx(0.0, -1.0) * forcing_profile(data, tg[k], params);
  }
  return integrate_or_flag(integrand);
}

ProfileTrajectory phi_nl(const ProfileTrajectory& g, const FinalData& data, const SolverParams& params) {
  g.validate();
  if (!g.grid_ptr()->same_as(data.W.grid())) throw InvalidArgument("phi_nl: trajectory and data on different grids");
  const TimeGrid& tg = g.time_grid;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(tg.size());
  const cplx i_lambda = kI * params.sign();
  ProfileTrajectory integrand = ProfileTrajectory::zeros(tg, data.W.grid_ptr());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const double s = tg[k];
    if (kernels::serial::max_abs(g.fields[k].values()) == 0.0) continue;
    const PhysicalField u_app = inverse_transform(free_propagate(asymptotic_profile(data.W, s, params.lambda), s));
    const PhysicalField w = inverse_transform(free_propagate(g.fields[k], s));
    integrand.fields[k] = i_lambda * free_propagate(forward_transform(cubic_difference(u_app, w)), -s);
  }
  return integrate_or_flag(integrand);
}

ProfileTrajectory apply_phi(const ProfileTrajectory& g, const FinalData& data, const SolverParams& params,
                            const ProfileTrajectory& phi_eps_cached) {
  const ProfileTrajectory nl = phi_nl(g, data, params);
  ProfileTrajectory out = nl + phi_eps_cached;
  out.tail_estimate = nl.tail_estimate + phi_eps_cached.tail_estimate;
  out.tail_valid = nl.tail_valid && phi_eps_cached.tail_valid;
  return out;
}

PicardResult picard_iterate(const FinalData& data, const SolverParams& params, int max_iter, double tol,
                            const ProfileTrajectory* initial, const ProfileTrajectory* phi_eps_cached) {
  params.validate();
  if (!(tol > 0.0)) throw InvalidArgument("picard_iterate: tol must be > 0");
  if (max_iter < 1) throw InvalidArgument("picard_iterate: max_iter must be >= 1");
  const TimeGrid tg = TimeGrid::from(params);
  const ProfileTrajectory eps = phi_eps_cached != nullptr ? *phi_eps_cached : phi_eps(data, params, tg);

  PicardReport report;
  report.phi_eps_norm = xt_norm(eps, params.alpha);
  ProfileTrajectory g = initial != nullptr ? *initial : ProfileTrajectory::zeros(tg, data.W.grid_ptr());
  for (int it = 0; it < max_iter; ++it) {
    ProfileTrajectory next = apply_phi(g, data, params, eps);
    const double norm = xt_norm(next, params.alpha);
    const double dist = xt_norm(next - g, params.alpha);
    if (!std::isfinite(norm) || norm > kBlowUpNorm) {
      std::ostringstream os;
      os << "Picard iteration blew up at iterate " << it + 1 << " (X_T norm " << norm << ")";
      throw NumericalError(os.str());
    }
    report.iterates = it + 1;
    report.xt_norms.push_back(norm);
    if (!report.step_distances.empty() && report.step_distances.back() > 0.0) {
      report.contraction_ratios.push_back(dist / report.step_distances.back());
    }
    report.step_distances.push_back(dist);
    report.tail_estimate = next.tail_estimate;
    g = std::move(next);
    if (dist <= tol) {
      report.converged = true;
      break;
    }
  }
  report.fixed_point_residual = xt_norm(apply_phi(g, data, params, eps) - g, params.alpha);
  return PicardResult{std::move(g), std::move(report)};
}

double contraction_probe(const ProfileTrajectory& g1, const ProfileTrajectory& g2, const FinalData& data,
                         const SolverParams& params) {
  const double denom = xt_norm(g1 - g2, params.alpha);
  if (denom == 0.0) throw InvalidArgument("contraction_probe: g1 and g2 coincide");
  return xt_norm(phi_nl(g1, data, params) - phi_nl(g2, data, params), params.alpha) / denom;
}

ProfileTrajectory random_trajectory(const TimeGrid& tg, const GridPtr& grid, double alpha, double radius,
                                    std::uint64_t seed) {
  const FrequencyField shape = random_bandlimited_shape(grid, seed);
  ProfileTrajectory g{tg, {}};
  g.fields.reserve(tg.size());
  for (std::size_t k = 0; k < tg.size(); ++k) g.fields.push_back(cplx(std::sqrt(tg.front() / tg[k])) * shape);
  const double norm = xt_norm(g, alpha);
  return norm > 0.0 ? cplx(radius / norm) * g : g;
}

}  // namespace modwave
