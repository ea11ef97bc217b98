#include "modwave/campaigns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "modwave/evolve.hpp"
#include "modwave/kernels.hpp"

namespace modwave {

namespace {

constexpr std::size_t kCoarsePoints = 64;
constexpr double kCoarseBox = 32.0;
constexpr std::size_t kRefineFactor = 16;
constexpr int kFitPerDecade = 8;

double max_over(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : INFINITY;
}

template <class Tag>
double rel_diff(const Field<Tag>& a, const Field<Tag>& ref) {
  double d = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - ref[i]));
    n = std::max(n, std::abs(ref[i]));
  }
  return n > 0.0 ? d / n : d;
}

std::vector<std::pair<double, double>> series(const std::vector<double>& t, const std::vector<double>& v) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.emplace_back(t[i], v[i]);
  return out;
}

std::vector<cplx> random_samples(std::size_t n, std::uint64_t seed) {
  FrequencyField shape = random_bandlimited_shape(SpectralGrid::make(n, static_cast<double>(n) / 8.0), seed);
  // The band-limited shape is smooth; add an independent rough part so every mode is exercised.
  std::vector<cplx> v = std::move(shape).release();
  std::uint64_t s = seed;
  for (auto& z : v) {
    s = derive_seed(s, 1);
    const double a = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
    s = derive_seed(s, 2);
    const double b = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
    z += cplx(a, b);
  }
  return v;
}

SolverParams with_eps0(SolverParams p, double eps0) {
  p.eps0 = eps0;
  return p;
}

SolverParams with_lambda(SolverParams p, Nonlinearity lambda) {
  p.lambda = lambda;
  return p;
}

/// Same W, T scaled by `factor` with t_max / T kept and the box widened to cover it.
SolverParams later_start(const SolverParams& p, double factor) {
  SolverParams q = p;
  q.T = p.T * factor;
  q.t_max = p.t_max * factor;
  const auto f = static_cast<std::size_t>(std::lround(factor));
  q.grid = SpectralGrid::make(p.grid->size() * f, p.grid->box_length() * factor);
  return q;
}

FinalData final_data(const ExperimentConfig& c, const SolverParams& p) {
  return make_final_data(c.data_kind, p, c.seed);
}

std::vector<double> fit_times(const ExperimentConfig& c) { return log_times(c.fit_t_min, c.fit_t_max, kFitPerDecade); }

std::string lambda_tag(Nonlinearity l) { return l == Nonlinearity::defocusing ? "plus" : "minus"; }

}  // namespace

// ---------------------------------------------------------------------------

CampaignResult run_verify_spectral(const ExperimentConfig& c) {
  CampaignResult r;
  r.campaign = "verify-spectral";
  Check c1{"C1_spectral_identities", 1, {}};

  std::vector<GridPtr> grids{SpectralGrid::make(64, 32.0), SpectralGrid::make(1024, 40.0),
                             SpectralGrid::make(4096, 200.0), c.params.grid};
  double round_trip = 0.0, plancherel = 0.0, isometry = 0.0, group = 0.0;
  CsvTable table{"spectral.csv", {"num_points", "box_length", "round_trip_rel", "plancherel_rel"}, {}};
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const GridPtr& g = grids[i];
    const PhysicalField f(g, random_samples(g->size(), derive_seed(c.seed, i)));
    const double rt = rel_diff(inverse_transform(forward_transform(f)), f);
    const double pl = std::abs(norms(forward_transform(f)).l2 / std::sqrt(2.0 * kPi) - physical_l2(f)) / physical_l2(f);
    round_trip = std::max(round_trip, rt);
    plancherel = std::max(plancherel, pl);
    table.rows.push_back({static_cast<double>(g->size()), g->box_length(), rt, pl});
  }
  {
    const GridPtr& g = c.params.grid;
    const FrequencyField F(g, random_samples(g->size(), derive_seed(c.seed, 99)));
    for (auto [s, t] : {std::pair{3.5, 9.25}, std::pair{-40.0, 17.5}, std::pair{100.0, 250.0}}) {
      group = std::max(group, rel_diff(free_propagate(free_propagate(F, s), t), free_propagate(F, s + t)));
      isometry = std::max(isometry, std::abs(norms(free_propagate(F, t)).l2 / norms(F).l2 - 1.0));
    }
  }
  // Gaussian closed forms on a box resolving e^{-x^2/2} to machine precision.
  const GridPtr gg = SpectralGrid::make(4096, 200.0);
  std::vector<cplx> gx(gg->size()), gxi(gg->size());
  for (std::size_t j = 0; j < gx.size(); ++j) {
    gx[j] = std::exp(-0.5 * gg->x()[j] * gg->x()[j]);
    gxi[j] = std::sqrt(2.0 * kPi) * std::exp(-0.5 * gg->xi()[j] * gg->xi()[j]);
  }
  const PhysicalField u0(gg, gx);
  const FrequencyField U0(gg, gxi);
  double pair = 0.0, free_gauss = 0.0;
  for (std::size_t j = 0; j < gx.size(); ++j) pair = std::max(pair, std::abs(forward_transform(u0)[j] - U0[j]));
  for (double t : {0.5, 2.0, 10.0}) {
    const PhysicalField u = inverse_transform(free_propagate(forward_transform(u0), t));
    const cplx d = 1.0 + kI * t;
    for (std::size_t j = 0; j < gx.size(); ++j) {
      const double x = gg->x()[j];
      free_gauss = std::max(free_gauss, std::abs(u[j] - std::exp(-x * x / (2.0 * d)) / std::sqrt(d)));
    }
  }

  c1.items = {at_most("round_trip_rel", round_trip, 1e-12), at_most("plancherel_rel", plancherel, 1e-10),
              at_most("free_gaussian_abs", free_gauss, 1e-8), at_most("group_law_rel", group, 1e-12)};
  r.checks.push_back(c1);
  r.diagnostics.push_back(Check{"gaussian_transform_pair", 0, {at_most("abs_error", pair, 1e-10)}});
  r.diagnostics.push_back(Check{"propagator_isometry", 0, {at_most("l2_rel_change", isometry, 1e-12)}});
  r.tables.push_back(table);
  return r;
}

// ---------------------------------------------------------------------------

CampaignResult run_verify_dispersive(const ExperimentConfig& c) {
  CampaignResult r;
  r.campaign = "verify-dispersive";
  const SolverParams& p = c.params;
  const GridPtr& g = p.grid;
  const std::vector<double> mc_times{1.0, 10.0, 100.0, 1000.0};

  CsvTable mc{"dispersive.csv", {"seed_set", "profile", "t", "ratio"}, {}};
  auto monte_carlo = [&](std::uint64_t seed, int set) {
    std::vector<double> ratios(static_cast<std::size_t>(c.mc_profiles) * mc_times.size());
    const std::ptrdiff_t n = c.mc_profiles;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const FrequencyField h = random_bandlimited_shape(g, derive_seed(seed, static_cast<std::uint64_t>(j)));
      for (std::size_t k = 0; k < mc_times.size(); ++k) {
        if (mc_times[k] > p.t_max) continue;
        ratios[j * mc_times.size() + k] = dispersive_ratio(h, mc_times[k]);
      }
    }
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < mc_times.size(); ++k) {
        mc.rows.push_back({static_cast<double>(set), static_cast<double>(j), mc_times[k], ratios[j * mc_times.size() + k]});
      }
    }
    return max_over(ratios);
  };
  const double sup_a = monte_carlo(c.seed, 0);
  const double sup_b = monte_carlo(derive_seed(c.seed, 0xD15BE75E), 1);
  const double stability = std::abs(sup_a - sup_b) / std::max(sup_a, sup_b);

  const FrequencyField h = random_bandlimited_shape(g, derive_seed(c.seed, 7));
  std::vector<double> ts = fit_times(c), sp, ua;
  const FinalData d = final_data(c, p);
  for (double t : ts) {
    sp.push_back(stationary_phase_error(h, t));
    ua.push_back(physical_linf(approximate_solution(d, t, p)));
  }
  const DecayFit sp_fit = fit_decay(series(ts, sp));
  const DecayFit ua_fit = fit_decay(series(ts, ua));
  CsvTable decay{"decay.csv", {"t", "stationary_phase_error", "uapp_linf"}, {}};
  for (std::size_t i = 0; i < ts.size(); ++i) decay.rows.push_back({ts[i], sp[i], ua[i]});

  r.checks.push_back(Check{"C2_dispersive_estimate", 2,
                           {at_most("sup_ratio_seed_a", sup_a, INFINITY), at_most("sup_ratio_seed_b", sup_b, INFINITY),
                            at_most("sup_relative_difference", stability, 0.10),
                            at_most("stationary_phase_slope", sp_fit.slope, -0.70)}});
  r.checks.push_back(Check{"C6_uapp_decay", 6, {within("uapp_linf_slope", ua_fit.slope, -0.55, -0.45)}});
  r.diagnostics.push_back(Check{"dispersive_constant_calibration", 0, {at_most("sup_ratio", std::max(sup_a, sup_b), 1.0)}});
  r.summary["dispersive_sup"] = {sup_a, sup_b};
  r.summary["stationary_phase_fit"] = to_json(sp_fit);
  r.summary["uapp_fit"] = to_json(ua_fit);
  r.tables = {mc, decay};
  return r;
}

// ---------------------------------------------------------------------------

CampaignResult run_verify_forcing(const ExperimentConfig& c) {
  CampaignResult r;
  r.campaign = "verify-forcing";
  const SolverParams& p = c.params;
  const double target = -(1.0 + p.delta) + 0.15;
  const FinalData d = final_data(c, p);
  const FinalData half = final_data(c, with_eps0(p, 0.5 * p.eps0));

  // Oracle comparisons on the coarse grid.
  SolverParams coarse = p;
  coarse.grid = SpectralGrid::make(kCoarsePoints, kCoarseBox);
  const FinalData dc = final_data(c, coarse);
  double oracle_mismatch = 0.0;
  nlohmann::json calib = nlohmann::json::array();
  for (double s : {5.0, 50.0}) {
    const OracleCalibration cal = calibrate_oracle(dc.W, s, kRefineFactor);
    oracle_mismatch = std::max(oracle_mismatch, rel_diff(remainder_oracle(dc.W, s), remainder_on_coarse_nodes(dc.W, s, kRefineFactor)));
    calib.push_back({{"s", s}, {"kappa_re", cal.kappa.real()}, {"kappa_im", cal.kappa.imag()},
                     {"calibrated_mismatch", cal.relative_mismatch}});
  }
  double oracle_route = 0.0;
  for (double t : {10.0, 50.0}) {
    oracle_route = std::max(oracle_route, forcing_identity_residual(dc, t, coarse, RemainderRoute::oracle, kRefineFactor).relative());
  }

  const std::vector<double> ts = fit_times(c);
  std::vector<double> rem_w, rem_v, drem_v, eps, eps_half, resid, resid_rel, bound;
  for (double t : ts) {
    rem_w.push_back(frequency_linf(trilinear_split(d.W, t).remainder));
    const FrequencyField Rv = trilinear_split(asymptotic_profile(d, t, p.lambda), t).remainder;
    rem_v.push_back(frequency_linf(Rv));
    drem_v.push_back(norms(Rv).dxi_l2);
    const FrequencyField e = forcing_profile(d, t, p);
    eps.push_back(frequency_linf(e));
    eps_half.push_back(frequency_linf(forcing_profile(half, t, p)));
    const ForcingResidual fr = forcing_identity_residual(d, t, p);
    resid.push_back(fr.absolute);
    resid_rel.push_back(fr.relative());
    bound.push_back(eps.back() * std::pow(t, 1.0 + p.delta) / std::pow(1.0 + std::log(t), 6));
  }
  double cubic_scaling = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) cubic_scaling = std::max(cubic_scaling, std::abs(eps[i] / eps_half[i] / 8.0 - 1.0));

  const TimeGrid tg = TimeGrid::from(p);
  const double pe = xt_norm(phi_eps(d, p, tg), p.alpha);
  const double pe_half = xt_norm(phi_eps(half, p, tg), p.alpha);
  const double pe_scaling = std::abs(pe / pe_half / 8.0 - 1.0);

  const DecayFit rem_fit = fit_decay(series(ts, rem_w));
  const DecayFit eps_fit = fit_decay(series(ts, eps), 6);
  const DecayFit rem_v_fit = fit_decay(series(ts, rem_v), 6);
  const DecayFit drem_fit = fit_decay(series(ts, drem_v), 6);

  r.checks.push_back(Check{"C3_trilinear_remainder", 3,
                           {at_most("oracle_vs_fft_rel", oracle_mismatch, 1e-3),
                            at_most("remainder_linf_slope", rem_fit.slope, target)}});
  r.checks.push_back(Check{"C4_forcing_identity", 4,
                           {at_most("fft_route_residual_max", max_over(resid), 1e-10),
                            at_most("oracle_route_residual_rel", oracle_route, 1e-3)}});
  r.checks.push_back(Check{"C5_forcing_decay", 5,
                           {at_most("forcing_linf_slope_log6", eps_fit.slope, target),
                            at_most("forcing_cubic_scaling_dev", cubic_scaling, 0.10),
                            at_most("phi_eps_cubic_scaling_dev", pe_scaling, 0.10)}});

  // Phi_eps against the start time, t_max / T fixed.
  const SolverParams p40 = later_start(p, 4.0);
  const double pe40 = xt_norm(phi_eps(final_data(c, p40), p40, TimeGrid::from(p40)), p.alpha);
  const double t_ratio_bound = std::pow(4.0, (p.alpha - p.delta) / 2.0) * 1.25;
  r.diagnostics.push_back(Check{"phi_eps_start_time", 0, {at_most("ratio_T40_T10", pe40 / pe, t_ratio_bound)}});
  r.diagnostics.push_back(Check{"remainder_of_profile_decay", 0,
                                {at_most("linf_slope_log6", rem_v_fit.slope, target),
                                 at_most("dxi_l2_slope_log6", drem_fit.slope, target)}});
  r.diagnostics.push_back(Check{"forcing_bound_constant", 0, {at_most("max_over_min", spread(bound), INFINITY)}});

  r.summary["oracle_calibration"] = calib;
  r.summary["remainder_fit"] = to_json(rem_fit);
  r.summary["forcing_fit"] = to_json(eps_fit);
  r.summary["phi_eps_norm"] = {{"eps0", pe}, {"half_eps0", pe_half}, {"T40", pe40}};
  CsvTable table{"forcing.csv",
                 {"t", "remainder_W_linf", "remainder_v_linf", "remainder_v_dxi_l2", "forcing_linf", "forcing_linf_half",
                  "forcing_scaled", "residual_fft", "residual_fft_rel"},
                 {}};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    table.rows.push_back({ts[i], rem_w[i], rem_v[i], drem_v[i], eps[i], eps_half[i], bound[i], resid[i], resid_rel[i]});
  }
  r.tables.push_back(table);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Construction {
  SolverParams params;
  FinalData data;
  ProfileTrajectory phi_eps;
  PicardResult first;
  std::optional<PicardResult> second;
  double agreement = 0.0;
};

Construction construct_solution(const ExperimentConfig& c, Nonlinearity lambda, bool second_start) {
  const SolverParams p = with_lambda(c.params, lambda);
  const FinalData d = final_data(c, p);
  const TimeGrid tg = TimeGrid::from(p);
  ProfileTrajectory pe = phi_eps(d, p, tg);
  PicardResult first = picard_iterate(d, p, c.max_iter, c.tol, nullptr, &pe);
  Construction k{p, d, pe, std::move(first), std::nullopt, 0.0};
  if (second_start) {
    const double M = 2.0 * k.first.report.phi_eps_norm;
    const ProfileTrajectory start = random_trajectory(tg, p.grid, p.alpha, M, derive_seed(c.seed, 31));
    k.second = picard_iterate(d, p, c.max_iter, c.tol, &start, &pe);
    k.agreement = xt_norm(k.first.g - k.second->g, p.alpha);
  }
  return k;
}

CsvTable picard_table(const std::string& file, const PicardReport& rep) {
  CsvTable t{file, {"iterate", "xt_norm", "step_distance", "contraction_ratio"}, {}};
  for (std::size_t i = 0; i < rep.xt_norms.size(); ++i) {
    const double ratio = i >= 1 && i - 1 < rep.contraction_ratios.size() ? rep.contraction_ratios[i - 1] : NAN;
    t.rows.push_back({static_cast<double>(i + 1), rep.xt_norms[i], rep.step_distances[i], ratio});
  }
  return t;
}

}  // namespace

CampaignResult run_construct(const ExperimentConfig& c) {
  CampaignResult r;
  r.campaign = "construct";
  Check c7{"C7_contraction", 7, {}};
  for (Nonlinearity lambda : {Nonlinearity::defocusing, Nonlinearity::focusing}) {
    const Construction k = construct_solution(c, lambda, true);
    const PicardReport& rep = k.first.report;
    const std::string tag = "lambda_" + lambda_tag(lambda) + ".";
    c7.items.push_back(at_most(tag + "max_contraction_ratio", max_over(rep.contraction_ratios), 0.5));
    c7.items.push_back(at_least(tag + "converged", rep.converged ? 1.0 : 0.0, 1.0));
    c7.items.push_back(at_most(tag + "iterates", rep.iterates, 15));
    c7.items.push_back(at_most(tag + "final_step", rep.step_distances.back(), 1e-9));
    c7.items.push_back(at_most(tag + "fixed_point_residual", rep.fixed_point_residual, 2e-9));
    c7.items.push_back(at_most(tag + "start_agreement", k.agreement, 1e-8));
    r.summary["picard_" + lambda_tag(lambda)] = to_json(rep);
    r.summary["picard_" + lambda_tag(lambda) + "_second_start"] = to_json(k.second->report);
    r.tables.push_back(picard_table("picard_" + lambda_tag(lambda) + ".csv", rep));

    if (lambda != c.params.lambda) continue;
    const SolverParams& p = k.params;
    const TimeGrid& tg = k.phi_eps.time_grid;
    const double M = 2.0 * rep.phi_eps_norm;
    CsvTable W{"W.csv", {"xi", "re", "im"}, {}};
    for (std::size_t m = 0; m < k.data.W.size(); ++m) W.rows.push_back({p.grid->xi()[m], k.data.W[m].real(), k.data.W[m].imag()});
    CsvTable gs{"g_star.csv", {"t", "linf", "l2", "dxi_l2", "xt_weight"}, {}};
    for (std::size_t i = 0; i < tg.size(); ++i) {
      const NormBundle n = norms(k.first.g.fields[i]);
      gs.rows.push_back({tg[i], n.linf, n.l2, n.dxi_l2, xt_weight(tg[i], n, p.alpha)});
    }
    r.tables.push_back(W);
    r.tables.push_back(gs);
    if (M == 0.0) continue;

    // Empirical contraction analysis around the constructed solution.
    const ProfileTrajectory zero = ProfileTrajectory::zeros(tg, p.grid);
    double self_map = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      const ProfileTrajectory g = random_trajectory(tg, p.grid, p.alpha, M, derive_seed(c.seed, 40 + s));
      self_map = std::max(self_map, xt_norm(apply_phi(g, k.data, p, k.phi_eps), p.alpha) / M);
    }
    const ProfileTrajectory g1 = random_trajectory(tg, p.grid, p.alpha, 0.5 * M, derive_seed(c.seed, 50));
    const double probe = contraction_probe(g1, zero, k.data, p);

    const SolverParams p2 = with_eps0(p, 2.0 * p.eps0);
    const double probe2 = contraction_probe(cplx(2.0) * g1, zero, final_data(c, p2), p2);

    const SolverParams p40 = later_start(p, 4.0);
    const TimeGrid tg40 = TimeGrid::from(p40);
    const ProfileTrajectory g40 = random_trajectory(tg40, p40.grid, p.alpha, 0.5 * M, derive_seed(c.seed, 50));
    const double probe40 = contraction_probe(g40, ProfileTrajectory::zeros(tg40, p40.grid), final_data(c, p40), p40);

    r.diagnostics.push_back(Check{"self_map", 0, {at_most("phi_norm_over_M", self_map, 1.0)}});
    r.diagnostics.push_back(Check{"contraction_probe", 0,
                                  {at_most("ratio", probe, 0.5), within("eps0_doubling_factor", probe2 / probe, 2.8, 5.2),
                                   at_most("ratio_T40_minus_T10", probe40 - probe, 0.0)}});
    r.summary["probe"] = {{"T10", probe}, {"T40", probe40}, {"eps0_doubled", probe2}, {"M", M}};
  }
  r.checks.push_back(c7);
  return r;
}

// ---------------------------------------------------------------------------

CampaignResult run_roundtrip(const ExperimentConfig& c) {
  CampaignResult r;
  r.campaign = "roundtrip";
  const Construction k = construct_solution(c, c.params.lambda, false);
  const SolverParams& p = k.params;
  const FinalData& d = k.data;
  const ProfileTrajectory& g = k.first.g;

  const PhysicalField w0 = inverse_transform(free_propagate(g.fields.front(), p.T));
  const PhysicalField u0 = approximate_solution(d, p.T, p) + w0;
  const std::vector<double> times = log_times(p.T, p.t_max, c.samples_per_decade);
  const std::vector<EvolutionState> states = evolve(u0, p.T, times, p, c.dt_cap);

  std::vector<double> weighted, err, corr, mass_drift, energy_drift, ts;
  CsvTable table{"evolution.csv",
                 {"t", "mass", "energy", "dev_linf", "dev_l2", "dev_dxi_l2", "weighted_sup", "asymptotic_error",
                  "correction_linf"},
                 {}};
  const double m0 = mass(u0);
  const double e0 = energy(u0, p.lambda);
  double modulus_drift = 0.0;
  std::optional<FrequencyField> decade_start;
  double decade_t = 0.0;
  for (const EvolutionState& s : states) {
    const NormBundle dev = scattering_deviation(s, d, p);
    const double wsup = xt_weight(s.t, dev, p.alpha);
    const double ae = asymptotic_error(s, d, p);
    const double wl = physical_linf(s.u - approximate_solution(d, s.t, p));
    ts.push_back(s.t);
    weighted.push_back(wsup);
    err.push_back(ae);
    corr.push_back(std::pow(s.t, 0.5 + p.alpha) * wl);
    mass_drift.push_back(m0 > 0.0 ? std::abs(s.mass - m0) / m0 : 0.0);
    energy_drift.push_back(e0 != 0.0 ? std::abs(s.energy - e0) / std::abs(e0) : 0.0);
    table.rows.push_back({s.t, s.mass, s.energy, dev.linf, dev.l2, dev.dxi_l2, wsup, ae, wl});

    const FrequencyField f = extract_profile(s);
    if (!decade_start) {
      decade_start = f;
      decade_t = s.t;
    } else if (s.t >= 10.0 * decade_t * (1 - 1e-12)) {
      double num = 0.0, den = 0.0;
      for (std::size_t m = 0; m < f.size(); ++m) {
        num = std::max(num, std::abs(std::abs(f[m]) - std::abs((*decade_start)[m])));
        den = std::max(den, std::abs((*decade_start)[m]));
      }
      modulus_drift = std::max(modulus_drift, den > 0.0 ? num / den : 0.0);
      decade_start = f;
      decade_t = s.t;
    }
  }

  const DecayFit weighted_fit = fit_decay(series(ts, weighted));
  const DecayFit err_fit = fit_decay(window(series(ts, err), c.fit_t_min, c.fit_t_max));
  const DecayFit corr_fit = fit_decay(series(ts, corr));

  // Splitting order on a reference problem with an O(1) nonlinearity.
  const GridPtr rg = SpectralGrid::make(128, 64.0);
  std::vector<cplx> ru(rg->size());
  for (std::size_t j = 0; j < ru.size(); ++j) {
    const double x = rg->x()[j];
    ru[j] = std::exp(-0.5 * x * x) * std::polar(1.0, 0.3 * x);
  }
  const std::vector<double> dts{0.025, 0.05, 0.1};
  const double order = strang_order(PhysicalField(rg, ru), 1.0, p.lambda, dts);

  r.checks.push_back(Check{"C8_main_theorem", 8,
                           {at_most("weighted_max_over_min", spread(weighted), 3.0),
                            at_most("weighted_trend_slope", weighted_fit.slope, 0.1)}});
  r.checks.push_back(Check{"C9_asymptotic_expansion", 9,
                           {at_most("asymptotic_error_slope", err_fit.slope, -std::min(0.5 + p.alpha, 0.75) + 0.1)}});
  r.checks.push_back(Check{"C10_solver_hygiene", 10,
                           {at_most("mass_drift_rel", max_over(mass_drift), 1e-8),
                            at_most("energy_drift_rel", max_over(energy_drift), 1e-6),
                            within("strang_order", order, 1.9, 2.1),
                            at_most("correction_weighted_max_over_min", spread(corr), 3.0)}});

  // Deviation at T against the fixed point it was built from.
  const NormBundle dev0 = scattering_deviation(states.front(), d, p);
  const NormBundle g0 = norms(g.fields.front());
  r.diagnostics.push_back(Check{"deviation_matches_fixed_point", 0,
                                {at_most("linf_rel_difference", std::abs(dev0.linf - g0.linf) / std::max(g0.linf, 1e-300), 1e-6)}});
  r.diagnostics.push_back(Check{"profile_modulus_drift_per_decade", 0, {at_most("relative", modulus_drift, 0.10)}});
  r.diagnostics.push_back(Check{"correction_weighted_trend", 0, {at_most("slope", corr_fit.slope, 0.1)}});

  r.summary["picard"] = to_json(k.first.report);
  r.summary["weighted_fit"] = to_json(weighted_fit);
  r.summary["asymptotic_error_fit"] = to_json(err_fit);
  r.summary["correction_fit"] = to_json(corr_fit);
  r.summary["weighted_range"] = {*std::min_element(weighted.begin(), weighted.end()), max_over(weighted)};
  r.summary["correction_range"] = {*std::min_element(corr.begin(), corr.end()), max_over(corr)};
  r.summary["strang_order"] = order;
  r.summary["steps"] = states.back().step_count;
  r.tables.push_back(table);
  return r;
}

// ---------------------------------------------------------------------------

int worker_threads() {
  if (const char* env = std::getenv("MODWAVE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CampaignResult run_sweep(const ExperimentConfig& c) {
  CampaignResult r;
  r.campaign = "sweep";
  struct Cell {
    double eps0;
    Nonlinearity lambda;
    bool diverged = false;
    bool converged = false;
    int iterates = 0;
    double max_ratio = NAN;
    double final_step = NAN;
    double phi_eps_norm = NAN;
    double probe = NAN;
    std::string reason;
  };
  std::vector<Cell> cells;
  for (Nonlinearity l : {Nonlinearity::defocusing, Nonlinearity::focusing}) {
    for (double e : c.sweep_eps0) cells.push_back(Cell{e, l, false, false, 0, NAN, NAN, NAN, NAN, {}});
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    kernels::set_threads(1);
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell& cell = cells[i];
      try {
        const SolverParams p = with_lambda(with_eps0(c.params, cell.eps0), cell.lambda);
        const FinalData d = final_data(c, p);
        const PicardResult res = picard_iterate(d, p, c.max_iter, c.tol);
        cell.converged = res.report.converged;
        cell.iterates = res.report.iterates;
        cell.max_ratio = max_over(res.report.contraction_ratios);
        cell.final_step = res.report.step_distances.back();
        cell.phi_eps_norm = res.report.phi_eps_norm;
        if (cell.phi_eps_norm > 0.0) {
          const TimeGrid tg = TimeGrid::from(p);
          const ProfileTrajectory g1 = random_trajectory(tg, p.grid, p.alpha, cell.phi_eps_norm, derive_seed(c.seed, 50));
          cell.probe = contraction_probe(g1, ProfileTrajectory::zeros(tg, p.grid), d, p);
        }
      } catch (const NumericalError& e) {
        cell.diverged = true;
        cell.reason = e.what();
      }
    }
  };
  const int workers = std::min<int>(worker_threads(), static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  CsvTable table{"sweep.csv",
                 {"eps0", "lambda", "T", "converged", "diverged", "iterates", "max_contraction_ratio", "final_step",
                  "phi_eps_norm", "probe_ratio"},
                 {}};
  double region_plus = 0.0, region_minus = 0.0;
  nlohmann::json jc = nlohmann::json::array();
  for (const Cell& cell : cells) {
    table.rows.push_back({cell.eps0, cell.lambda == Nonlinearity::defocusing ? 1.0 : -1.0, c.params.T, cell.converged ? 1.0 : 0.0,
                          cell.diverged ? 1.0 : 0.0, static_cast<double>(cell.iterates), cell.max_ratio, cell.final_step,
                          cell.phi_eps_norm, cell.probe});
    const bool contracts = cell.converged && !(cell.max_ratio > 0.5) && !(cell.probe > 0.5);
    double& region = cell.lambda == Nonlinearity::defocusing ? region_plus : region_minus;
    if (contracts) region = std::max(region, cell.eps0);
    nlohmann::json j{{"eps0", cell.eps0}, {"lambda", lambda_tag(cell.lambda)}, {"converged", cell.converged}, {"diverged", cell.diverged},
                     {"iterates", cell.iterates}, {"contracts", contracts}};
    if (!cell.reason.empty()) j["reason"] = cell.reason;
    jc.push_back(j);
  }
  r.summary["cells"] = jc;
  r.summary["largest_contracting_eps0"] = {{"plus", region_plus}, {"minus", region_minus}};
  r.tables.push_back(table);
  return r;
}

// ---------------------------------------------------------------------------

CampaignResult run_campaign(const ExperimentConfig& c) {
  switch (c.subcommand) {
    case Subcommand::verify_spectral: return run_verify_spectral(c);
    case Subcommand::verify_dispersive: return run_verify_dispersive(c);
    case Subcommand::verify_forcing: return run_verify_forcing(c);
    case Subcommand::construct: return run_construct(c);
    case Subcommand::roundtrip: return run_roundtrip(c);
    case Subcommand::sweep: return run_sweep(c);
  }
  throw InvalidArgument("unknown subcommand");
}

std::vector<int> criteria_of(Subcommand sub) {
  switch (sub) {
    case Subcommand::verify_spectral: return {1};
    case Subcommand::verify_dispersive: return {2, 6};
    case Subcommand::verify_forcing: return {3, 4, 5};
    case Subcommand::construct: return {7};
    case Subcommand::roundtrip: return {8, 9, 10};
    case Subcommand::sweep: return {};
  }
  return {};
}

}  // namespace modwave
