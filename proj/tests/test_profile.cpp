#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "modwave/fit.hpp"
#include "modwave/profile.hpp"
#include "support.hpp"

using namespace modwave;
using namespace modwave::testing;

namespace {

SolverParams small_params(double eps0 = 0.05) {
  SolverParams p;
  p.grid = SpectralGrid::make(2048, 256.0);
  p.eps0 = eps0;
  p.T = 10.0;
  p.t_max = 100.0;
  return p;
}

}  // namespace

TEST_CASE("parameter constraints") {
  SolverParams p = small_params();
  CHECK_NOTHROW(p.validate());
  p.alpha = 0.3;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = small_params();
  p.delta = 0.25;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = small_params();
  p.T = 1.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = small_params();
  p.t_max = 50.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("final data") {
  const SolverParams p = small_params();
  CHECK(max_abs(make_final_data(DataKind::gaussian, small_params(0.0), 1).W) == 0.0);

  const FinalData d = make_final_data(DataKind::gaussian, p, 1);
  CHECK(d.eps0_actual == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(final_data_size(d.W) == doctest::Approx(d.eps0_actual).epsilon(1e-15));
  // Shape is c e^{-xi^2}.
  const double c = d.W[p.grid->size() / 2].real();
  for (std::size_t m = 0; m < d.W.size(); m += 97) {
    const double xi = p.grid->xi()[m];
    CHECK(std::abs(d.W[m] - c * std::exp(-xi * xi)) <= 1e-15);
  }

  for (DataKind kind : {DataKind::bump, DataKind::random_bandlimited}) {
    const FinalData a = make_final_data(kind, p, 42);
    CHECK(a.eps0_actual == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(effective_support(a.W) <= 0.8 * p.grid->xi_max());
  }
  const FinalData r1 = make_final_data(DataKind::random_bandlimited, p, 7);
  const FinalData r2 = make_final_data(DataKind::random_bandlimited, p, 7);
  const FinalData r3 = make_final_data(DataKind::random_bandlimited, p, 8);
  CHECK(max_diff(r1.W, r2.W) == 0.0);
  CHECK(max_diff(r1.W, r3.W) > 0.0);

  SolverParams narrow = p;
  narrow.grid = SpectralGrid::make(64, 64.0);  // xi_max = pi
  CHECK_THROWS_AS(make_final_data(DataKind::gaussian, narrow, 1), InvalidArgument);
  CHECK(parse_data_kind("bump") == DataKind::bump);
  CHECK_THROWS_AS(parse_data_kind("square"), InvalidArgument);
}

TEST_CASE("final data csv round trip") {
  const SolverParams p = small_params();
  const FinalData d = make_final_data(DataKind::random_bandlimited, p, 3);
  std::stringstream ss;
  write_final_data_csv(ss, d);
  const FinalData back = read_final_data_csv(ss, p.grid);
  CHECK(max_diff(back.W, d.W) == 0.0);
}

TEST_CASE("asymptotic profile") {
  const SolverParams p = small_params(0.4);
  const FinalData d = make_final_data(DataKind::gaussian, p, 1);
  CHECK(max_diff(asymptotic_profile(d, 1.0, p.lambda), d.W) == 0.0);
  for (double t : {2.0, 10.0, 100.0, 1e3, 1e4, 1e5}) {
    const auto v = asymptotic_profile(d, t, p.lambda);
    for (std::size_t m = 0; m < v.size(); ++m) CHECK(std::abs(std::abs(v[m]) - std::abs(d.W[m])) <= 1e-15);
  }
  const auto plus = asymptotic_profile(d, 37.0, Nonlinearity::defocusing);
  const auto minus = asymptotic_profile(d, 37.0, Nonlinearity::focusing);
  for (std::size_t m = 0; m < plus.size(); ++m) CHECK(std::abs(minus[m] - std::conj(plus[m])) <= 1e-16);
  CHECK_THROWS_AS(asymptotic_profile(d, 0.0, p.lambda), InvalidArgument);

  // Explicit phase with the resonant coupling.
  const std::size_t mid = p.grid->size() / 2;
  const double w = d.W[mid].real();
  CHECK(std::arg(plus[mid]) == doctest::Approx(-kResonantCoupling * w * w * std::log(37.0)).epsilon(1e-12));
}

TEST_CASE("profile time derivative") {
  const SolverParams p = small_params(0.8);
  const FinalData d = make_final_data(DataKind::bump, p, 1);
  CHECK(max_abs(profile_time_derivative(FrequencyField(p.grid), 3.0, p.lambda)) == 0.0);
  CHECK_THROWS_AS(profile_time_derivative(d.W, -1.0, p.lambda), InvalidArgument);

  for (Nonlinearity lam : {Nonlinearity::defocusing, Nonlinearity::focusing}) {
    for (double t : {2.0, 30.0, 500.0}) {
      const auto v = asymptotic_profile(d, t, lam);
      const auto dv = profile_time_derivative(v, t, lam);
      const double h = 1e-4 * t;
      const auto fd = (cplx(1.0 / (2 * h))) * (asymptotic_profile(d, t + h, lam) - asymptotic_profile(d, t - h, lam));
      CHECK(max_diff(fd, dv) / max_abs(dv) <= 1e-6);
      for (std::size_t m = 0; m < v.size(); m += 31) {
        const double a = std::abs(d.W[m]);
        CHECK(std::abs(dv[m]) == doctest::Approx(kResonantCoupling * a * a * a / t).epsilon(1e-12));
      }
    }
  }

  // Richardson: centred differences converge at order 2.
  const double t = 20.0;
  const auto dv = profile_time_derivative(asymptotic_profile(d, t, p.lambda), t, p.lambda);
  auto err = [&](double h) {
    const auto fd =
        cplx(1.0 / (2 * h)) * (asymptotic_profile(d, t + h, p.lambda) - asymptotic_profile(d, t - h, p.lambda));
    return max_diff(fd, dv);
  };
  const double order = std::log2(err(0.4) / err(0.2));
  CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("approximate solution mass") {
  const SolverParams p = small_params();
  CHECK(max_abs(approximate_solution(make_final_data(DataKind::gaussian, small_params(0.0), 1), 5.0, p)) == 0.0);
  const FinalData d = make_final_data(DataKind::gaussian, p, 1);
  const double m2 = physical_l2(approximate_solution(d, 2.0, p));
  const double m200 = physical_l2(approximate_solution(d, 200.0, p));
  CHECK(std::abs(m2 - m200) <= 1e-12 * m2);
  CHECK(m2 == doctest::Approx(norms(d.W).l2 / std::sqrt(2 * kPi)).epsilon(1e-12));
}

TEST_CASE("sobolev growth of the profile is logarithmic") {
  SolverParams p;
  p.grid = SpectralGrid::make(32768, 8192.0);
  p.eps0 = 20.0;  // large amplitude so the (log t)^2 term dominates within reach
  const FinalData d = make_final_data(DataKind::gaussian, p, 1);
  std::vector<std::pair<double, double>> h1, h2;
  for (int k = 2; k <= 12; ++k) {
    const double t = std::pow(10.0, k);
    const NormBundle n = norms(asymptotic_profile(d, t, p.lambda));
    const double L = 1.0 + std::log(t);
    h1.emplace_back(L, std::hypot(n.l2, n.dxi_l2));
    h2.emplace_back(L, n.h2);
  }
  const DecayFit f1 = fit_decay(h1);
  const DecayFit f2 = fit_decay(h2);
  CHECK(f1.slope <= 1.1);
  CHECK(f2.slope >= 1.5);
  CHECK(f2.slope <= 2.5);
}
