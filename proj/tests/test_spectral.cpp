#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace modwave;
using namespace modwave::testing;

TEST_CASE("grid invariants") {
  auto g = SpectralGrid::make(256, 40.0);
  CHECK(g->dx() * g->dxi() * 256 == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(g->xi().back() < g->xi_max());
  CHECK(-g->xi().front() == doctest::Approx(g->xi_max()).epsilon(1e-14));
  for (std::size_t m = 1; m < g->size(); ++m) CHECK(g->xi()[m] > g->xi()[m - 1]);
  CHECK(g->x().front() == doctest::Approx(-20.0));
  CHECK_THROWS_AS(SpectralGrid(100, 1.0), InvalidArgument);
  CHECK_THROWS_AS(SpectralGrid(128, -1.0), InvalidArgument);
}

TEST_CASE("field rejects bad input") {
  auto g = SpectralGrid::make(16, 4.0);
  CHECK_THROWS_AS(PhysicalField(g, std::vector<cplx>(15)), InvalidArgument);
  std::vector<cplx> v(16);
  v[3] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(PhysicalField(g, v), NumericalError);
}

TEST_CASE("gaussian transform pair") {
  auto g = SpectralGrid::make(1024, 40.0);
  const auto f = sample_x(g, [](double x) { return std::exp(-x * x / 2); });
  const auto exact = sample_xi(g, [](double xi) { return std::sqrt(2 * kPi) * std::exp(-xi * xi / 2); });
  CHECK(max_diff(forward_transform(f), exact) <= 1e-10);
  CHECK(max_diff(inverse_transform(exact), f) <= 1e-10);
  CHECK(max_abs(forward_transform(PhysicalField(g))) == 0.0);
  CHECK(max_abs(inverse_transform(FrequencyField(g))) == 0.0);
}

TEST_CASE("plane wave window peaks at the nearest grid frequency") {
  auto g = SpectralGrid::make(64, 16.0);
  const double xi0 = 2.2;
  const auto f = sample_x(g, [&](double x) { return std::exp(kI * xi0 * x); });
  const auto F = forward_transform(f);
  // Direct summation oracle.
  for (std::size_t m = 0; m < 64; ++m) {
    cplx s{};
    for (std::size_t j = 0; j < 64; ++j) s += std::exp(-kI * g->xi()[m] * g->x()[j]) * f[j] * g->dx();
    CHECK(std::abs(s - F[m]) <= 1e-12);
  }
  std::size_t peak = 0;
  for (std::size_t m = 0; m < 64; ++m) {
    if (std::abs(F[m]) > std::abs(F[peak])) peak = m;
  }
  std::size_t nearest = 0;
  for (std::size_t m = 0; m < 64; ++m) {
    if (std::abs(g->xi()[m] - xi0) < std::abs(g->xi()[nearest] - xi0)) nearest = m;
  }
  CHECK(peak == nearest);
}

TEST_CASE("round trip and plancherel on random fields") {
  for (std::size_t n : {8u, 64u, 1024u, 4096u}) {
    auto g = SpectralGrid::make(n, 0.37 * static_cast<double>(n));
    const PhysicalField f(g, random_values(n, n));
    const PhysicalField back = inverse_transform(forward_transform(f));
    CHECK(max_diff(back, f) / max_abs(f) <= 1e-12);
    const double lhs = norms(forward_transform(f)).l2 / std::sqrt(2 * kPi);
    CHECK(std::abs(lhs - physical_l2(f)) / physical_l2(f) <= 1e-10);
  }
}

TEST_CASE("free propagator") {
  auto g = SpectralGrid::make(2048, 200.0);
  const FrequencyField F(g, random_values(2048, 5));
  CHECK(max_diff(free_propagate(F, 0.0), F) == 0.0);
  const auto G = free_propagate(F, 3.7);
  for (std::size_t m = 0; m < F.size(); ++m) CHECK(std::abs(std::abs(G[m]) - std::abs(F[m])) <= 1e-14 * std::abs(F[m]) + 1e-300);
  CHECK(max_diff(free_propagate(G, -3.7), F) <= 1e-12);
  CHECK(max_diff(free_propagate(free_propagate(F, 1.25), 2.5), free_propagate(F, 3.75)) <= 1e-12);
  CHECK(norms(G).l2 == doctest::Approx(norms(F).l2).epsilon(1e-14));
}

TEST_CASE("free gaussian matches the closed-form solution") {
  auto g = SpectralGrid::make(4096, 200.0);
  const auto u0 = sample_x(g, [](double x) { return std::exp(-x * x / 2); });
  for (double t : {0.5, 2.0, 10.0}) {
    const auto u = inverse_transform(free_propagate(forward_transform(u0), t));
    const auto exact = sample_x(g, [t](double x) {
      const cplx d = 1.0 + kI * t;
      return std::exp(-x * x / (2.0 * d)) / std::sqrt(d);
    });
    CHECK(max_diff(u, exact) <= 1e-8);
  }
}

TEST_CASE("xi derivative") {
  auto g = SpectralGrid::make(1024, 160.0);  // dxi ~ 0.039
  REQUIRE(g->dxi() <= 0.05);
  const auto c = sample_xi(g, [](double) { return cplx(2.0, -1.0); });
  CHECK(max_abs(xi_derivative(c).derivative) <= 1e-12);

  const auto gauss = sample_xi(g, [](double xi) { return std::exp(-xi * xi / 2); });
  const auto d = xi_derivative(gauss);
  CHECK(d.reliable);
  const auto exact = sample_xi(g, [](double xi) { return -xi * std::exp(-xi * xi / 2); });
  CHECK(max_diff(d.derivative, exact) <= 1e-6);

  const auto ramp = sample_xi(g, [](double xi) { return cplx(xi * xi * xi * xi, xi); });
  const auto dr = xi_derivative(ramp);
  for (std::size_t m = 0; m < g->size(); ++m) {
    const double xi = g->xi()[m];
    CHECK(std::abs(dr.derivative[m] - cplx(4 * xi * xi * xi, 1.0)) <= 1e-7 * (1 + std::abs(xi * xi * xi)));
  }
  CHECK_FALSE(dr.reliable);
}

TEST_CASE("norm bundle") {
  auto g = SpectralGrid::make(2048, 256.0);
  const auto z = norms(FrequencyField(g));
  CHECK(z.linf == 0.0);
  CHECK(z.l2 == 0.0);
  CHECK(z.dxi_l2 == 0.0);
  CHECK(z.h2 == 0.0);

  // Smooth plateau of height h and width ~1, against a dense quadrature.
  const double h = 0.7;
  auto plateau = [h](double xi) {
    return h * 0.5 * (std::tanh(10.0 * (xi + 0.5)) - std::tanh(10.0 * (xi - 0.5)));
  };
  const auto n = norms(sample_xi(g, plateau));
  CHECK(n.linf == doctest::Approx(h * std::tanh(5.0)).epsilon(1e-6));
  double dense = 0.0;
  const int steps = 400000;
  const double a = -3.0, b = 3.0, dq = (b - a) / steps;
  for (int k = 0; k <= steps; ++k) {
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    dense += w * plateau(a + k * dq) * plateau(a + k * dq) * dq;
  }
  CHECK(n.l2 == doctest::Approx(std::sqrt(dense)).epsilon(1e-6));
  CHECK(n.l2 == doctest::Approx(h).epsilon(0.05));
  // l2 <= sqrt(support width) * linf for band-limited data
  CHECK(n.l2 <= std::sqrt(1.5) * n.linf);
}

TEST_CASE("time weight") {
  auto g = SpectralGrid::make(512, 64.0);
  CHECK(xt_weight(5.0, FrequencyField(g), 0.1) == 0.0);
  CHECK_THROWS_AS(xt_weight(1.0, FrequencyField(g), 0.1), InvalidArgument);
  const auto c = sample_xi(g, [](double) { return cplx(0.3); });
  const double r = xt_weight(8.0, c, 0.1) / xt_weight(4.0, c, 0.1);
  CHECK(r == doctest::Approx(std::pow(2.0, 0.1)).epsilon(1e-12));
}

TEST_CASE("refinement interpolates exactly on the coarse nodes") {
  auto g = SpectralGrid::make(64, 32.0);
  const auto F = sample_xi(g, [](double xi) { return std::exp(-xi * xi) * std::exp(kI * xi); });
  const auto fine = refine(F, 8);
  CHECK(fine.size() == 512);
  CHECK(fine.grid().box_length() == doctest::Approx(256.0));
  for (std::size_t m = 0; m < 64; ++m) {
    CHECK(fine.grid().xi()[m * 8] == doctest::Approx(g->xi()[m]));
    CHECK(std::abs(fine[m * 8] - F[m]) <= 1e-13);
  }
}

TEST_CASE("coverage and support") {
  auto g = SpectralGrid::make(2048, 1000.0);
  const auto F = sample_xi(g, [](double xi) { return std::exp(-xi * xi); });
  CHECK(effective_support(F) == doctest::Approx(4.0).epsilon(0.01));
  CHECK_NOTHROW(require_coverage(*g, 4.0, 100.0));
  CHECK_THROWS_AS(require_coverage(*g, 4.0, 200.0), InvalidArgument);
}

TEST_CASE("cubic interpolation") {
  auto g = SpectralGrid::make(256, 64.0);
  const auto F = sample_xi(g, [](double xi) { return cplx(xi * xi * xi - xi, 2.0); });
  for (double q : {-3.3, 0.01, 1.77, 7.9}) CHECK(std::abs(interpolate_cubic(F, q) - cplx(q * q * q - q, 2.0)) <= 1e-10);
  CHECK(interpolate_cubic(F, 100.0) == cplx{});
}
