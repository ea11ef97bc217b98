#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modwave/kernels.hpp"
#include "support.hpp"

using namespace modwave;
namespace ser = modwave::kernels::serial;
namespace par = modwave::kernels::parallel;

namespace {

double diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
  const std::size_t n = 10007;
  const auto a = testing::random_values(n, 1);
  const auto b = testing::random_values(n, 2);
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) xi[i] = -5.0 + 0.001 * static_cast<double>(i);
  std::vector<cplx> s(n), p(n);

  ser::multiply_chirp(a, xi, 2.5, s);
  par::multiply_chirp(a, xi, 2.5, p);
  CHECK(diff(s, p) == 0.0);

  ser::cubic(a, s);
  par::cubic(a, p);
  CHECK(diff(s, p) == 0.0);

  ser::cubic_difference(a, b, s);
  par::cubic_difference(a, b, p);
  CHECK(diff(s, p) == 0.0);

  s = a;
  p = a;
  ser::rotate_phase(s, 0.3);
  par::rotate_phase(p, 0.3);
  CHECK(diff(s, p) == 0.0);

  CHECK(par::max_abs(a) == ser::max_abs(a));
  CHECK(par::sum_abs2(a) == doctest::Approx(ser::sum_abs2(a)).epsilon(1e-13));
}

TEST_CASE("reductions do not depend on the thread count") {
  const auto a = testing::random_values(50000, 3);
  const int before = kernels::max_threads();
  kernels::set_threads(1);
  const double one = par::sum_abs2(a);
  kernels::set_threads(4);
  const double four = par::sum_abs2(a);
  kernels::set_threads(before);
  CHECK(one == four);
}

TEST_CASE("cubic difference expansion") {
  const auto a = testing::random_values(257, 4);
  const auto b = testing::random_values(257, 5);
  std::vector<cplx> out(257);
  ser::cubic_difference(a, b, out);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx s = a[i] + b[i];
    const cplx direct = std::norm(s) * s - std::norm(a[i]) * a[i];
    CHECK(std::abs(out[i] - direct) <= 1e-12 * (std::abs(direct) + 1.0));
  }
}

TEST_CASE("phase rotation keeps the modulus") {
  auto u = testing::random_values(100, 6);
  const auto before = u;
  par::rotate_phase(u, 1.7);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(std::abs(u[i]) == doctest::Approx(std::abs(before[i])).epsilon(1e-15));
    const cplx expect = before[i] * std::exp(-kI * 1.7 * std::norm(before[i]));
    CHECK(std::abs(u[i] - expect) <= 1e-13);
  }
}
