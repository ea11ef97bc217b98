#include "modwave/profile.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "modwave/kernels.hpp"

namespace modwave {

void SolverParams::validate() const {
  if (!(delta > 0.0 && delta < 0.25)) throw InvalidArgument("parameter constraint violated: need 0 < delta < 1/4");
  if (!(alpha > 0.0 && alpha < delta)) throw InvalidArgument("parameter constraint violated: need 0 < alpha < delta");
  if (!(eps0 >= 0.0) || !std::isfinite(eps0)) throw InvalidArgument("eps0 must be finite and >= 0");
  if (!(T >= 2.0)) throw InvalidArgument("construction time T must be >= 2");
  if (!(t_max >= 10.0 * T)) throw InvalidArgument("t_max must be >= 10 T");
  if (time_grid_points < 3) throw InvalidArgument("time_grid_points must be >= 3");
  if (!grid) throw InvalidArgument("SolverParams has no grid");
}

DataKind parse_data_kind(std::string_view name) {
  if (name == "gaussian") return DataKind::gaussian;
  if (name == "bump") return DataKind::bump;
  if (name == "random_bandlimited") return DataKind::random_bandlimited;
  throw InvalidArgument("unknown data kind '" + std::string(name) + "'");
}

std::string_view to_string(DataKind kind) {
  switch (kind) {
    case DataKind::gaussian: return "gaussian";
    case DataKind::bump: return "bump";
    case DataKind::random_bandlimited: return "random_bandlimited";
  }
  return "?";
}

double final_data_size(const FrequencyField& W) {
  const NormBundle n = norms(W);
  return n.linf + n.h2;
}

FrequencyField random_bandlimited_shape(const GridPtr& grid, std::uint64_t seed) {
  constexpr int kPackets = 12;
  constexpr double kCentreRange = 2.5;
  constexpr double kWidth = 0.25;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-kCentreRange, kCentreRange);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> mu(kPackets);
  std::vector<cplx> amp(kPackets);
  for (int p = 0; p < kPackets; ++p) {
    mu[p] = centre(rng);
    const double re = normal(rng);
    const double im = normal(rng);
    amp[p] = cplx(re, im);
  }
  const auto xi = grid->xi();
  std::vector<cplx> values(grid->size());
  for (std::size_t m = 0; m < values.size(); ++m) {
    cplx s{};
    for (int p = 0; p < kPackets; ++p) {
      const double z = (xi[m] - mu[p]) / kWidth;
      s += amp[p] * std::exp(-0.5 * z * z);
    }
    values[m] = s;
  }
  return FrequencyField(grid, std::move(values));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined word
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

FrequencyField raw_shape(DataKind kind, const GridPtr& grid, std::uint64_t seed, double& radius) {
  const auto xi = grid->xi();
  std::vector<cplx> values(grid->size());
  switch (kind) {
    case DataKind::gaussian:
      radius = 4.0;  // e^{-16} ~ 1.1e-7
      for (std::size_t m = 0; m < values.size(); ++m) values[m] = std::exp(-xi[m] * xi[m]);
      break;
    case DataKind::bump: {
      constexpr double kHalfWidth = 2.0;
      radius = kHalfWidth;
      for (std::size_t m = 0; m < values.size(); ++m) {
        const double r = xi[m] / kHalfWidth;
        values[m] = std::abs(r) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
      }
      break;
    }
    case DataKind::random_bandlimited:
      radius = 4.0;
      return random_bandlimited_shape(grid, seed);
  }
  return FrequencyField(grid, std::move(values));
}

}  // namespace

FinalData make_final_data(DataKind kind, const GridPtr& grid, double eps0, std::uint64_t seed) {
  if (!(eps0 >= 0.0)) throw InvalidArgument("eps0 must be >= 0");
  double radius = 0.0;
  const FrequencyField shape = raw_shape(kind, grid, seed, radius);
  if (radius > 0.8 * grid->xi_max()) {
    std::ostringstream os;
    os << "final data band |xi| <= " << radius << " does not fit the inner 80% of the grid (xi_max = "
       << grid->xi_max() << ")";
    throw InvalidArgument(os.str());
  }
  const double size = final_data_size(shape);
  const FrequencyField W = (eps0 == 0.0) ? FrequencyField(grid) : cplx(eps0 / size) * shape;
  return FinalData{W, final_data_size(W), eps0 == 0.0 ? 0.0 : radius};
}

FinalData make_final_data(DataKind kind, const SolverParams& params, std::uint64_t seed) {
  return make_final_data(kind, params.grid, params.eps0, seed);
}

FrequencyField asymptotic_profile(const FrequencyField& W, double t, Nonlinearity lambda) {
  if (!(t > 0.0)) throw InvalidArgument("asymptotic_profile: requires t > 0");
  const double rate = sign_of(lambda) * kResonantCoupling * std::log(t);
  std::vector<cplx> out(W.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double theta = -rate * std::norm(W[m]);
    out[m] = W[m] * cplx(std::cos(theta), std::sin(theta));
  }
  return FrequencyField(W.grid_ptr(), std::move(out));
}

FrequencyField asymptotic_profile(const FinalData& data, double t, Nonlinearity lambda) {
  return asymptotic_profile(data.W, t, lambda);
}

FrequencyField profile_time_derivative(const FrequencyField& v, double t, Nonlinearity lambda) {
  if (!(t > 0.0)) throw InvalidArgument("profile_time_derivative: requires t > 0");
  const cplx c = -kI * sign_of(lambda) * kResonantCoupling / t;
  std::vector<cplx> out(v.size());
  kernels::parallel::cubic(v.values(), out);
  for (cplx& z : out) z *= c;
  return FrequencyField(v.grid_ptr(), std::move(out));
}

PhysicalField approximate_solution(const FinalData& data, double t, const SolverParams& params) {
  return inverse_transform(free_propagate(asymptotic_profile(data.W, t, params.lambda), t));
}

void write_final_data_csv(std::ostream& os, const FinalData& data) {
  os << "xi,re,im\n" << std::setprecision(17);
  const auto xi = data.W.grid().xi();
  for (std::size_t m = 0; m < data.W.size(); ++m) {
    os << xi[m] << ',' << data.W[m].real() << ',' << data.W[m].imag() << '\n';
  }
}

FinalData read_final_data_csv(std::istream& is, const GridPtr& grid) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("xi,", 0) != 0) throw InvalidArgument("final data CSV: missing header");
  std::vector<cplx> values;
  values.reserve(grid->size());
  const auto xi = grid->xi();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double x = 0.0, re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(row >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
      throw InvalidArgument("final data CSV: malformed row " + std::to_string(values.size() + 2));
    }
    if (values.size() >= xi.size() || std::abs(x - xi[values.size()]) > 1e-9 * (1.0 + std::abs(x))) {
      throw InvalidArgument("final data CSV: frequencies do not match the grid");
    }
    values.emplace_back(re, im);
  }
  FrequencyField W(grid, std::move(values));
  return FinalData{W, final_data_size(W), effective_support(W)};
}

}  // namespace modwave
