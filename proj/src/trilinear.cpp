#include "modwave/trilinear.hpp"

#include <cmath>

#include "modwave/kernels.hpp"

namespace modwave {

PhysicalField cubic(const PhysicalField& u) {
  std::vector<cplx> out(u.size());
  kernels::parallel::cubic(u.values(), out);
  return PhysicalField(u.grid_ptr(), std::move(out));
}

PhysicalField cubic_difference(const PhysicalField& a, const PhysicalField& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.size());
  kernels::parallel::cubic_difference(a.values(), b.values(), out);
  return PhysicalField(a.grid_ptr(), std::move(out));
}

FrequencyField pulled_back_cubic(const FrequencyField& fhat, double s) {
  if (!(s > 0.0)) throw InvalidArgument("pulled_back_cubic: requires s > 0");
  const PhysicalField u = inverse_transform(free_propagate(fhat, s));
  const FrequencyField back = free_propagate(forward_transform(cubic(u)), -s);
  return kI * back;
}

TrilinearSplit trilinear_split(const FrequencyField& fhat, double s) {
  FrequencyField full = pulled_back_cubic(fhat, s);
  std::vector<cplx> lead(fhat.size());
  kernels::parallel::cubic(fhat.values(), lead);
  const cplx c = kI * kResonantCoupling / s;
  for (cplx& z : lead) z *= c;
  FrequencyField leading(fhat.grid_ptr(), std::move(lead));
  FrequencyField remainder = full - leading;
  return TrilinearSplit{std::move(leading), std::move(remainder), s};
}

FrequencyField oscillatory_oracle(const FrequencyField& fhat, double s, OracleKernel kernel, cplx kappa) {
  if (!(s > 0.0)) throw InvalidArgument("oscillatory_oracle: requires s > 0");
  const SpectralGrid& g = fhat.grid();
  const std::size_t n = g.size();
  if (n > kOracleMaxPoints) {
    throw InvalidArgument("oscillatory_oracle: grid of " + std::to_string(n) + " points exceeds the coarse limit of " +
                          std::to_string(kOracleMaxPoints));
  }
  const PhysicalField f = inverse_transform(fhat);
  const double dx = g.dx();
  const auto x = g.x();
  const auto xi = g.xi();
  const double minus_one = kernel == OracleKernel::remainder ? 1.0 : 0.0;

  // K[(a + n - 1) * w + (b + n - 1)] for index differences a = x - z, b = y - z.
  const std::size_t w = 2 * n - 1;
  std::vector<cplx> K(w * w);
  for (std::size_t ia = 0; ia < w; ++ia) {
    const double a = (static_cast<double>(ia) - static_cast<double>(n - 1)) * dx;
    for (std::size_t ib = 0; ib < w; ++ib) {
      const double b = (static_cast<double>(ib) - static_cast<double>(n - 1)) * dx;
      const double theta = -a * b / s;
      K[ia * w + ib] = cplx(std::cos(theta) - minus_one, std::sin(theta));
    }
  }

  const cplx prefactor = kappa * kI * kResonantCoupling / s * (dx * dx * dx);
  std::vector<cplx> out(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<cplx> A(n);
    for (std::size_t j = 0; j < n; ++j) A[j] = std::polar(1.0, -xi[m] * x[j]) * f[j];
    cplx total{};
    for (std::size_t z = 0; z < n; ++z) {
      cplx over_y{};
      for (std::size_t y = 0; y < n; ++y) {
        const cplx* row = &K[(y + n - 1 - z)];
        cplx over_x{};
        for (std::size_t xx = 0; xx < n; ++xx) over_x += row[(xx + n - 1 - z) * w] * A[xx];
        over_y += A[y] * over_x;
      }
      total += std::conj(A[z]) * over_y;
    }
    out[m] = prefactor * total;
  }
  return FrequencyField(fhat.grid_ptr(), std::move(out));
}

FrequencyField remainder_oracle(const FrequencyField& fhat, double s, cplx kappa) {
  return oscillatory_oracle(fhat, s, OracleKernel::remainder, kappa);
}

namespace {

FrequencyField sample_coarse(const FrequencyField& fine, const GridPtr& coarse, std::size_t factor) {
  const std::size_t n = coarse->size();
  std::vector<cplx> out(n);
  // Coarse index m sits at k = m - n/2; on the fine grid that is k * factor.
  for (std::size_t m = 0; m < n; ++m) out[m] = fine[m * factor];
  return FrequencyField(coarse, std::move(out));
}

}  // namespace

FrequencyField remainder_on_coarse_nodes(const FrequencyField& fhat, double s, std::size_t factor) {
  const FrequencyField fine = refine(fhat, factor);
  return sample_coarse(trilinear_split(fine, s).remainder, fhat.grid_ptr(), factor);
}

OracleCalibration calibrate_oracle(const FrequencyField& fhat, double s, std::size_t factor) {
  const FrequencyField oracle = remainder_oracle(fhat, s);
  const FrequencyField fft = remainder_on_coarse_nodes(fhat, s, factor);
  cplx num{};
  double den = 0.0;
  for (std::size_t m = 0; m < fft.size(); ++m) {
    num += std::conj(oracle[m]) * fft[m];
    den += std::norm(oracle[m]);
  }
  const cplx kappa = den > 0.0 ? num / den : cplx(1.0);
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t m = 0; m < fft.size(); ++m) {
    diff = std::max(diff, std::abs(kappa * oracle[m] - fft[m]));
    ref = std::max(ref, std::abs(fft[m]));
  }
  return OracleCalibration{kappa, ref > 0.0 ? diff / ref : diff};
}

PhysicalField forcing(const FinalData& data, double t, const SolverParams& params) {
  if (!(t > 0.0)) throw InvalidArgument("forcing: requires t > 0");
  const FrequencyField v = asymptotic_profile(data.W, t, params.lambda);
  const FrequencyField dv = profile_time_derivative(v, t, params.lambda);
  const PhysicalField dphi_moved = inverse_transform(free_propagate(dv, t));
  const PhysicalField u_app = inverse_transform(free_propagate(v, t));
  const PhysicalField nl = cubic(u_app);
  const double lam = params.sign();
  std::vector<cplx> out(u_app.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = kI * dphi_moved[j] - lam * nl[j];
  return PhysicalField(u_app.grid_ptr(), std::move(out));
}

FrequencyField forcing_profile(const FinalData& data, double t, const SolverParams& params) {
  return free_propagate(forward_transform(forcing(data, t, params)), -t);
}

ForcingResidual forcing_identity_residual(const FinalData& data, double t, const SolverParams& params,
                                          RemainderRoute route, std::size_t factor) {
  if (!(t > 0.0)) throw InvalidArgument("forcing_identity_residual: requires t > 0");
  const cplx i_lambda = kI * params.sign();
  const FrequencyField v = asymptotic_profile(data.W, t, params.lambda);
  FrequencyField lhs(data.W.grid_ptr());
  FrequencyField R(data.W.grid_ptr());
  if (route == RemainderRoute::fft) {
    lhs = forcing_profile(data, t, params);
    R = trilinear_split(v, t).remainder;
  } else {
    // U(-t)eps = i d_t v + i lambda (pulled-back cubic), the cubic taken on the
    // refined box and read off at the coarse nodes.
    const FrequencyField dv = profile_time_derivative(v, t, params.lambda);
    const FrequencyField pbc =
        sample_coarse(pulled_back_cubic(refine(v, factor), t), data.W.grid_ptr(), factor);
    lhs = kI * dv + i_lambda * pbc;
    R = remainder_oracle(v, t);
  }
  ForcingResidual res;
  for (std::size_t m = 0; m < lhs.size(); ++m) {
    res.absolute = std::max(res.absolute, std::abs(lhs[m] - i_lambda * R[m]));
    res.reference = std::max(res.reference, std::abs(lhs[m]));
  }
  return res;
}

}  // namespace modwave
