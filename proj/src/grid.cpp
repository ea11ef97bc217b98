#include "modwave/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

namespace modwave {

namespace {

// The FFTW planner is not thread-safe; execution through fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct SpectralGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

SpectralGrid::SpectralGrid(std::size_t num_points, double box_length)
    : n_(num_points), box_length_(box_length), plans_(std::make_unique<Plans>()) {
  if (num_points < 8 || !is_power_of_two(num_points)) {
    throw InvalidArgument("num_points must be a power of two >= 8, got " + std::to_string(num_points));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw InvalidArgument("box_length must be positive and finite");
  }
  dx_ = box_length_ / static_cast<double>(n_);
  dxi_ = 2.0 * kPi / box_length_;
  x_.resize(n_);
  xi_.resize(n_);
  const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
  for (std::size_t j = 0; j < n_; ++j) {
    x_[j] = -0.5 * box_length_ + static_cast<double>(j) * dx_;
    xi_[j] = static_cast<double>(static_cast<std::ptrdiff_t>(j) - half) * dxi_;
  }

  // FFTW_ESTIMATE keeps the chosen algorithm, and hence every bit of output,
  // independent of timing noise.
  std::vector<cplx> scratch(n_);
  const int n = static_cast<int>(n_);
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->backward = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plans_->forward == nullptr || plans_->backward == nullptr) {
    throw NumericalError("FFTW failed to create plans");
  }
}

SpectralGrid::~SpectralGrid() {
  std::lock_guard lock(planner_mutex());
  if (plans_->forward != nullptr) fftw_destroy_plan(plans_->forward);
  if (plans_->backward != nullptr) fftw_destroy_plan(plans_->backward);
}

std::shared_ptr<const SpectralGrid> SpectralGrid::make(std::size_t num_points, double box_length) {
  return std::make_shared<const SpectralGrid>(num_points, box_length);
}

void SpectralGrid::fft_forward(std::span<cplx> data) const {
  if (data.size() != n_) throw InvalidArgument("fft buffer does not match grid size");
  fftw_execute_dft(plans_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void SpectralGrid::fft_backward(std::span<cplx> data) const {
  if (data.size() != n_) throw InvalidArgument("fft buffer does not match grid size");
  fftw_execute_dft(plans_->backward, as_fftw(data.data()), as_fftw(data.data()));
}

}  // namespace modwave
