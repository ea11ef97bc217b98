#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "modwave/types.hpp"

namespace modwave {

/// Periodic box [-L/2, L/2) with N equispaced samples, and the matching
/// frequency lattice xi_k = k * 2pi/L, k = -N/2 .. N/2-1, stored in monotone
/// order. Owns the FFTW plans for its size; plans are created once and executed
/// through the thread-safe new-array interface.
class SpectralGrid {
 public:
  SpectralGrid(std::size_t num_points, double box_length);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  static std::shared_ptr<const SpectralGrid> make(std::size_t num_points, double box_length);

  std::size_t size() const { return n_; }
  double box_length() const { return box_length_; }
  double dx() const { return dx_; }
  double dxi() const { return dxi_; }
  double xi_max() const { return kPi * static_cast<double>(n_) / box_length_; }

  std::span<const double> x() const { return x_; }
  std::span<const double> xi() const { return xi_; }

  bool same_as(const SpectralGrid& other) const {
    return n_ == other.n_ && box_length_ == other.box_length_;
  }

  /// Unnormalized in-place DFTs (FFTW sign conventions: forward e^{-i}, backward e^{+i}).
  void fft_forward(std::span<cplx> data) const;
  void fft_backward(std::span<cplx> data) const;

 private:
  struct Plans;

  std::size_t n_;
  double box_length_;
  double dx_;
  double dxi_;
  std::vector<double> x_;
  std::vector<double> xi_;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

}  // namespace modwave
