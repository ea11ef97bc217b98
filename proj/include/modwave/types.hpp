#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace modwave {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Precondition or shape violation in a call (bad sizes, mismatched grids,
/// out-of-domain times).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The computation ran but produced something unusable: NaN, blow-up,
/// conservation drift, an invalid tail fit.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sign of the cubic term in i u_t + u_xx/2 = lambda |u|^2 u.
enum class Nonlinearity : int { defocusing = 1, focusing = -1 };

constexpr double sign_of(Nonlinearity n) { return static_cast<double>(static_cast<int>(n)); }

inline Nonlinearity nonlinearity_from_sign(int s) {
  if (s == 1) return Nonlinearity::defocusing;
  if (s == -1) return Nonlinearity::focusing;
  throw InvalidArgument("lambda must be +1 or -1, got " + std::to_string(s));
}

}  // namespace modwave
