#pragma once

// Shared small types for the lattice orthogonal-polynomial model:
// weight w(x) = x^alpha exp(-N c x) on the nodes x_k = k^2 / N^2.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace dlag {

struct ModelParams {
  double alpha = 0.0;  // power at the origin, alpha > -1
  double c = 4.0;      // exponential rate coefficient
  int n = 32;          // polynomial degree of interest
  int N = 32;          // lattice refinement parameter (n = N throughout)

  void validate() const {
    if (!(alpha > -1.0)) throw std::invalid_argument("model: alpha must be > -1");
    if (!(c > 0.0)) throw std::invalid_argument("model: c must be > 0");
    if (n < 1 || N < 1) throw std::invalid_argument("model: n, N must be >= 1");
  }
};

// Which side of the real axis a boundary value is taken from.
enum class Side { plus, minus };

// A number stored as log|value| plus either a sign (+-1, for real values) or
// a phase in radians (for complex values).  Keeps exponentially large or
// small quantities representable.
struct ScaledValue {
  double log_modulus = -std::numeric_limits<double>::infinity();
  double phase = 0.0;  // sign for real quantities: 0 or pi
  bool is_zero = true;

  static ScaledValue from_real(double log_mod, int sign) {
    return {log_mod, sign >= 0 ? 0.0 : 3.141592653589793238462643383279503, false};
  }
  static ScaledValue zero() { return {}; }

  double sign() const { return std::cos(phase) >= 0.0 ? 1.0 : -1.0; }
  std::complex<double> unit() const {
    return {std::cos(phase), std::sin(phase)};
  }
  // Value as a double; may overflow/underflow, intended for moderate sizes.
  std::complex<double> to_complex() const {
    if (is_zero) return {0.0, 0.0};
    return std::exp(log_modulus) * unit();
  }
};

}  // namespace dlag
