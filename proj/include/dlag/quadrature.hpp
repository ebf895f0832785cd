#pragma once

// Adaptive Gauss-Legendre quadrature with endpoint-singularity handling.
//
// Integrands with algebraic endpoint behaviour (s - L)^p (R - s)^q, where
// p, q are half-integers > -1, are regularized by the substitution
// s = L + (R - L) sin^2(theta), after which every half-power of (s - L) or
// (R - s) becomes an analytic function of theta.  Panels are then refined
// locally (bisection) until the fixed-order rule stabilizes.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace dlag::quad {

// Leading endpoint exponents of the integrand.  (0, 0) means the integrand
// is regular at both ends; in that case no substitution is performed and the
// rule is exact for polynomials up to the Gauss-Legendre degree.
struct EndpointSpec {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct ComplexResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
};

// Thrown when the panel budget is exhausted before the tolerance is met.
// Carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::complex<double> best,
                  double error_estimate)
      : std::runtime_error(what), best_(best), error_(error_estimate) {}
  std::complex<double> best_estimate() const { return best_; }
  double error_estimate() const { return error_; }

 private:
  std::complex<double> best_;
  double error_;
};

// Integrate f over [L, R].  `spec` declares the endpoint exponents (each
// must be > -1); tolerance is interpreted relative to max(1, |result|).
Result integrate(const std::function<double(double)>& f, double L, double R,
                 const EndpointSpec& spec = {}, double tol = 1e-12);

ComplexResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double L, double R,
    const EndpointSpec& spec = {}, double tol = 1e-12);

// Variant for integrands that are numerically sensitive near an endpoint:
// the callback receives (s, s - L, R - s) with the two distances computed
// without cancellation, so factors like (R - s)^{-1/2} stay accurate even
// when s agrees with R to near machine precision.
using EndpointAwareFn = std::function<double(double, double, double)>;
using EndpointAwareComplexFn =
    std::function<std::complex<double>(double, double, double)>;

Result integrate(const EndpointAwareFn& f, double L, double R,
                 const EndpointSpec& spec = {}, double tol = 1e-12);

ComplexResult integrate_complex(const EndpointAwareComplexFn& f, double L,
                                double R, const EndpointSpec& spec = {},
                                double tol = 1e-12);

// Integrate f along the straight segment from z0 to z1 in the complex plane.
ComplexResult integrate_segment(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> z0, std::complex<double> z1, double tol = 1e-12);

}  // namespace dlag::quad
