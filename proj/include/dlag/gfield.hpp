#pragma once

// The g-function g(z) = int_0^b log(z - s) rho(s) ds (principal branch),
// the Lagrange constant l, the band phase int_x^b rho, and the variational
// gap 2 int log|x-s| rho ds - c x - l.

#include <complex>
#include <vector>

#include "dlag/equilibrium.hpp"
#include "dlag/model.hpp"

namespace dlag::gfield {

// Immutable evaluation context: holds the support data plus a Chebyshev
// model of the band density so repeated quadratures stay cheap.
class GContext {
 public:
  // Requires a supercritical support (the asymptotic theorems assume an
  // active constraint; there is no saturated interval otherwise).
  explicit GContext(const equilibrium::SupportData& support);

  const equilibrium::SupportData& support() const { return support_; }

  // Lagrange constant l = 2 int_0^b log|a - s| rho(s) ds - c a.
  double lagrange_constant() const { return l_; }

  // Band density via the cached Chebyshev model; saturated part is exact.
  double rho(double x) const;

  // g(z) for z off the cut (-infinity, b].
  std::complex<double> g_value(std::complex<double> z) const;

  // Boundary value g_{+-}(x) on the real axis, x not in {0, a, b}.
  std::complex<double> g_boundary(double x, Side side) const;

  // int_x^b rho(s) ds for 0 < x < b.
  double band_phase(double x) const;

  // 2 int_0^b log|x - s| rho(s) ds - c x - l, for x > 0, x not in {a, b}.
  double variational_gap(double x) const;

  // int_0^b log|x - s| rho(s) ds (real log-transform), x > 0.
  double log_transform(double x) const;

 private:
  equilibrium::SupportData support_;
  double T_;                   // sqrt(b - a)
  std::vector<double> cheb_;   // coefficients of m(t) = rho / sqrt(b-x) on [0, T]
  double l_ = 0.0;

  double density_factor(double t) const;  // m(t) via Clenshaw
};

}  // namespace dlag::gfield
