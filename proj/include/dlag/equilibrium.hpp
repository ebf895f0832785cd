#pragma once

// Constrained equilibrium measure for the external field V(x) = c x with
// upper constraint 1/(2 sqrt(x)).
//
// Below the critical rate c* = pi^2/4 the minimizer is the unconstrained
// arcsine-type density on (0, 4/c).  Above c* the constraint is active on a
// saturated interval (0, a) and the measure has a band (a, b) and a void
// (b, infinity), with 0 < a < b determined by a 2x2 nonlinear system.

#include <complex>
#include <utility>

#include "dlag/model.hpp"

namespace dlag::equilibrium {

enum class Regime { subcritical, supercritical };

struct SupportData {
  double c = 0.0;
  Regime regime = Regime::supercritical;
  double a = 0.0;  // saturated/band separation point (0 when subcritical)
  double b = 0.0;  // band/void separation point
  double C1 = 0.0; // density approaches the constraint like C1*sqrt(x-a)
  double C2 = 0.0; // density vanishes like C2*sqrt(b-x)
};

// pi^2 / 4: boundary between the two regimes.
double critical_value();

// Solve for (a, b) (supercritical) or return the closed form (subcritical).
// Also computes the edge constants C1, C2 in the supercritical case.
SupportData solve_endpoints(double c, double tol = 1e-12);

// Equilibrium density at x in (0, b).  On a saturated interval this equals
// the constraint 1/(2 sqrt(x)) exactly.
double density(double x, const SupportData& s);

// Residuals of the two endpoint equations; both vanish at the solution.
std::pair<double, double> endpoint_residuals(double a, double b, double c);

namespace detail {

// Cauchy-type inner integral over the saturated interval,
//   I(x) = int_0^a sqrt((a-s)/(s(b-s))) ds/(s-x),   x in (a, b].
double inner_cauchy(double x, double a, double b, double tol = 1e-13);

// Analytic continuation of the same integral to complex x off (0, a); the
// branch on the cut x < a is the limit from Im x >= 0.
std::complex<double> inner_cauchy(std::complex<double> x, double a, double b,
                                  double tol = 1e-13);

// Band density continued to complex s near (a, b); limit from above on the
// real axis left of a.
std::complex<double> band_density(std::complex<double> s,
                                  const SupportData& sup);

}  // namespace detail

}  // namespace dlag::equilibrium
