#pragma once

// Log-scaled evaluation of the large-n asymptotic formulas for the lattice
// polynomials (supercritical regime): normalization constant and recurrence
// coefficients, plus P_n(z) in the void, band, saturated region, near the
// origin, and near both band edges, with a deterministic region classifier.

#include <complex>

#include "dlag/model.hpp"
#include "dlag/specfun.hpp"

namespace dlag::asymptotics {

enum class RegimeTag { void_region, band, saturated, origin, edge_a, edge_b };

struct Regime {
  RegimeTag tag = RegimeTag::void_region;
  double delta = 0.0;
};

// Region margin used when delta is not supplied: 0.1 min(a, b - a).
double default_delta(const equilibrium::SupportData& s);

// Deterministic partition: the three disks (edges first, then origin) win
// over the two real strips; everything else is void.  Ties (distance
// exactly delta) go to the edge disks.
Regime classify(std::complex<double> z, const specfun::ParametrixContext& ctx,
                double delta = 0.0);

// n-independent constants of the three limit formulas.
struct AsymCoefficients {
  double a = 0.0;
  double b = 0.0;
  double l = 0.0;
  double D_infinity = 1.0;   // outer amplitude at infinity
  double h_prefactor = 0.0;  // pi D_infinity^2 (b-a)/4
  double A2_limit = 0.0;     // (b-a)^2 / 16
  double B_limit = 0.0;      // (a+b) / 2

  explicit AsymCoefficients(const specfun::ParametrixContext& ctx);
};

struct NormRecurrence {
  ScaledValue h;  // n e^{n l} h_prefactor, log-scaled
  double A2 = 0.0;
  double B = 0.0;
};

NormRecurrence asym_norm_and_recurrence(int n, const AsymCoefficients& c);

// Each evaluator accepts points in the closure of its own region (so
// adjacent evaluators can be compared on the common boundary) and throws
// std::domain_error otherwise.

// e^{n g(z)} (R N)_11(z); z bounded away from [0, b].  R carries the first
// subleading contribution of the local models at the band edges.
ScaledValue pn_void(std::complex<double> z, int n,
                    const specfun::ParametrixContext& ctx, double delta = 0.0);

// Cosine formula on the band strip [a + delta, b - delta].
ScaledValue pn_band(double x, int n, const specfun::ParametrixContext& ctx,
                    double delta = 0.0);

// The oscillatory factor cos(theta) of the band formula at x in (a, b);
// comparison grids drop points where it nearly vanishes (the predicted
// value sits next to a polynomial zero and relative error is ill-posed).
double band_cosine(double x, int n, const specfun::ParametrixContext& ctx);

// Sine formula on the saturated strip [delta, a - delta].
ScaledValue pn_saturated(double x, int n,
                         const specfun::ParametrixContext& ctx,
                         double delta = 0.0);

// e^{n g} (R N)_11 H (H* for Re z < 0) in the origin disk; on (0, delta)
// the one-sided real limit, evaluated through the same Gamma-quotient form
// as the saturated strip (uniformly valid down to the first nodes).
ScaledValue pn_origin(std::complex<double> z, int n,
                      const specfun::ParametrixContext& ctx,
                      double delta = 0.0);

// Airy formula in the disk around b.
ScaledValue pn_edge_b(std::complex<double> z, int n,
                      const specfun::ParametrixContext& ctx,
                      double delta = 0.0);

// Ai/Bi formula in the disk around a.
ScaledValue pn_edge_a(std::complex<double> z, int n,
                      const specfun::ParametrixContext& ctx,
                      double delta = 0.0);

}  // namespace dlag::asymptotics
