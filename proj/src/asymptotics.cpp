#include "dlag/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace dlag::asymptotics {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

using specfun::Complex;

double resolve_delta(const specfun::ParametrixContext& ctx, double delta) {
  const auto& s = ctx.support;
  const double cap = std::min(s.a, s.b - s.a);
  if (delta == 0.0) return 0.1 * cap;
  if (!(delta > 0.0) || !(delta < 0.25 * cap))
    throw std::invalid_argument(
        "asymptotics: delta must lie in (0, min(a, b - a) / 4)");
  return delta;
}

ScaledValue scaled(double log_mod, double phase) {
  return {log_mod, std::remainder(phase, 2.0 * kPi), false};
}

// The formulas are real on the real axis; collapse roundoff in the phase.
ScaledValue scaled_real_axis(double log_mod, double phase) {
  const double r = std::remainder(phase, 2.0 * kPi);
  if (std::abs(std::sin(r)) < 1e-6)
    return ScaledValue::from_real(log_mod, std::cos(r) >= 0.0 ? 1 : -1);
  return {log_mod, r, false};
}

int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }  // (-1)^n

bool in_disk(Complex z, double center, double d) {
  return std::abs(z - Complex(center, 0.0)) < d;
}

// Outer (global) 2x2 model solved against the jump x^{alpha - 1/2} on the
// band and -I on (0, a).  Principal branches give the upper-side limit on
// the cut, and the matrix is I + O(1/z) at infinity with unit determinant.
struct Mat2 {
  Complex n11, n12, n21, n22;
};

double outer_amplitude_infinity(const specfun::ParametrixContext& ctx) {
  const auto& s = ctx.support;
  const double half_mean_root = 0.5 * (std::sqrt(s.a) + std::sqrt(s.b));
  return std::pow(half_mean_root, ctx.alpha - 1.5) * 0.5 *
         std::sqrt(s.b - s.a);
}

Mat2 outer_matrix(Complex z, const specfun::ParametrixContext& ctx) {
  const auto& s = ctx.support;
  const double sa = std::sqrt(s.a), sb = std::sqrt(s.b);
  const double dinf = outer_amplitude_infinity(ctx);
  const Complex root = std::sqrt(z - s.a) * std::sqrt(z - s.b);
  const Complex gamma = std::pow((z - s.b) / (z - s.a), 0.25);
  const Complex jou = (2.0 * z - s.a - s.b + 2.0 * root) / (s.b - s.a);
  const Complex base = (sa + sb) * z / (z + sa * sb + root);
  const Complex d =
      std::pow(base, ctx.alpha - 1.5) * std::sqrt(z) / std::sqrt(jou);
  const Complex p = 0.5 * (gamma + 1.0 / gamma);
  const Complex m = (gamma - 1.0 / gamma) / Complex(0.0, 2.0);
  return {dinf * p / d, dinf * m * d, -m / (dinf * d), p * d / dinf};
}

// phi_b(z) = c z / 2 + l / 2 - g(z), reflected into the lower half plane;
// (2/3) f^{3/2} = phi_b and (2/3) (-ftilde)^{3/2} = i (pi (sqrt z - 1) +
// i phi_b) in the upper half plane, which continues the conformal
// coordinates well beyond the working radius of the power series.
Complex phi_b(Complex z, const specfun::ParametrixContext& ctx) {
  const bool lower = z.imag() < 0.0;
  if (lower) z = std::conj(z);
  const Complex v = 0.5 * ctx.support.c * z +
                    0.5 * ctx.gctx->lagrange_constant() -
                    ctx.gctx->g_value(z);
  return lower ? std::conj(v) : v;
}

Complex f_pow32(Complex z, const specfun::ParametrixContext& ctx) {
  return 1.5 * phi_b(z, ctx);
}

Complex mftilde_pow32(Complex z, const specfun::ParametrixContext& ctx) {
  const bool lower = z.imag() < 0.0;
  const Complex zu = lower ? std::conj(z) : z;
  const Complex v = Complex(0.0, 1.5) *
                    (kPi * (std::sqrt(zu) - 1.0) + Complex(0.0, 1.0) * phi_b(zu, ctx));
  return lower ? std::conj(v) : v;
}

// First row of the correction matrix R = I - (2 pi i)^{-1} oint D(s)/(s-z) ds
// over circles around a and b, where D is the O(1/n) mismatch between the
// Airy local models and the outer matrix.  The integrand is single-valued in
// the punctured disks (its band-cut jumps cancel), so the value does not
// depend on the circle radius; the radius is chosen per point to keep z
// safely on one side.  The origin local model matches the outer matrix to
// O(1/n^2) and contributes nothing at this order.  `enclose` picks the
// branch of R the caller represents P with: the edge evaluators need the
// circle around their own edge to enclose z (R pairs with the local model
// there), everyone else needs z outside both circles (R pairs with the
// outer matrix).
enum class Enclose { none, disk_a, disk_b };

std::pair<Complex, Complex> correction_row(Complex z, int n,
                                           const specfun::ParametrixContext& ctx,
                                           Enclose enclose = Enclose::none) {
  const auto& s = ctx.support;
  constexpr int kQuad = 96;
  const double cap = 0.45 * std::min(s.a, s.b - s.a);
  Complex r11(1.0, 0.0), r12(0.0, 0.0);
  for (int which = 0; which < 2; ++which) {
    const double center = which == 0 ? s.b : s.a;
    const bool enclosed =
        which == 0 ? enclose == Enclose::disk_b : enclose == Enclose::disk_a;
    const double sigma = which == 0 ? 1.0 : -1.0;
    const double dist = std::abs(z - Complex(center, 0.0));
    const double radius = enclosed ? cap : std::min(cap, 0.6 * dist);
    for (int j = 0; j < kQuad; ++j) {
      const double th = 2.0 * kPi * (j + 0.5) / kQuad;
      const Complex e(std::cos(th), std::sin(th));
      const Complex sj = Complex(center, 0.0) + radius * e;
      const Complex den =
          48.0 * n * (which == 0 ? f_pow32(sj, ctx) : mftilde_pow32(sj, ctx));
      const Mat2 nm = outer_matrix(sj, ctx);
      const Complex za = std::pow(sj, ctx.alpha - 0.5);
      const Complex m12 = Complex(0.0, 6.0 * sigma) * za;
      const Complex m21 = Complex(0.0, 6.0 * sigma) / za;
      const Complex t11 = nm.n11 * sigma + nm.n12 * m21;
      const Complex t12 = nm.n11 * m12 - nm.n12 * sigma;
      const Complex d11 = (t11 * nm.n22 - t12 * nm.n21) / den;
      const Complex d12 = (-t11 * nm.n12 + t12 * nm.n11) / den;
      const Complex ker = radius * e / (static_cast<double>(kQuad) * (sj - z));
      r11 -= d11 * ker;
      r12 -= d12 * ker;
    }
  }
  return {r11, r12};
}

// (R N)_{11} at z: the corrected outer scalar.  Principal branches make a
// real-axis z the upper-side boundary value.
Complex corrected_outer(Complex z, int n,
                        const specfun::ParametrixContext& ctx) {
  const Mat2 nm = outer_matrix(z, ctx);
  const auto [r11, r12] = correction_row(z, n, ctx);
  return r11 * nm.n11 + r12 * nm.n21;
}

// Shared band-strip assembly: P = 2 Re[e^{n g_+} (R N)_{11,+}].
ScaledValue band_value(double x, int n, const specfun::ParametrixContext& ctx) {
  const Complex g = ctx.gctx->g_boundary(x, Side::plus);
  const Complex val = corrected_outer(Complex(x, 0.0), n, ctx);
  const double theta = n * g.imag() + std::arg(val);
  const double cosv = std::cos(theta);
  if (cosv == 0.0) return ScaledValue::zero();
  const double log_mod = n * g.real() + std::log(2.0) +
                         std::log(std::abs(val)) +
                         std::log(std::abs(cosv));
  return ScaledValue::from_real(log_mod, cosv > 0.0 ? 1 : -1);
}

// Shared saturated-strip assembly.  The local structure of the lattice is
// carried by an exact ratio of Gamma functions (zero at every node); the
// slowly varying amplitude is the corrected outer scalar, reduced to its
// real form on (0, a) where (R N)_{11,+} is purely imaginary.
ScaledValue saturated_value(double x, int n,
                            const specfun::ParametrixContext& ctx) {
  const auto& sup = ctx.support;
  const double cap = n * std::sqrt(sup.a);  // continuous saturation index
  const double s = n * std::sqrt(x);
  const double sinv = std::sin(kPi * s);
  const Complex val = corrected_outer(Complex(x, 0.0), n, ctx);
  const double amp = std::sqrt(x / (sup.a - x)) * val.imag();
  if (sinv == 0.0 || amp == 0.0) return ScaledValue::zero();
  // Rebalance the exact n^{-2 cap} Gamma(cap+1-s) Gamma(cap+1+s) factor
  // against e^{n g}: the quotient grows like e^{n (g - G)} with G the
  // Stirling-limit exponent below.
  const double big_g = std::sqrt(sup.a) * std::log(sup.a - x) -
                       2.0 * std::sqrt(sup.a) +
                       std::sqrt(x) * std::log((std::sqrt(sup.a) + std::sqrt(x)) /
                                               (std::sqrt(sup.a) - std::sqrt(x)));
  const double log_mod = -2.0 * cap * std::log(static_cast<double>(n)) +
                         std::lgamma(cap + 1.0 - s) +
                         std::lgamma(cap + 1.0 + s) +
                         std::log(std::abs(sinv / (kPi * s))) +
                         n * (ctx.gctx->log_transform(x) - big_g) +
                         std::log(std::abs(amp));
  const int sign =
      parity_sign(n) * (sinv > 0.0 ? 1 : -1) * (amp > 0.0 ? 1 : -1);
  return ScaledValue::from_real(log_mod, sign);
}

// Shared outer assembly for z off the closed interval [0, b].
ScaledValue void_value(Complex z, int n,
                       const specfun::ParametrixContext& ctx) {
  if (z.imag() == 0.0) {
    const double x = z.real();
    z = Complex(x, 0.0);  // normalize -0.0
    const Complex val = corrected_outer(z, n, ctx);
    if (x > ctx.support.b) {
      const double g = ctx.gctx->g_value(z).real();
      return scaled_real_axis(g * n + std::log(std::abs(val)), std::arg(val));
    }
    // x < 0: g_+ = L(x) + i pi, so e^{n g_+} = (-1)^n e^{n L}.
    const Complex g = ctx.gctx->g_boundary(x, Side::plus);
    return scaled_real_axis(n * g.real() + std::log(std::abs(val)),
                            n * g.imag() + std::arg(val));
  }
  const Complex g = ctx.gctx->g_value(z);
  const Complex val = corrected_outer(z, n, ctx);
  return scaled(n * g.real() + std::log(std::abs(val)),
                n * g.imag() + std::arg(val));
}

}  // namespace

double default_delta(const equilibrium::SupportData& s) {
  return 0.1 * std::min(s.a, s.b - s.a);
}

Regime classify(Complex z, const specfun::ParametrixContext& ctx,
                double delta) {
  const double d = resolve_delta(ctx, delta);
  const auto& s = ctx.support;
  if (std::abs(z - Complex(s.a, 0.0)) <= d) return {RegimeTag::edge_a, d};
  if (std::abs(z - Complex(s.b, 0.0)) <= d) return {RegimeTag::edge_b, d};
  if (std::abs(z) < d) return {RegimeTag::origin, d};
  if (std::abs(z.imag()) <= d) {
    if (z.real() >= d && z.real() <= s.a - d) return {RegimeTag::saturated, d};
    if (z.real() >= s.a + d && z.real() <= s.b - d) return {RegimeTag::band, d};
  }
  return {RegimeTag::void_region, d};
}

AsymCoefficients::AsymCoefficients(const specfun::ParametrixContext& ctx) {
  a = ctx.support.a;
  b = ctx.support.b;
  l = ctx.gctx->lagrange_constant();
  D_infinity = outer_amplitude_infinity(ctx);
  h_prefactor = kPi * D_infinity * D_infinity * (b - a) / 4.0;
  A2_limit = (b - a) * (b - a) / 16.0;
  B_limit = (a + b) / 2.0;
}

NormRecurrence asym_norm_and_recurrence(int n, const AsymCoefficients& c) {
  if (n < 1) throw std::invalid_argument("asym_norm_and_recurrence: n >= 1");
  NormRecurrence out;
  out.h = ScaledValue::from_real(
      std::log(static_cast<double>(n)) + std::log(c.h_prefactor) + n * c.l, 1);
  out.A2 = c.A2_limit;
  out.B = c.B_limit;
  return out;
}

ScaledValue pn_void(Complex z, int n, const specfun::ParametrixContext& ctx,
                    double delta) {
  // Shrink the rejection sets by a relative hair so boundary points, where
  // adjacent evaluators are compared, survive roundoff.
  const double d = resolve_delta(ctx, delta) * (1.0 - 1e-9);
  const auto& s = ctx.support;
  const bool in_strip =
      std::abs(z.imag()) < d &&
      ((z.real() > d && z.real() < s.a - d) ||
       (z.real() > s.a + d && z.real() < s.b - d));
  if (in_disk(z, 0.0, d) || in_disk(z, s.a, d) || in_disk(z, s.b, d) ||
      in_strip)
    throw std::domain_error("pn_void: point is not in the outer region");
  return void_value(z, n, ctx);
}

ScaledValue pn_band(double x, int n, const specfun::ParametrixContext& ctx,
                    double delta) {
  const double d = resolve_delta(ctx, delta) * (1.0 + 1e-9);
  const auto& s = ctx.support;
  if (!(x >= s.a + d - 2e-9 && x <= s.b - d + 2e-9))
    throw std::domain_error("pn_band: point is not in the band strip");
  return band_value(x, n, ctx);
}

double band_cosine(double x, int n, const specfun::ParametrixContext& ctx) {
  const auto& s = ctx.support;
  if (!(x > s.a && x < s.b))
    throw std::domain_error("band_cosine: x must lie in (a, b)");
  const Complex g = ctx.gctx->g_boundary(x, Side::plus);
  const Complex val = corrected_outer(Complex(x, 0.0), n, ctx);
  return std::cos(n * g.imag() + std::arg(val));
}

ScaledValue pn_saturated(double x, int n,
                         const specfun::ParametrixContext& ctx, double delta) {
  const double d = resolve_delta(ctx, delta) * (1.0 + 1e-9);
  const auto& s = ctx.support;
  if (!(x >= d - 2e-9 && x <= s.a - d + 2e-9))
    throw std::domain_error("pn_saturated: point is not in the saturated strip");
  return saturated_value(x, n, ctx);
}

ScaledValue pn_origin(Complex z, int n, const specfun::ParametrixContext& ctx,
                      double delta) {
  const double d = resolve_delta(ctx, delta);
  if (!(std::abs(z) <= d * (1.0 + 1e-9)))
    throw std::domain_error("pn_origin: point is not in the origin disk");
  if (z.imag() == 0.0 && z.real() > 0.0) {
    // The Gamma-quotient form stays uniformly accurate down to the first
    // lattice nodes, where n sqrt(x) = O(1).
    return saturated_value(z.real(), n, ctx);
  }
  if (z.real() == 0.0 && z.imag() == 0.0)
    throw std::domain_error("pn_origin: z = 0");
  // The Gamma-quotient factor of the origin model; reflected in the lower
  // half plane so the evaluation stays conjugate-symmetric.
  const bool lower = z.imag() < 0.0;
  const Complex zu = lower ? std::conj(z) : z;
  Complex q = zu.real() >= 0.0 ? specfun::H(zu, n) : specfun::H_star(zu, n);
  if (lower) q = std::conj(q);
  const Complex g = z.imag() == 0.0 ? ctx.gctx->g_boundary(z.real(), Side::plus)
                                    : ctx.gctx->g_value(z);
  const Complex rest = corrected_outer(z, n, ctx) * q;
  if (z.imag() == 0.0)
    return scaled_real_axis(n * g.real() + std::log(std::abs(rest)),
                            n * g.imag() + std::arg(rest));
  return scaled(n * g.real() + std::log(std::abs(rest)),
                n * g.imag() + std::arg(rest));
}

namespace {

// The slowly varying bracket of the Airy formula at b for one row (u1, u2)
// of the outer matrix.  Analytic at b: the quarter-power singularities of
// f^{1/4} and of the row cancel.
Complex edge_b_bracket_row(Complex z, Complex f, int n, Complex u1, Complex u2,
                           const specfun::ParametrixContext& ctx) {
  const double n23 = std::cbrt(static_cast<double>(n) * n);
  const auto av = specfun::airy(n23 * f);
  const Complex zpow = std::pow(z, 0.5 - ctx.alpha);
  const Complex f14 = std::pow(f, 0.25);
  const Complex i(0.0, 1.0);
  return std::pow(static_cast<double>(n), 1.0 / 6.0) * f14 * av.ai *
             (u1 - i * zpow * u2) -
         std::pow(static_cast<double>(n), -1.0 / 6.0) / f14 * av.ai_prime *
             (u1 + i * zpow * u2);
}

Complex edge_b_bracket(Complex z, int n,
                       const specfun::ParametrixContext& ctx) {
  if (z.imag() < 0.0) return std::conj(edge_b_bracket(std::conj(z), n, ctx));
  Complex f = specfun::conformal_f(z, ctx);
  if (z.imag() == 0.0) {
    z = Complex(z.real(), 0.0);
    f = Complex(f.real(), 0.0);  // +0: upper-side limit of the quarter power
  }
  const Mat2 nm = outer_matrix(z, ctx);
  const auto [r11, r12] = correction_row(z, n, ctx, Enclose::disk_b);
  return r11 * edge_b_bracket_row(z, f, n, nm.n11, nm.n12, ctx) +
         r12 * edge_b_bracket_row(z, f, n, nm.n21, nm.n22, ctx);
}

// Same role at a, built from eta1/eta2 and (-ftilde)^{1/4}.
Complex edge_a_bracket_row(Complex z, Complex mf14, Complex eta1, Complex eta2,
                           int n, Complex u1, Complex u2,
                           const specfun::ParametrixContext& ctx) {
  const Complex zpow = std::pow(z, 0.5 - ctx.alpha);
  const Complex i(0.0, 1.0);
  return std::pow(static_cast<double>(n), 1.0 / 6.0) * mf14 * eta1 *
             (i * u1 + zpow * u2) +
         std::pow(static_cast<double>(n), -1.0 / 6.0) / mf14 * eta2 *
             (i * u1 - zpow * u2);
}

Complex edge_a_bracket(Complex z, int n,
                       const specfun::ParametrixContext& ctx) {
  if (z.imag() < 0.0) return std::conj(edge_a_bracket(std::conj(z), n, ctx));
  Complex ft = specfun::conformal_ftilde(z, ctx);
  if (z.imag() == 0.0) {
    z = Complex(z.real(), 0.0);
    ft = Complex(ft.real(), 0.0);
  }
  const auto [eta1, eta2] = specfun::eta(z, n, ctx);
  // -ft with the signed zero of the negation kept: on the band side of a the
  // quarter power must continue from below the negative axis (the upper-side
  // limit in z maps to the lower side in -ftilde).
  const Complex mf14 = std::pow(-ft, 0.25);
  const Mat2 nm = outer_matrix(z, ctx);
  const auto [r11, r12] = correction_row(z, n, ctx, Enclose::disk_a);
  return r11 * edge_a_bracket_row(z, mf14, eta1, eta2, n, nm.n11, nm.n12, ctx) +
         r12 * edge_a_bracket_row(z, mf14, eta1, eta2, n, nm.n21, nm.n22, ctx);
}

using Bracket = Complex (*)(Complex, int, const specfun::ParametrixContext&);

// Evaluate the bracket, averaging over a small cross when z is essentially
// at the edge itself (where the factored form is 0 * infinity).
Complex bracket_near_edge(Complex z, double edge, int n,
                          const specfun::ParametrixContext& ctx,
                          Bracket bracket) {
  const auto& s = ctx.support;
  const double span = s.b - s.a;
  if (std::abs(z - Complex(edge, 0.0)) >= 1e-10 * span)
    return bracket(z, n, ctx);
  const double h = 1e-3 * span * std::pow(48.0 / n, 2.0 / 3.0);
  return 0.25 * (bracket(Complex(edge + h, 0.0), n, ctx) +
                 bracket(Complex(edge - h, 0.0), n, ctx) +
                 bracket(Complex(edge, h), n, ctx) +
                 bracket(Complex(edge, -h), n, ctx));
}

ScaledValue edge_assemble(Complex z, int n,
                          const specfun::ParametrixContext& ctx, Complex big_f,
                          int extra_sign) {
  const auto& s = ctx.support;
  const double log_mod =
      0.5 * std::log(kPi) +
      0.5 * n * (s.c * z.real() + ctx.gctx->lagrange_constant()) +
      std::log(std::abs(big_f));
  const double phase = 0.5 * n * s.c * z.imag() + std::arg(big_f) +
                       (extra_sign < 0 ? kPi : 0.0);
  if (z.imag() == 0.0) return scaled_real_axis(log_mod, phase);
  return scaled(log_mod, phase);
}

// The Airy bracket needs the series form of the conformal map; past its
// working radius fall back to the overlapping outer/strip representation,
// which is the same function there up to the next order.
ScaledValue edge_far_value(Complex z, int n,
                           const specfun::ParametrixContext& ctx) {
  const auto& s = ctx.support;
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < s.b) {
    if (z.real() > s.a) return band_value(z.real(), n, ctx);
    return saturated_value(z.real(), n, ctx);
  }
  return void_value(z, n, ctx);
}

}  // namespace

ScaledValue pn_edge_b(Complex z, int n, const specfun::ParametrixContext& ctx,
                      double delta) {
  const double d = resolve_delta(ctx, delta);
  const auto& s = ctx.support;
  if (!(std::abs(z - Complex(s.b, 0.0)) <= d * (1.0 + 1e-9)))
    throw std::domain_error("pn_edge_b: point is not in the disk around b");
  if (std::abs(z - Complex(s.b, 0.0)) > ctx.radius_b)
    return edge_far_value(z, n, ctx);
  const Complex big_f = bracket_near_edge(z, s.b, n, ctx, edge_b_bracket);
  return edge_assemble(z, n, ctx, big_f, 1);
}

ScaledValue pn_edge_a(Complex z, int n, const specfun::ParametrixContext& ctx,
                      double delta) {
  const double d = resolve_delta(ctx, delta);
  const auto& s = ctx.support;
  if (!(std::abs(z - Complex(s.a, 0.0)) <= d * (1.0 + 1e-9)))
    throw std::domain_error("pn_edge_a: point is not in the disk around a");
  if (std::abs(z - Complex(s.a, 0.0)) > ctx.radius_a)
    return edge_far_value(z, n, ctx);
  const Complex big_f = bracket_near_edge(z, s.a, n, ctx, edge_a_bracket);
  return edge_assemble(z, n, ctx, big_f, parity_sign(n));
}

}  // namespace dlag::asymptotics
