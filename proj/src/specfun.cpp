#include "dlag/specfun.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include "dlag/quadrature.hpp"

namespace dlag::specfun {
namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// ---------------------------------------------------------------------------
// Airy functions.
//
// Maclaurin series for |z| <= 8.  The partial terms reach ~2e3 while the
// result can be O(0.1) on the negative axis, so the series is summed in
// 40-digit arithmetic and rounded once at the end.

using BigReal =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                  boost::multiprecision::et_off>;

struct BigComplex {
  BigReal re, im;
};

BigComplex operator+(const BigComplex& x, const BigComplex& y) {
  return {x.re + y.re, x.im + y.im};
}
BigComplex operator*(const BigComplex& x, const BigComplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
BigComplex operator/(const BigComplex& x, double d) {
  return {x.re / d, x.im / d};
}

AiryValues airy_series(Complex z) {
  const BigComplex zb{BigReal(z.real()), BigReal(z.imag())};
  const BigComplex z3 = zb * zb * zb;

  // Ai = c1 f - c2 g, Bi = sqrt(3) (c1 f + c2 g), with
  //   f = 1 + z^3/6 + ...,  g = z + z^4/12 + ...
  BigComplex f{BigReal(1), BigReal(0)}, fsum = f;
  BigComplex g = zb, gsum = g;
  BigComplex fp{BigReal(0), BigReal(0)}, fpsum = fp;  // f'
  BigComplex gp{BigReal(1), BigReal(0)}, gpsum = gp;  // g'
  BigComplex fpt = (zb * zb) / 2.0;                   // first f' term
  fpsum = fpsum + fpt;

  const BigReal tol2 = pow(BigReal(10), -72);
  for (int k = 0; k < 400; ++k) {
    const double tk = 3.0 * k;
    f = (f * z3) / ((tk + 2.0) * (tk + 3.0));
    g = (g * z3) / ((tk + 3.0) * (tk + 4.0));
    gp = (gp * z3) / ((tk + 1.0) * (tk + 3.0));
    fpt = (fpt * z3) / ((tk + 3.0) * (tk + 5.0));
    fsum = fsum + f;
    gsum = gsum + g;
    fpsum = fpsum + fpt;
    gpsum = gpsum + gp;
    const BigReal mag = f.re * f.re + f.im * f.im + g.re * g.re + g.im * g.im;
    const BigReal ref = fsum.re * fsum.re + fsum.im * fsum.im + BigReal(1);
    if (mag < tol2 * ref) break;
  }

  static const BigReal c1 = pow(BigReal(3), BigReal(-2) / 3) /
                            boost::multiprecision::tgamma(BigReal(2) / 3);
  static const BigReal c2 = pow(BigReal(3), BigReal(-1) / 3) /
                            boost::multiprecision::tgamma(BigReal(1) / 3);
  static const BigReal rt3 = sqrt(BigReal(3));

  auto to_c = [](const BigComplex& x) {
    return Complex(static_cast<double>(x.re), static_cast<double>(x.im));
  };
  auto comb = [&](const BigComplex& u, const BigComplex& v, const BigReal& s1,
                  const BigReal& s2) {
    return to_c(BigComplex{s1 * u.re + s2 * v.re, s1 * u.im + s2 * v.im});
  };

  AiryValues out;
  out.ai = comb(fsum, gsum, c1, -c2);
  out.ai_prime = comb(fpsum, gpsum, c1, -c2);
  out.bi = comb(fsum, gsum, rt3 * c1, rt3 * c2);
  out.bi_prime = comb(fpsum, gpsum, rt3 * c1, rt3 * c2);
  return out;
}

struct AiPair {
  Complex ai, aip;
};

// Poincare expansion, accurate for |z| >= 8 within |arg z| <= 2 pi / 3.
AiPair airy_asymptotic(Complex z) {
  const Complex zq = std::pow(z, 0.25);
  const Complex xi = (2.0 / 3.0) * zq * zq * zq * zq * zq * zq;
  const Complex inv_xi = 1.0 / xi;

  Complex su(1.0, 0.0), sv(1.0, 0.0);
  Complex tu(1.0, 0.0);
  double prev = 1.0;
  for (int k = 1; k <= 60; ++k) {
    const double sk = 6.0 * k;
    tu *= -inv_xi * ((sk - 1.0) * (sk - 5.0) / (72.0 * k));
    const double mag = std::abs(tu);
    if (mag >= prev) break;  // divergence onset
    su += tu;
    sv += tu * ((sk + 1.0) / (1.0 - sk));
    prev = mag;
    if (mag < 1e-18) break;
  }

  const double rt_pi2 = 2.0 * std::sqrt(kPi);
  const Complex damp = std::exp(-xi);
  return {damp / (rt_pi2 * zq) * su, -zq * damp / rt_pi2 * sv};
}

// Ai on the full plane: rotate into the reliable sector when needed.
AiPair ai_any(Complex z) {
  if (std::abs(std::arg(z)) <= 2.0 * kPi / 3.0 + 1e-12) {
    return airy_asymptotic(z);
  }
  const Complex rot(std::cos(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0));
  const AiPair p = ai_any(z * rot);
  const AiPair m = ai_any(z * std::conj(rot));
  const Complex rot2 = rot * rot;
  return {-rot * p.ai - std::conj(rot) * m.ai,
          -rot2 * p.aip - std::conj(rot2) * m.aip};
}

AiryValues airy_large(Complex z) {
  const Complex rot(std::cos(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0));
  const AiPair center = ai_any(z);
  const AiPair p = ai_any(z * rot);
  const AiPair m = ai_any(z * std::conj(rot));

  AiryValues out;
  out.ai = center.ai;
  out.ai_prime = center.aip;
  // Bi(z) = e^{i pi/6} Ai(z e^{2 pi i/3}) + e^{-i pi/6} Ai(z e^{-2 pi i/3}).
  const Complex e6(std::cos(kPi / 6.0), std::sin(kPi / 6.0));
  const Complex e56(std::cos(5.0 * kPi / 6.0), std::sin(5.0 * kPi / 6.0));
  out.bi = e6 * p.ai + std::conj(e6) * m.ai;
  out.bi_prime = e56 * p.aip + std::conj(e56) * m.aip;
  return out;
}

// ---------------------------------------------------------------------------
// log Gamma: Stirling series after shifting to Re >= 12; reflection for the
// left half-plane with a branch-stable log(sin(pi z)).

Complex log_sin_pi(Complex z) {
  // For Im z >= 0: sin(pi z) = e^{-i pi z} (1 - e^{2 pi i z}) i / 2.
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  const Complex i_pi(0.0, kPi);
  return -i_pi * z + Complex(0.0, kPi / 2.0) - std::log(2.0) +
         std::log(1.0 - std::exp(2.0 * i_pi * z));
}

Complex log_gamma_stirling(Complex z) {
  // B_{2k} / (2k (2k-1)) for k = 1..10.
  static const double kCoef[10] = {
      1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,        -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0,  43867.0 / 244188.0,
      -174611.0 / 125400.0};
  const Complex lz = std::log(z);
  Complex sum = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * kPi);
  const Complex w2 = 1.0 / (z * z);
  Complex w = 1.0 / z;
  for (double coef : kCoef) {
    sum += coef * w;
    w *= w2;
  }
  return sum;
}

bool is_nonpositive_integer(Complex z) {
  if (z.imag() != 0.0) return false;
  const double r = z.real();
  return r <= 0.0 && r == std::floor(r);
}

}  // namespace

AiryValues airy(Complex z) {
  if (std::abs(z) > 1e4) {
    throw std::domain_error("airy: |z| exceeds the working range 1e4");
  }
  if (std::abs(z) <= 8.0) return airy_series(z);
  return airy_large(z);
}

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw std::domain_error("log_gamma: pole at non-positive integer");
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  Complex shift(0.0, 0.0);
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift;
}

Complex H(Complex z, int n) {
  if (z == 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) {
    throw std::domain_error("H: z on the negative imaginary axis");
  }
  // z^{1/2} with arg z in (-pi/2, 3 pi/2): flip the principal root in the
  // third quadrant (arg z in (-pi, -pi/2) is read as (pi, 3 pi/2)).
  Complex w = std::sqrt(z);
  if (z.real() < 0.0 && z.imag() < 0.0) w = -w;
  const Complex nw = static_cast<double>(n) * w;
  const Complex log_h =
      nw + log_gamma(nw) - 0.5 * std::log(2.0 * kPi) - (nw - 0.5) * std::log(nw);
  return std::exp(log_h);
}

Complex H_star(Complex z, int n) {
  if (z.imag() == 0.0 && z.real() >= 0.0) {
    throw std::domain_error("H_star: z on [0, infinity)");
  }
  const Complex rt = std::sqrt(z);  // principal
  const bool upper = z.imag() > 0.0 || (z.imag() == 0.0 && z.real() < 0.0);
  const Complex expo = Complex(0.0, upper ? 1.0 : -1.0) *
                       (2.0 * static_cast<double>(n) * kPi) * rt;
  return H(z, n) * (1.0 - std::exp(expo));
}

// ---------------------------------------------------------------------------
// Outer scalars.

ParametrixContext::ParametrixContext(const gfield::GContext& g, double alpha_in)
    : gctx(&g), support(g.support()), alpha(alpha_in) {
  const double a = support.a, b = support.b;
  D_infinity = std::pow(0.5 * (std::sqrt(a) + std::sqrt(b)), alpha - 0.5);
  radius_b = std::min(0.2 * (b - a), b - a) / 2.0;
  radius_a = std::min(0.2 * (b - a), std::min(a, b - a)) / 2.0;
}

namespace {

// sqrt((z-a)(z-b)) analytic off [a, b], ~ z at infinity.
Complex edge_root(Complex z, double a, double b) {
  return std::sqrt(z - a) * std::sqrt(z - b);
}

void require_off_band(Complex z, double a, double b, const char* who) {
  if (z.imag() == 0.0 && z.real() >= a && z.real() <= b) {
    throw std::domain_error(std::string(who) + ": z on the cut");
  }
}

Complex szego_from_root(Complex z, Complex root, double a, double b,
                        double alpha) {
  const Complex base =
      (std::sqrt(a) + std::sqrt(b)) * z / (z + std::sqrt(a * b) + root);
  return std::pow(base, alpha - 0.5);
}

}  // namespace

Complex szego_D(Complex z, const ParametrixContext& ctx) {
  const double a = ctx.support.a, b = ctx.support.b;
  require_off_band(z, a, b, "szego_D");
  return szego_from_root(z, edge_root(z, a, b), a, b, ctx.alpha);
}

Complex szego_D_boundary(double x, Side side, const ParametrixContext& ctx) {
  const double a = ctx.support.a, b = ctx.support.b;
  if (!(x > a && x < b)) {
    throw std::domain_error("szego_D_boundary: x not inside (a, b)");
  }
  const double r = std::sqrt((x - a) * (b - x));
  const Complex root(0.0, side == Side::plus ? r : -r);
  return szego_from_root(Complex(x, 0.0), root, a, b, ctx.alpha);
}

Complex gamma_map(Complex z, const ParametrixContext& ctx) {
  const double a = ctx.support.a, b = ctx.support.b;
  if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= b) {
    throw std::domain_error("gamma_map: z on the cut [0, b]");
  }
  // gamma^2 = z / sqrt((z-a)(z-b)); the principal square root of that ratio
  // realizes the branch with cut [0, b] and gamma -> 1 at infinity.
  return std::sqrt(z / edge_root(z, a, b));
}

Complex gamma_map_boundary(double x, Side side,
                           const ParametrixContext& ctx) {
  const double a = ctx.support.a, b = ctx.support.b;
  if (!(x > 0.0 && x < b) || x == a) {
    throw std::domain_error("gamma_map_boundary: x not inside (0,a) u (a,b)");
  }
  const double sign = side == Side::plus ? 1.0 : -1.0;
  if (x < a) {
    const double mag = std::sqrt(x) / std::pow((a - x) * (b - x), 0.25);
    return Complex(0.0, -sign * mag);
  }
  const double mag = std::sqrt(x) / std::pow((x - a) * (b - x), 0.25);
  const double ph = -sign * kPi / 4.0;
  return mag * Complex(std::cos(ph), std::sin(ph));
}

namespace {

std::pair<Complex, Complex> script_n_from(Complex d, Complex gm,
                                          const ParametrixContext& ctx) {
  const Complex gi = 1.0 / gm;
  const Complex n1 = (ctx.D_infinity / d) * 0.5 * (gm + gi);
  const Complex n2 = ctx.D_infinity * d * (gm - gi) / Complex(0.0, -2.0);
  return {n1, n2};
}

}  // namespace

std::pair<Complex, Complex> script_N(Complex z, const ParametrixContext& ctx) {
  return script_n_from(szego_D(z, ctx), gamma_map(z, ctx), ctx);
}

std::pair<Complex, Complex> script_N_boundary(double x, Side side,
                                              const ParametrixContext& ctx) {
  const double a = ctx.support.a;
  // D is analytic across (0, a); its value there is real.
  const Complex d = x < a ? szego_D(Complex(x, 0.0), ctx)
                          : szego_D_boundary(x, side, ctx);
  return script_n_from(d, gamma_map_boundary(x, side, ctx), ctx);
}

// ---------------------------------------------------------------------------
// Conformal coordinates.  Both integrals are regularized by s = edge + t^2
// scaling so the 3/2-power vanishing is explicit and the remaining factor is
// analytic near the edge:
//   int_z^b rho = (b-z)^{3/2} psi(z),      f = (z-b) ((3 pi/2) psi)^{2/3},
//   int_a^z (1/(2 sqrt s) - rho) = (z-a)^{3/2} psit(z),
//                                  ftilde = (z-a) ((3 pi/2) psit)^{2/3}.

namespace {

// rho(s) / sqrt(b - s) continued off the band.  The limit at s = b is the
// edge constant C2; deep refinement may round s onto b exactly.
Complex band_factor_b(Complex s, const equilibrium::SupportData& sup) {
  if (std::abs(s - sup.b) < 1e-18) return {sup.C2, 0.0};
  const Complex i_val = equilibrium::detail::inner_cauchy(s, sup.a, sup.b);
  return (sup.c + i_val) / (2.0 * kPi * std::sqrt(s - sup.a));
}

// (1/(2 sqrt s) - rho(s)) / sqrt(s - a) continued near a; limit C1 at s = a.
Complex band_factor_a(Complex s, const equilibrium::SupportData& sup) {
  if (std::abs(s - sup.a) < 1e-18) return {sup.C1, 0.0};
  const Complex rho = equilibrium::detail::band_density(s, sup);
  return (0.5 / std::sqrt(s) - rho) / std::sqrt(s - sup.a);
}

}  // namespace

Complex conformal_f(Complex z, const ParametrixContext& ctx) {
  const double b = ctx.support.b;
  if (std::abs(z - b) > ctx.radius_b) {
    throw std::domain_error("conformal_f: z outside the working radius");
  }
  const Complex dz = b - z;
  if (dz == 0.0) return {0.0, 0.0};
  const auto& sup = ctx.support;
  const auto psi = quad::integrate_complex(
      [&](double sg) -> Complex {
        return 2.0 * sg * sg * band_factor_b(b - dz * (sg * sg), sup);
      },
      0.0, 1.0, {}, 1e-10);
  return (z - b) * std::pow(1.5 * kPi * psi.value, 2.0 / 3.0);
}

Complex conformal_ftilde(Complex z, const ParametrixContext& ctx) {
  const double a = ctx.support.a;
  if (std::abs(z - a) > ctx.radius_a) {
    throw std::domain_error("conformal_ftilde: z outside the working radius");
  }
  const Complex dz = z - a;
  if (dz == 0.0) return {0.0, 0.0};
  const auto& sup = ctx.support;
  const auto psit = quad::integrate_complex(
      [&](double sg) -> Complex {
        return 2.0 * sg * sg * band_factor_a(a + dz * (sg * sg), sup);
      },
      0.0, 1.0, {}, 1e-10);
  return (z - a) * std::pow(1.5 * kPi * psit.value, 2.0 / 3.0);
}

std::pair<Complex, Complex> eta(Complex z, int n,
                                const ParametrixContext& ctx) {
  const Complex ft = conformal_ftilde(z, ctx);
  const Complex arg = -std::pow(static_cast<double>(n), 2.0 / 3.0) * ft;
  const AiryValues av = airy(arg);
  const Complex phase = static_cast<double>(n) * kPi * std::sqrt(z);
  const Complex cs = std::cos(phase), sn = std::sin(phase);
  return {cs * av.ai - sn * av.bi, cs * av.ai_prime - sn * av.bi_prime};
}

}  // namespace dlag::specfun
