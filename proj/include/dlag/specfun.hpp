#pragma once

// Special functions entering the asymptotic formulas: complex Airy Ai/Bi,
// principal-branch log Gamma, the origin factors H and H*, the Szego
// function D, the algebraic map gamma, the outer scalars N1/N2, and the
// conformal coordinates f (centered at b) and ftilde (centered at a)
// together with the Airy combinations eta1/eta2.

#include <complex>
#include <utility>

#include "dlag/equilibrium.hpp"
#include "dlag/gfield.hpp"
#include "dlag/model.hpp"

namespace dlag::specfun {

using Complex = std::complex<double>;

struct AiryValues {
  Complex ai{};
  Complex ai_prime{};
  Complex bi{};
  Complex bi_prime{};
};

// Ai, Bi and their derivatives.  Working range |z| <= 1e4; series below
// |z| = 8, asymptotic expansions with sector connection formulas beyond.
// Values outside the double exponent range overflow/underflow as usual.
AiryValues airy(Complex z);

// Principal-branch log Gamma.  Throws on the poles 0, -1, -2, ...
Complex log_gamma(Complex z);

// H(z) = e^{n z^{1/2}} Gamma(n z^{1/2}) / (sqrt(2 pi) (n z^{1/2})^{n z^{1/2} - 1/2})
// with arg z in (-pi/2, 3 pi/2) for z^{1/2}, i.e. the cut runs down the
// negative imaginary axis.  Evaluated in log space so Gamma never overflows.
Complex H(Complex z, int n);

// H*(z) = H(z) (1 - e^{2 i n pi sqrt(z)}) in the (closed) upper half-plane
// and H(z) (1 - e^{-2 i n pi sqrt(z)}) in the lower one; sqrt(z) principal.
// Undefined on [0, infinity) and on the negative imaginary axis.
Complex H_star(Complex z, int n);

// Immutable bundle of the scalars that depend on (a, b) and alpha.
struct ParametrixContext {
  ParametrixContext(const gfield::GContext& g, double alpha);

  const gfield::GContext* gctx;
  equilibrium::SupportData support;
  double alpha = 0.0;
  double D_infinity = 1.0;  // ((sqrt a + sqrt b) / 2)^(alpha - 1/2)
  double radius_b = 0.0;    // working radius of f around b
  double radius_a = 0.0;    // working radius of ftilde around a
};

// D(z) = ((sqrt a + sqrt b) z / (z + sqrt(ab) + sqrt((z-a)(z-b))))^(alpha-1/2),
// analytic off [a, b], D -> D_infinity at infinity.
Complex szego_D(Complex z, const ParametrixContext& ctx);

// One-sided limit of D on the band (a, b).
Complex szego_D_boundary(double x, Side side, const ParametrixContext& ctx);

// gamma(z) = z^{1/2} / ((z-a)^{1/4} (z-b)^{1/4}), analytic off [0, b],
// gamma -> 1 at infinity.
Complex gamma_map(Complex z, const ParametrixContext& ctx);

// One-sided limit of gamma on (0, a) or (a, b); x must avoid {0, a, b}.
Complex gamma_map_boundary(double x, Side side, const ParametrixContext& ctx);

// N1 = (D_inf / D)(gamma + 1/gamma)/2, N2 = D_inf D (gamma - 1/gamma)/(-2i).
std::pair<Complex, Complex> script_N(Complex z, const ParametrixContext& ctx);
std::pair<Complex, Complex> script_N_boundary(double x, Side side,
                                              const ParametrixContext& ctx);

// f(z) = -((3 pi / 2) int_z^b rho)^{2/3}: conformal at b, f(b) = 0,
// f'(b) = (C2 pi)^{2/3} > 0.  Only valid for |z - b| <= radius_b.
Complex conformal_f(Complex z, const ParametrixContext& ctx);

// ftilde(z) = ((3 pi / 2) int_a^z (1/(2 sqrt s) - rho))^{2/3}: conformal at
// a, ftilde(a) = 0, increasing along (a, a + delta).  |z - a| <= radius_a.
Complex conformal_ftilde(Complex z, const ParametrixContext& ctx);

// eta1 = cos(n pi sqrt z) Ai(-n^{2/3} ftilde) - sin(n pi sqrt z) Bi(...),
// eta2 the same combination with Ai', Bi'.  sqrt(z) principal.
std::pair<Complex, Complex> eta(Complex z, int n,
                                const ParametrixContext& ctx);

}  // namespace dlag::specfun
