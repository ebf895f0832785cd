#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "dlag/equilibrium.hpp"
#include "dlag/gfield.hpp"
#include "dlag/specfun.hpp"

using namespace dlag;
using namespace dlag::specfun;
using C = std::complex<double>;

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

double rel_err(C got, C want) {
  return std::abs(got - want) / std::abs(want);
}

// Shared supercritical context, c = 4.
struct Fixture {
  equilibrium::SupportData sup = equilibrium::solve_endpoints(4.0);
  gfield::GContext gctx{sup};
  ParametrixContext ctx{gctx, 0.3};
};

Fixture& fix() {
  static Fixture f;
  return f;
}

}  // namespace

TEST_CASE("Airy values at the origin") {
  const AiryValues v = airy({0.0, 0.0});
  CHECK(rel_err(v.ai, {0.35502805388781723926, 0.0}) < 1e-15);
  CHECK(rel_err(v.ai_prime, {-0.25881940379280679841, 0.0}) < 1e-15);
  // Bi(0) = sqrt(3) Ai(0), Bi'(0) = -sqrt(3) Ai'(0).
  CHECK(rel_err(v.bi, std::sqrt(3.0) * v.ai) < 1e-15);
  CHECK(rel_err(v.bi_prime, -std::sqrt(3.0) * v.ai_prime) < 1e-15);
}

TEST_CASE("Airy against reference values, series region") {
  const AiryValues v = airy({1.0, 1.0});
  CHECK(rel_err(v.ai, {0.06045830837183814920, -0.15188956587718140235}) < 1e-14);
  CHECK(rel_err(v.ai_prime, {-0.13062795349964751771, 0.16306759644932391574}) < 1e-14);
  CHECK(rel_err(v.bi, {0.71665807338276843179, 0.61988929040084476435}) < 1e-14);
  CHECK(rel_err(v.bi_prime, {0.07566284417496599292, 0.78370099878545527505}) < 1e-14);

  const AiryValues w = airy({-5.0, 2.0});
  CHECK(rel_err(w.ai, {16.753205015984385906, 0.49797930280112601147}) < 1e-14);
  CHECK(rel_err(w.bi_prime, {38.110849034399188772, -5.4725368696313446321}) < 1e-14);
}

TEST_CASE("Airy against reference values, asymptotic region") {
  auto check = [](C z, C ai, C bi, double tol) {
    const AiryValues v = airy(z);
    CHECK(rel_err(v.ai, ai) < tol);
    CHECK(rel_err(v.bi, bi) < tol);
  };
  check({10.0, 0.0}, {1.1047532552898685934e-10, 0.0},
        {455641153.54822514100, 0.0}, 1e-12);
  check({-10.0, 0.0}, {0.040241238486443190689, 0.0},
        {-0.31467982964383863316, 0.0}, 1e-12);
  check({0.0, 9.0}, {46882.847021512592753, -28835.219252940431251},
        {28835.219253878075916, 46882.847021289314700}, 1e-12);
  check({-3.0, -7.0}, {-164029.73122757157091, 27636.007987537331578},
        {27636.007987397127054, 164029.73122725435078}, 1e-12);
  check({30.0, 0.0}, {3.2082175915504955711e-49, 0.0},
        {9.0572885121513069519e+46, 0.0}, 1e-12);
  check({-30.0, 0.0}, {-0.087968188456842162833, 0.0},
        {-0.22444694220056631974, 0.0}, 1e-12);
  check({6.0, -6.0}, {-2.8849480809812294704e-4, 8.6593745755007132380e-5},
        {-140.50728708353868269, -114.66733803783163933}, 1e-12);

  // Just past the series/asymptotic switchover, on the connection sector
  // boundary arg z = 2 pi / 3 (the least accurate direction).
  const C z = 8.2 * C(std::cos(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0));
  const AiryValues v = airy(z);
  CHECK(rel_err(v.ai, {911960.99764872137330, -526520.92748291371320}) < 1e-11);
  CHECK(rel_err(v.ai_prime, {-2582862.4973173762746, -1491216.3581059321509}) < 1e-11);
  CHECK(rel_err(v.bi, {526520.92748295943487, 911960.99764869497588}) < 1e-11);
  CHECK(rel_err(v.bi_prime, {1491216.3581060644369, -2582862.4973172998993}) < 1e-11);
}

TEST_CASE("Airy Wronskian identity on a complex grid") {
  // Grid kept inside |z| <= 3 so Ai Bi' - Ai' Bi is O(1) and the absolute
  // bound is meaningful.
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.03 + 0.03 * i;
    const double th = -3.1 + 0.062 * i;
    const C z = r * C(std::cos(th), std::sin(th));
    const AiryValues v = airy(z);
    const C w = v.ai * v.bi_prime - v.ai_prime * v.bi;
    worst = std::max(worst, std::abs(w - 1.0 / kPi));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Airy rejects arguments outside the working range") {
  CHECK_THROWS_AS(airy({2e4, 0.0}), std::domain_error);
}

TEST_CASE("log Gamma identities and reference values") {
  CHECK(rel_err(std::exp(log_gamma({0.5, 0.0})), {std::sqrt(kPi), 0.0}) < 1e-13);
  CHECK(rel_err(std::exp(log_gamma({6.0, 0.0})), {120.0, 0.0}) < 1e-13);
  CHECK(rel_err(log_gamma({50.0, 10.0}),
                {143.56243690066182260, 39.087093331489772316}) < 1e-12);
  // Left half-plane via reflection, both half-planes.
  CHECK(rel_err(log_gamma({-3.5, 2.0}),
                {-6.4200913945756578534, -9.7119076581964872305}) < 1e-12);
  CHECK(rel_err(log_gamma({-7.5, -0.3}),
                {-8.7896085981996956580, 24.508643972406146827}) < 1e-12);
  // Recurrence log Gamma(z+1) = log z + log Gamma(z) away from the cut.
  const C z(2.3, 1.7);
  CHECK(std::abs(log_gamma(z + 1.0) - std::log(z) - log_gamma(z)) < 1e-13);
  CHECK_THROWS_AS(log_gamma({-4.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(log_gamma({0.0, 0.0}), std::domain_error);
}

TEST_CASE("H at z = 1, n = 1 and large-n limit") {
  CHECK(rel_err(H({1.0, 0.0}, 1), {1.0844375514192275466, 0.0}) < 1e-13);
  // |H - 1| decreases toward 0 like 1/n.
  double prev = 1.0;
  for (int n : {10, 100, 1000}) {
    const double dev = std::abs(H({1.0, 0.5}, n) - 1.0);
    CHECK(dev < 0.2 * prev);
    prev = dev;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("H branch runs along the negative imaginary axis") {
  // Continuous across the negative real axis ...
  const C up = H({-1.0, 1e-10}, 5), dn = H({-1.0, -1e-10}, 5);
  CHECK(std::abs(up - dn) < 1e-6);
  // ... and cut on the negative imaginary axis.
  const C left = H({-1e-10, -1.0}, 5), right = H({1e-10, -1.0}, 5);
  CHECK(std::abs(left - right) > 0.01);
  CHECK_THROWS_AS(H({0.0, -1.0}, 5), std::domain_error);
  CHECK_THROWS_AS(H({0.0, 0.0}, 5), std::domain_error);
}

TEST_CASE("H* ratio to H is the half-plane oscillatory factor") {
  const int n = 7;
  const C zu(0.01, 0.01);
  const C wantu = 1.0 - std::exp(C(0.0, 2.0 * n * kPi) * std::sqrt(zu));
  CHECK(rel_err(H_star(zu, n) / H(zu, n), wantu) < 1e-13);
  const C zl(0.01, -0.01);
  const C wantl = 1.0 - std::exp(C(0.0, -2.0 * n * kPi) * std::sqrt(zl));
  CHECK(rel_err(H_star(zl, n) / H(zl, n), wantl) < 1e-13);
  CHECK_THROWS_AS(H_star({0.5, 0.0}, n), std::domain_error);
}

TEST_CASE("Szego function: limit at infinity and boundary product") {
  const auto& f = fix();
  const double a = f.sup.a, b = f.sup.b;
  CHECK(f.ctx.D_infinity ==
        doctest::Approx(std::pow(0.5 * (std::sqrt(a) + std::sqrt(b)), -0.2))
            .epsilon(1e-14));
  for (double th : {0.3, 2.0, -2.5}) {
    const C z = 1e6 * C(std::cos(th), std::sin(th));
    CHECK(std::abs(szego_D(z, f.ctx) / f.ctx.D_infinity - 1.0) < 1e-5);
  }
  for (int k = 1; k <= 50; ++k) {
    const double x = a + (b - a) * k / 51.0;
    const C prod = szego_D_boundary(x, Side::plus, f.ctx) *
                   szego_D_boundary(x, Side::minus, f.ctx);
    CHECK(rel_err(prod, {std::pow(x, f.ctx.alpha - 0.5), 0.0}) < 1e-10);
  }
  // One-sided values agree with vertical limits.
  const double xm = 0.5 * (a + b);
  CHECK(std::abs(szego_D_boundary(xm, Side::plus, f.ctx) -
                 szego_D(C(xm, 1e-9), f.ctx)) < 1e-7);
  CHECK_THROWS_AS(szego_D(C(xm, 0.0), f.ctx), std::domain_error);
}

TEST_CASE("alpha = 1/2 makes the Szego function trivial") {
  const auto& f = fix();
  const ParametrixContext ctx(f.gctx, 0.5);
  CHECK(ctx.D_infinity == 1.0);
  CHECK(szego_D({2.0, 1.0}, ctx) == C{1.0, 0.0});
  CHECK(szego_D_boundary(0.5 * (f.sup.a + f.sup.b), Side::plus, ctx) ==
        C{1.0, 0.0});
}

TEST_CASE("gamma map: normalization, algebraic identity, boundary values") {
  const auto& f = fix();
  const double a = f.sup.a, b = f.sup.b;
  // Expansion gamma = 1 + (a+b)/(4z) + O(z^-2).
  const C zfar(7e5, -5e5);
  CHECK(std::abs(gamma_map(zfar, f.ctx) - 1.0 - (a + b) / (4.0 * zfar)) < 1e-11);
  // Real and positive to the right of b.
  const C gr = gamma_map({b + 0.5, 0.0}, f.ctx);
  CHECK(gr.imag() == 0.0);
  CHECK(gr.real() > 0.0);
  // ((g + 1/g)/2)^2 + ((g - 1/g)/(2i))^2 = 1 on an off-cut grid.
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.1 + 0.05 * i;
    const double th = 0.15 + 0.061 * i;  // stays off the real axis
    const C z = r * C(std::cos(th), std::sin(th));
    const C g = gamma_map(z, f.ctx), gi = 1.0 / g;
    const C t1 = 0.5 * (g + gi), t2 = (g - gi) / C(0.0, 2.0);
    worst = std::max(worst, std::abs(t1 * t1 + t2 * t2 - 1.0));
  }
  CHECK(worst < 1e-12);
  // One-sided values on (0, a) and (a, b) match vertical limits.
  for (double x : {0.5 * a, 0.5 * (a + b)}) {
    CHECK(std::abs(gamma_map_boundary(x, Side::plus, f.ctx) -
                   gamma_map(C(x, 1e-9), f.ctx)) < 1e-6);
    CHECK(std::abs(gamma_map_boundary(x, Side::minus, f.ctx) -
                   gamma_map(C(x, -1e-9), f.ctx)) < 1e-6);
  }
  CHECK_THROWS_AS(gamma_map(C(0.5 * a, 0.0), f.ctx), std::domain_error);
  CHECK_THROWS_AS(gamma_map_boundary(a, Side::plus, f.ctx), std::domain_error);
}

TEST_CASE("outer scalars N1/N2") {
  const auto& f = fix();
  const double b = f.sup.b;
  // (N1 D / D_inf)^2 + (N2 / (D_inf D))^2 = 1.
  const C z(2.0 * b, 0.0);
  const auto [n1, n2] = script_N(z, f.ctx);
  const C d = szego_D(z, f.ctx);
  const C t1 = n1 * d / f.ctx.D_infinity, t2 = n2 / (f.ctx.D_infinity * d);
  CHECK(std::abs(t1 * t1 + t2 * t2 - 1.0) < 1e-13);
  // Sign flip across the saturated interval near the origin.
  const auto np = script_N_boundary(0.02, Side::plus, f.ctx);
  const auto nm = script_N_boundary(0.02, Side::minus, f.ctx);
  CHECK(std::abs(np.first + nm.first) < 1e-13);
  CHECK(std::abs(np.first.real()) < 1e-13);  // N1,+ is purely imaginary there
  // N1 -> 1 at infinity.
  CHECK(std::abs(script_N(C(1e6, 3e5), f.ctx).first - 1.0) < 1e-5);
}

TEST_CASE("conformal coordinate f at the band-void edge") {
  const auto& f = fix();
  const double b = f.sup.b;
  CHECK(std::abs(conformal_f({b, 0.0}, f.ctx)) == 0.0);
  // f'(b) = (C2 pi)^{2/3}.
  const double h = 1e-4 * (f.sup.b - f.sup.a);
  const C fp = (conformal_f({b + h, 0.0}, f.ctx) -
                conformal_f({b - h, 0.0}, f.ctx)) /
               (2.0 * h);
  CHECK(std::abs(fp.imag()) < 1e-12);
  CHECK(fp.real() == doctest::Approx(std::pow(f.sup.C2 * kPi, 2.0 / 3.0))
                         .epsilon(1e-8));
  // Real on the axis, Schwarz-symmetric off it.
  const double r = f.ctx.radius_b;
  CHECK(conformal_f({b - 0.7 * r, 0.0}, f.ctx).imag() == 0.0);
  CHECK(conformal_f({b + 0.7 * r, 0.0}, f.ctx).imag() == 0.0);
  const C z(b - 0.4 * r, 0.5 * r);
  CHECK(std::abs(conformal_f(z, f.ctx) -
                 std::conj(conformal_f(std::conj(z), f.ctx))) < 1e-12);
  CHECK_THROWS_AS(conformal_f({b + 3.0 * r, 0.0}, f.ctx), std::domain_error);
}

TEST_CASE("conformal coordinate ftilde at the saturated-band edge") {
  const auto& f = fix();
  const double a = f.sup.a;
  CHECK(std::abs(conformal_ftilde({a, 0.0}, f.ctx)) == 0.0);
  // ftilde'(a) = (pi C1)^{2/3}.
  const double h = 1e-4 * (f.sup.b - f.sup.a);
  const C fp = (conformal_ftilde({a + h, 0.0}, f.ctx) -
                conformal_ftilde({a - h, 0.0}, f.ctx)) /
               (2.0 * h);
  CHECK(std::abs(fp.imag()) < 1e-12);
  CHECK(fp.real() == doctest::Approx(std::pow(kPi * f.sup.C1, 2.0 / 3.0))
                         .epsilon(1e-8));
  // Real-valued and increasing along the real diameter.
  const double r = f.ctx.radius_a;
  double prev = -1e9;
  for (double t : {-0.9, -0.5, -0.1, 0.2, 0.6, 0.9}) {
    const C v = conformal_ftilde({a + t * r, 0.0}, f.ctx);
    CHECK(std::abs(v.imag()) < 1e-13);
    CHECK(v.real() > prev);
    prev = v.real();
  }
  const C z(a + 0.3 * r, 0.4 * r);
  CHECK(std::abs(conformal_ftilde(z, f.ctx) -
                 std::conj(conformal_ftilde(std::conj(z), f.ctx))) < 1e-12);
  CHECK_THROWS_AS(conformal_ftilde({a + 3.0 * r, 0.0}, f.ctx),
                  std::domain_error);
}

TEST_CASE("eta combinations reduce to single Airy terms at special phases") {
  const auto& f = fix();
  // n pi sqrt(z) = pi/2 (mod 2 pi): sqrt(z) = 36.5/40.
  {
    const int n = 40;
    const double rt = 36.5 / n;
    const C z(rt * rt, 0.0);
    REQUIRE(std::abs(z.real() - f.sup.a) < f.ctx.radius_a);
    const auto [e1, e2] = eta(z, n, f.ctx);
    const C arg = -std::pow(double(n), 2.0 / 3.0) * conformal_ftilde(z, f.ctx);
    const AiryValues av = airy(arg);
    CHECK(std::abs(e1 + av.bi) < 1e-11 * std::abs(av.bi));
    CHECK(std::abs(e2 + av.bi_prime) < 1e-11 * std::abs(av.bi_prime));
  }
  // n pi sqrt(z) = 0 (mod 2 pi): sqrt(z) = 40/44.
  {
    const int n = 44;
    const double rt = 40.0 / n;
    const C z(rt * rt, 0.0);
    REQUIRE(std::abs(z.real() - f.sup.a) < f.ctx.radius_a);
    const auto [e1, e2] = eta(z, n, f.ctx);
    const C arg = -std::pow(double(n), 2.0 / 3.0) * conformal_ftilde(z, f.ctx);
    const AiryValues av = airy(arg);
    CHECK(std::abs(e1 - av.ai) < 1e-11 * std::abs(av.ai));
    CHECK(std::abs(e2 - av.ai_prime) < 1e-11 * std::abs(av.ai_prime));
  }
  // Generic point: recomposition from the airy output.
  {
    const int n = 20;
    const C z(f.sup.a + 0.01, 0.0);
    const auto [e1, e2] = eta(z, n, f.ctx);
    const C ft = conformal_ftilde(z, f.ctx);
    const AiryValues av = airy(-std::pow(double(n), 2.0 / 3.0) * ft);
    const C ph = double(n) * kPi * std::sqrt(z);
    CHECK(std::abs(e1 - (std::cos(ph) * av.ai - std::sin(ph) * av.bi)) < 1e-13);
    CHECK(std::abs(e2 - (std::cos(ph) * av.ai_prime -
                         std::sin(ph) * av.bi_prime)) < 1e-13);
  }
}
