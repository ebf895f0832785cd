#include "dlag/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dlag/quadrature.hpp"

namespace dlag::equilibrium {
namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

using std::complex;
using quad::EndpointSpec;

// Neville extrapolation of samples (h_i, y_i) to h = 0.
double neville_to_zero(std::vector<double> h, std::vector<double> y) {
  const size_t m = h.size();
  for (size_t level = 1; level < m; ++level)
    for (size_t i = 0; i + level < m; ++i)
      y[i] = y[i + 1] + (y[i] - y[i + 1]) * h[i + level] / (h[i + level] - h[i]);
  return y[0];
}

}  // namespace

double critical_value() { return kPi * kPi / 4.0; }

namespace detail {

// After s = a - u^2 the integral becomes
//   I(x) = -2 int_0^sqrt(a) u^2 / ((u^2 + (x-a)) sqrt(a-u^2) sqrt(b-a+u^2)) du
// with only a (a - u^2)^{-1/2} endpoint singularity left.
double inner_cauchy(double x, double a, double b, double tol) {
  if (!(x > a)) throw std::invalid_argument("inner_cauchy: need x > a");
  const double t = x - a;
  const double ra = std::sqrt(a);
  // a - u^2 = (ra - u)(ra + u); the first factor comes from the quadrature
  // to avoid cancellation at the endpoint.
  quad::EndpointAwareFn f = [&](double u, double, double dr) {
    const double u2 = u * u;
    return -2.0 * u2 /
           ((u2 + t) * std::sqrt(dr * (ra + u)) * std::sqrt(b - a + u2));
  };
  return quad::integrate(f, 0.0, ra, EndpointSpec{0.0, -0.5}, tol).value;
}

complex<double> inner_cauchy(complex<double> x, double a, double b,
                             double tol) {
  const complex<double> t = x - a;
  const double ra = std::sqrt(a);
  auto f = [&](complex<double> u) -> complex<double> {
    const complex<double> u2 = u * u;
    return -2.0 * u2 /
           ((u2 + t) * std::sqrt(a - u2) * std::sqrt(b - a + u2));
  };
  const double at = std::abs(t);
  if (at == 0.0) throw std::invalid_argument("inner_cauchy: x = a");
  quad::EndpointAwareComplexFn fr = [&](double u, double, double dr) -> complex<double> {
    const double u2 = u * u;
    return -2.0 * u2 /
           ((u2 + t) * std::sqrt(dr * (ra + u)) * std::sqrt(b - a + u2));
  };
  if (t.real() >= 0.25 * at) {
    // Poles u = +-i sqrt(t) stay away from the real path.
    return quad::integrate_complex(fr, 0.0, ra, EndpointSpec{0.0, -0.5}, tol).value;
  }
  // Bend the path away from the pole that approaches the positive real axis.
  // Orientation follows sign(Im x); real x < a is treated as Im x = +0.
  const double sigma = (t.imag() > 0.0 || (t.imag() == 0.0 && !std::signbit(t.imag())))
                           ? 1.0
                           : -1.0;
  const double d = 0.3 * std::min(ra, std::sqrt(b - a));
  const double xd = std::min(0.9 * ra, std::max(0.6 * ra, 2.0 * std::sqrt(at)));
  const complex<double> lift(0.0, sigma * d);
  complex<double> total = quad::integrate_segment(f, {0.0, 0.0}, lift, tol).value;
  total += quad::integrate_segment(f, lift, complex<double>(xd, 0.0) + lift, tol).value;
  total += quad::integrate_segment(f, complex<double>(xd, 0.0) + lift,
                                   complex<double>(xd, 0.0), tol)
               .value;
  total += quad::integrate_complex(fr, xd, ra, EndpointSpec{0.0, -0.5}, tol).value;
  return total;
}

complex<double> band_density(complex<double> s, const SupportData& sup) {
  const complex<double> I = inner_cauchy(s, sup.a, sup.b);
  return std::sqrt(sup.b - s) * (sup.c + I) /
         (2.0 * kPi * std::sqrt(s - sup.a));
}

}  // namespace detail

std::pair<double, double> endpoint_residuals(double a, double b, double c) {
  if (!(0.0 < a && a < b))
    throw std::invalid_argument("endpoint_residuals: need 0 < a < b");
  // During root finding these integrals may be evaluated at awkward trial
  // points; a saturated refinement there still yields a usable estimate.
  auto robust = [](const quad::EndpointAwareFn& f, double L, double R,
                   EndpointSpec spec) {
    try {
      return quad::integrate(f, L, R, spec, 1e-13).value;
    } catch (const quad::QuadratureError& e) {
      return e.best_estimate().real();
    }
  };
  quad::EndpointAwareFn f1 = [&](double x, double dl, double dr) {
    return std::sqrt(dr / (dl * (b - x)));
  };
  const double F1 = c * (b - a) / 4.0 +
                    0.5 * robust(f1, 0.0, a, EndpointSpec{-0.5, 0.5}) - 1.0;
  // Boundedness of the band density at the saturation edge:
  //   c + I(a) = 0,  I(a) = -int_0^a ds / sqrt(s (a-s) (b-s)).
  // (The mass condition written over the band alone reproduces the first
  // equation identically, so this is the independent second relation.)
  quad::EndpointAwareFn f2 = [&](double s, double dl, double dr) {
    return 1.0 / std::sqrt(dl * dr * (b - s));
  };
  const double F2 = c - robust(f2, 0.0, a, EndpointSpec{-0.5, -0.5});
  return {F1, F2};
}

SupportData solve_endpoints(double c, double tol) {
  if (!(c > 0.0)) throw std::invalid_argument("solve_endpoints: c must be > 0");
  SupportData out;
  out.c = c;
  if (c <= critical_value()) {
    out.regime = Regime::subcritical;
    out.a = 0.0;
    out.b = 4.0 / c;
    return out;
  }
  out.regime = Regime::supercritical;

  // Damped Newton with finite-difference Jacobian, continued in c from just
  // above the critical rate so each solve starts near its solution.
  std::vector<double> stages;
  for (double cc = 1.05 * critical_value(); cc < c; cc *= 1.25)
    stages.push_back(cc);
  stages.push_back(c);
  const double c0 = std::min(stages.front(), c);
  double a = std::clamp(1.25 * (c0 - critical_value()), 1e-6, 0.5);
  double b = 1.62 - 0.6 * (c0 - critical_value());
  for (double cc : stages) {
    for (int iter = 0; iter < 50; ++iter) {
      auto [F1, F2] = endpoint_residuals(a, b, cc);
      const double fn = std::max(std::abs(F1), std::abs(F2));
      if (fn < tol) break;
      const double ha = 1e-6 * a, hb = 1e-6 * b;
      auto [F1a, F2a] = endpoint_residuals(a + ha, b, cc);
      auto [F1b, F2b] = endpoint_residuals(a, b + hb, cc);
      const double J11 = (F1a - F1) / ha, J12 = (F1b - F1) / hb;
      const double J21 = (F2a - F2) / ha, J22 = (F2b - F2) / hb;
      const double det = J11 * J22 - J12 * J21;
      if (det == 0.0) throw std::runtime_error("solve_endpoints: singular Jacobian");
      double da = -(J22 * F1 - J12 * F2) / det;
      double db = -(-J21 * F1 + J11 * F2) / det;
      double lam = 1.0;
      const double f0 = F1 * F1 + F2 * F2;
      bool moved = false;
      for (int ls = 0; ls < 25 && !moved; ++ls) {
        const double an = a + lam * da, bn = b + lam * db;
        if (an > 0.0 && bn - an > 0.05 * (b - a)) {
          auto [G1, G2] = endpoint_residuals(an, bn, cc);
          if (G1 * G1 + G2 * G2 < f0) {
            a = an;
            b = bn;
            moved = true;
          }
        }
        lam *= 0.5;
      }
      if (!moved) break;  // stalled at the quadrature noise floor
    }
  }
  auto [F1, F2] = endpoint_residuals(a, b, c);
  if (std::max(std::abs(F1), std::abs(F2)) > 100.0 * tol)
    throw std::runtime_error("solve_endpoints: Newton did not converge");
  out.a = a;
  out.b = b;

  // Edge constants by extrapolating the scaled density to each edge.
  {
    std::vector<double> hs, q1, q2;
    for (int k = 4; k <= 9; ++k) {
      const double h = (b - a) * std::ldexp(1.0, -k);
      const double rho_b = detail::band_density({b - h, 0.0}, out).real();
      const double rho_a = detail::band_density({a + h, 0.0}, out).real();
      hs.push_back(h);
      q2.push_back(rho_b / std::sqrt(h));
      q1.push_back((0.5 / std::sqrt(a + h) - rho_a) / std::sqrt(h));
    }
    out.C2 = neville_to_zero(hs, q2);
    out.C1 = neville_to_zero(hs, q1);
  }
  return out;
}

double density(double x, const SupportData& s) {
  if (s.regime == Regime::subcritical) {
    if (x <= 0.0 || x >= s.b) return 0.0;
    return s.c / (2.0 * kPi) * std::sqrt((s.b - x) / x);
  }
  if (x <= 0.0 || x >= s.b) return 0.0;
  if (x <= s.a) return 0.5 / std::sqrt(x);  // saturated: equals the constraint
  return detail::band_density({x, 0.0}, s).real();
}

}  // namespace dlag::equilibrium
