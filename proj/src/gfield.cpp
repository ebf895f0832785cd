#include "dlag/gfield.hpp"

#include <cmath>
#include <stdexcept>

#include "dlag/quadrature.hpp"

namespace dlag::gfield {
namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr int kChebNodes = 160;

using std::complex;
using quad::EndpointSpec;

}  // namespace

GContext::GContext(const equilibrium::SupportData& support)
    : support_(support) {
  if (support.regime != equilibrium::Regime::supercritical)
    throw std::invalid_argument("GContext: supercritical support required");
  const double a = support_.a, b = support_.b, c = support_.c;
  T_ = std::sqrt(b - a);

  // Band density written as rho(x) = sqrt(b - x) * m(t), t = sqrt(x - a).
  // m extends analytically to t = 0 (the prefactor c + I vanishes there), so
  // a Chebyshev interpolant on (0, T] with interior nodes captures it.
  std::vector<double> vals(kChebNodes);
  for (int j = 0; j < kChebNodes; ++j) {
    const double theta = kPi * (j + 0.5) / kChebNodes;
    const double t = 0.5 * T_ * (1.0 + std::cos(theta));
    const double I =
        equilibrium::detail::inner_cauchy(a + t * t, a, b, 1e-14);
    vals[j] = (c + I) / (2.0 * kPi * t);
  }
  cheb_.assign(kChebNodes, 0.0);
  for (int k = 0; k < kChebNodes; ++k) {
    double sum = 0.0;
    for (int j = 0; j < kChebNodes; ++j)
      sum += vals[j] * std::cos(k * kPi * (j + 0.5) / kChebNodes);
    cheb_[k] = (k == 0 ? 1.0 : 2.0) * sum / kChebNodes;
  }

  // l = 2 int_0^b log|a - s| rho ds - c a.  The saturated part has the
  // closed form sqrt(a) (log(4a) - 2); the band part uses s = a + t^2.
  const double saturated = std::sqrt(a) * (std::log(4.0 * a) - 2.0);
  quad::EndpointAwareFn f = [&](double t, double, double dr) {
    return 4.0 * t * std::log(t) * std::sqrt(dr * (T_ + t)) *
           density_factor(t);
  };
  const double band =
      quad::integrate(f, 0.0, T_, EndpointSpec{0.0, 0.5}, 1e-12).value;
  l_ = 2.0 * (saturated + band) - c * a;
}

double GContext::density_factor(double t) const {
  // Clenshaw recurrence on [0, T].
  const double u = 2.0 * t / T_ - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(cheb_.size()) - 1; k >= 1; --k) {
    const double b0 = cheb_[k] + 2.0 * u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return cheb_[0] + u * b1 - b2;
}

double GContext::rho(double x) const {
  const double a = support_.a, b = support_.b;
  if (x <= 0.0 || x >= b) return 0.0;
  if (x <= a) return 0.5 / std::sqrt(x);
  return std::sqrt(b - x) * density_factor(std::sqrt(x - a));
}

std::complex<double> GContext::g_value(std::complex<double> z) const {
  if (z.imag() == 0.0 && z.real() <= support_.b)
    throw std::invalid_argument("g_value: z on the cut; use g_boundary");
  const double a = support_.a;
  // Saturated part: log(z - s) / (2 sqrt(s)).
  quad::EndpointAwareComplexFn f1 = [&](double s, double dl,
                                        double) -> complex<double> {
    return std::log(z - s) / (2.0 * std::sqrt(dl));
  };
  complex<double> g =
      quad::integrate_complex(f1, 0.0, a, EndpointSpec{-0.5, 0.0}, 1e-12)
          .value;
  // Band part with s = a + t^2 so the sqrt(x - a) structure is analytic.
  quad::EndpointAwareComplexFn f2 = [&](double t, double,
                                        double dr) -> complex<double> {
    return 2.0 * t * std::log(z - (a + t * t)) * std::sqrt(dr * (T_ + t)) *
           density_factor(t);
  };
  g += quad::integrate_complex(f2, 0.0, T_, EndpointSpec{0.0, 0.5}, 1e-12)
           .value;
  return g;
}

std::complex<double> GContext::g_boundary(double x, Side side) const {
  if (x == 0.0 || x == support_.a || x == support_.b)
    throw std::invalid_argument("g_boundary: x at a branch point");
  const double sign = side == Side::plus ? 1.0 : -1.0;
  const double eps0 = 1e-8 * (1.0 + std::abs(x));
  // Richardson extrapolation of g(x + i eps) in eps -> 0.
  std::vector<double> hs;
  std::vector<complex<double>> gs;
  for (int k = 0; k < 3; ++k) {
    const double eps = eps0 * std::ldexp(1.0, -k);
    hs.push_back(eps);
    gs.push_back(g_value({x, sign * eps}));
  }
  for (size_t level = 1; level < hs.size(); ++level)
    for (size_t i = 0; i + level < hs.size(); ++i)
      gs[i] = gs[i + 1] + (gs[i] - gs[i + 1]) * hs[i + level] /
                              (hs[i + level] - hs[i]);
  return gs[0];
}

double GContext::band_phase(double x) const {
  const double a = support_.a, b = support_.b;
  if (!(x > 0.0 && x < b))
    throw std::invalid_argument("band_phase: need 0 < x < b");
  double head = 0.0, tx = 0.0;
  if (x <= a) {
    head = std::sqrt(a) - std::sqrt(x);  // saturated stretch, closed form
  } else {
    tx = std::sqrt(x - a);
  }
  quad::EndpointAwareFn f = [&](double t, double, double dr) {
    return 2.0 * t * std::sqrt(dr * (T_ + t)) * density_factor(t);
  };
  return head +
         quad::integrate(f, tx, T_, EndpointSpec{0.0, 0.5}, 1e-12).value;
}

double GContext::log_transform(double x) const {
  if (!(x > 0.0)) throw std::invalid_argument("log_transform: need x > 0");
  const double a = support_.a, b = support_.b;
  double total = 0.0;

  // Saturated part int_0^a log|x - s| / (2 sqrt(s)) ds.
  if (x > 0.0 && x < a) {
    // Split at the log singularity.
    quad::EndpointAwareFn fl = [&](double s, double dl, double dr) {
      return std::log(dr) / (2.0 * std::sqrt(dl));
    };
    total += quad::integrate(fl, 0.0, x, EndpointSpec{-0.5, 0.5}, 1e-12).value;
    quad::EndpointAwareFn fr = [&](double s, double dl, double) {
      return std::log(dl) / (2.0 * std::sqrt(s));
    };
    total += quad::integrate(fr, x, a, EndpointSpec{-0.5, 0.5}, 1e-12).value;
  } else if (x == a) {
    total += std::sqrt(a) * (std::log(4.0 * a) - 2.0);
  } else {
    quad::EndpointAwareFn f = [&](double s, double dl, double) {
      return std::log(std::abs(x - s)) / (2.0 * std::sqrt(dl));
    };
    total += quad::integrate(f, 0.0, a, EndpointSpec{-0.5, 0.0}, 1e-12).value;
  }

  // Band part int_a^b log|x - s| rho(s) ds with s = a + t^2.
  auto band_piece = [&](double t0, double t1, bool log_at_left,
                        bool log_at_right) {
    quad::EndpointAwareFn f = [&](double t, double dl, double dr) {
      const double s = a + t * t;
      double lg;
      if (log_at_left)
        lg = std::log(dl * (t + t0));  // |s - x| = (t - t0)(t + t0)
      else if (log_at_right)
        lg = std::log(dr * (t + t1));
      else
        lg = std::log(std::abs(x - s));
      const double drT = T_ - t;
      return 2.0 * t * lg * std::sqrt(drT * (T_ + t)) * density_factor(t);
    };
    // Substituted rule: the log endpoint then appears as theta*log(theta),
    // which local refinement resolves quickly.
    return quad::integrate(f, t0, t1, EndpointSpec{-0.5, 0.5}, 1e-12).value;
  };
  if (x > a && x < b) {
    const double tx = std::sqrt(x - a);
    if (tx > 0.0) total += band_piece(0.0, tx, false, true);
    total += band_piece(tx, T_, true, false);
  } else {
    quad::EndpointAwareFn f = [&](double t, double, double dr) {
      return 2.0 * t * std::log(std::abs(x - (a + t * t))) *
             std::sqrt(dr * (T_ + t)) * density_factor(t);
    };
    total += quad::integrate(f, 0.0, T_, EndpointSpec{0.0, 0.5}, 1e-12).value;
  }
  return total;
}

double GContext::variational_gap(double x) const {
  if (x == support_.a || x == support_.b)
    throw std::invalid_argument("variational_gap: x at an endpoint");
  return 2.0 * log_transform(x) - support_.c * x - l_;
}

}  // namespace dlag::gfield
