#include "dlag/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dlag::oracle {

void set_precision_bits(int bits) {
  if (bits < 53) throw std::invalid_argument("oracle: precision_bits >= 53");
  // Boost tracks precision in decimal digits.
  BigFloat::default_precision(
      static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
}

BigFloat pi_big() {
  BigFloat p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

LatticeMeasure::LatticeMeasure(const ModelParams& p, int n_max, int k_min_in,
                               int precision_bits_in,
                               const BigFloat& rate_override)
    : params(p), k_min(k_min_in), precision_bits(precision_bits_in) {
  params.validate();
  if (k_min != 0 && k_min != 1) {
    throw std::invalid_argument("oracle: k_min must be 0 or 1");
  }
  if (k_min == 0 && params.alpha < 0.0) {
    throw std::invalid_argument("oracle: k_min = 0 requires alpha >= 0");
  }
  if (n_max < 1) throw std::invalid_argument("oracle: n_max >= 1");
  if (precision_bits < 53) {
    throw std::invalid_argument("oracle: precision_bits >= 53");
  }

  // Work with guard bits beyond the requested precision.
  set_precision_bits(precision_bits + 32);

  const BigFloat rate = rate_override != 0
                            ? rate_override
                            : BigFloat(params.N) * BigFloat(params.c);
  const BigFloat n2 = BigFloat(params.N) * BigFloat(params.N);
  const BigFloat threshold_scale =
      pow(BigFloat(2), -(precision_bits + 10));

  BigFloat moment_sum = 0;  // running degree-2*n_max moment
  int consecutive_small = 0;
  for (int k = k_min; k <= 4'000'000; ++k) {
    const BigFloat x = BigFloat(k) * BigFloat(k) / n2;
    const BigFloat w =
        (params.alpha == 0.0 ? BigFloat(1) : pow(x, BigFloat(params.alpha))) *
        exp(-rate * x);
    nodes.push_back(x);
    weights.push_back(w);
    const BigFloat term = pow(x, 2 * n_max) * w;
    moment_sum += term;
    if (term < threshold_scale * moment_sum) {
      ++consecutive_small;
    } else {
      consecutive_small = 0;
    }
    if (consecutive_small >= 50 &&
        static_cast<int>(nodes.size()) >= 4 * n_max) {
      break;
    }
  }
  K = k_min + static_cast<int>(nodes.size()) - 1;
}

RecurrenceTable build_recurrence(const LatticeMeasure& m, int n_max) {
  if (static_cast<int>(m.nodes.size()) < 4 * n_max) {
    throw std::invalid_argument("oracle: lattice too short for n_max");
  }
  set_precision_bits(m.precision_bits + 32);

  const std::size_t K = m.nodes.size();
  RecurrenceTable t;
  t.degree_max = n_max;
  t.precision_bits = m.precision_bits;

  std::vector<BigFloat> prev(K, BigFloat(0)), cur(K, BigFloat(1));
  BigFloat h0 = 0, xb = 0;
  for (std::size_t i = 0; i < K; ++i) {
    h0 += m.weights[i];
    xb += m.nodes[i] * m.weights[i];
  }
  t.h.push_back(h0);
  t.B.push_back(xb / h0);
  t.A2.push_back(BigFloat(0));

  for (int k = 0; k < n_max; ++k) {
    // p_{k+1} = (x - B_k) cur - A2_k prev, then its norm and Jacobi entries.
    BigFloat h_next = 0, xh_next = 0;
    for (std::size_t i = 0; i < K; ++i) {
      const BigFloat next =
          (m.nodes[i] - t.B[k]) * cur[i] - t.A2[k] * prev[i];
      prev[i] = cur[i];
      cur[i] = next;
      const BigFloat w2 = next * next * m.weights[i];
      h_next += w2;
      xh_next += m.nodes[i] * w2;
    }
    if (h_next <= 0) {
      throw std::runtime_error(
          "oracle: norm lost all significant bits; raise precision_bits");
    }
    t.h.push_back(h_next);
    t.A2.push_back(h_next / t.h[k]);
    t.B.push_back(xh_next / h_next);
  }
  return t;
}

ScaledValue eval_poly(const RecurrenceTable& t, int n,
                      std::complex<double> z) {
  if (n < 0 || n > t.degree_max) {
    throw std::invalid_argument("oracle: degree out of range");
  }
  std::complex<double> prev(0.0, 0.0), cur(1.0, 0.0);
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const std::complex<double> next =
        (z - t.B_d(k)) * cur - t.A2_d(k) * prev;
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150 || (mag != 0.0 && mag < 1e-150)) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
  }
  if (cur == std::complex<double>(0.0, 0.0)) return ScaledValue::zero();
  return {log_scale + std::log(std::abs(cur)), std::arg(cur), false};
}

void eval_poly_big(const RecurrenceTable& t, int n, const BigFloat& x,
                   BigFloat* value, BigFloat* derivative) {
  BigFloat p_prev = 0, p_cur = 1, d_prev = 0, d_cur = 0;
  for (int k = 0; k < n; ++k) {
    const BigFloat p_next = (x - t.B[k]) * p_cur - t.A2[k] * p_prev;
    const BigFloat d_next = p_cur + (x - t.B[k]) * d_cur - t.A2[k] * d_prev;
    p_prev = p_cur;
    p_cur = p_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  if (value != nullptr) *value = p_cur;
  if (derivative != nullptr) *derivative = d_cur;
}

namespace {

std::vector<BigFloat> zeros_from_table(const RecurrenceTable& t, int n) {
  if (n < 1 || n > t.degree_max) {
    throw std::invalid_argument("oracle: degree out of range");
  }
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = t.B_d(k);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(t.A2_d(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("oracle: tridiagonal eigensolver failed");
  }

  std::vector<BigFloat> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    BigFloat x = solver.eigenvalues()[k];
    for (int it = 0; it < 3; ++it) {
      BigFloat p, dp;
      eval_poly_big(t, n, x, &p, &dp);
      x -= p / dp;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<BigFloat> zeros(const RecurrenceTable& t, int n) {
  set_precision_bits(t.precision_bits + 32);
  return zeros_from_table(t, n);
}

std::vector<BigFloat> continuous_laguerre_zeros(int n, double beta,
                                                double lambda) {
  if (!(beta > -1.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("oracle: need beta > -1, lambda > 0");
  }
  set_precision_bits(192);
  RecurrenceTable t;
  t.degree_max = n;
  t.precision_bits = 160;
  const BigFloat lam(lambda);
  for (int k = 0; k <= n; ++k) {
    t.B.push_back((2 * k + BigFloat(beta) + 1) / lam);
    t.A2.push_back(k == 0 ? BigFloat(0)
                          : BigFloat(k) * (k + BigFloat(beta)) / (lam * lam));
    t.h.push_back(BigFloat(1));  // norms are not needed for zeros
  }
  return zeros_from_table(t, n);
}

BigFloat max_orthogonality_residual(const LatticeMeasure& m,
                                    const RecurrenceTable& t, int n_max) {
  set_precision_bits(m.precision_bits + 32);
  const std::size_t K = m.nodes.size();
  // Values of P_0..P_n_max at every node.
  std::vector<std::vector<BigFloat>> p(n_max + 1,
                                       std::vector<BigFloat>(K));
  for (std::size_t i = 0; i < K; ++i) {
    p[0][i] = 1;
    if (n_max >= 1) p[1][i] = m.nodes[i] - t.B[0];
    for (int k = 1; k < n_max; ++k) {
      p[k + 1][i] =
          (m.nodes[i] - t.B[k]) * p[k][i] - t.A2[k] * p[k - 1][i];
    }
  }
  BigFloat worst = 0;
  for (int a = 0; a <= n_max; ++a) {
    for (int b = a; b <= n_max; ++b) {
      BigFloat inner = 0;
      for (std::size_t i = 0; i < K; ++i) {
        inner += p[a][i] * p[b][i] * m.weights[i];
      }
      BigFloat dev = inner / sqrt(t.h[a] * t.h[b]);
      if (a == b) dev -= 1;
      worst = std::max(worst, BigFloat(abs(dev)));
    }
  }
  return worst;
}

}  // namespace dlag::oracle
