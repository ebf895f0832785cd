#pragma once

// Extended-precision reference implementation of the lattice orthogonal
// polynomials: weight w(x) = x^alpha exp(-N c x) on the nodes
// x_k = k^2 / N^2, k = k_min, k_min + 1, ...  Provides the three-term
// recurrence (discrete Stieltjes), log-scaled evaluation, zeros, and the
// continuous Laguerre comparator for the weight x^beta exp(-lambda x).

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <vector>

#include "dlag/model.hpp"

namespace dlag::oracle {

using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

// Working precision for subsequently created BigFloats (thread-local).
void set_precision_bits(int bits);

// pi at the current working precision.
BigFloat pi_big();

// Truncated lattice with precomputed nodes and weights.  K is extended
// until 50 consecutive terms of the degree-2*n_max moment summand drop
// below 2^(-precision_bits-10) of the running sum (and K >= 4*n_max).
// `rate_override` replaces N*c as the exponential rate when nonzero, so a
// rate like pi^2/60 can be supplied to full precision.
struct LatticeMeasure {
  ModelParams params;
  int k_min = 1;
  int K = 0;
  int precision_bits = 160;
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> weights;

  explicit LatticeMeasure(const ModelParams& p, int n_max, int k_min = 1,
                          int precision_bits = 160,
                          const BigFloat& rate_override = BigFloat(0));
};

// Monic recurrence p_{k+1} = (x - B_k) p_k - A2_k p_{k-1}, norms h_k.
struct RecurrenceTable {
  std::vector<BigFloat> B;
  std::vector<BigFloat> A2;  // A2[0] = 0 by convention
  std::vector<BigFloat> h;
  int degree_max = 0;
  int precision_bits = 160;

  double B_d(int k) const { return static_cast<double>(B[k]); }
  double A2_d(int k) const { return static_cast<double>(A2[k]); }
  double log_h_d(int k) const {
    return static_cast<double>(log(h[k]));
  }
};

RecurrenceTable build_recurrence(const LatticeMeasure& m, int n_max);

// Monic P_n(z) by forward recurrence in double precision with per-step
// rescaling; the result is returned in log-scaled form.
ScaledValue eval_poly(const RecurrenceTable& t, int n, std::complex<double> z);

// P_n(x) and P_n'(x) in extended precision (differentiated recurrence).
void eval_poly_big(const RecurrenceTable& t, int n, const BigFloat& x,
                   BigFloat* value, BigFloat* derivative);

// The n real simple zeros, ascending: tridiagonal eigenvalues polished by
// three Newton steps on the extended-precision recurrence.
std::vector<BigFloat> zeros(const RecurrenceTable& t, int n);

// Zeros of the monic orthogonal polynomial for x^beta exp(-lambda x) on
// (0, infinity); the recurrence is closed-form.
std::vector<BigFloat> continuous_laguerre_zeros(int n, double beta,
                                                double lambda);

// max_{i,j <= n_max} |<P_i, P_j> / sqrt(h_i h_j) - delta_ij| by direct
// summation over the lattice.
BigFloat max_orthogonality_residual(const LatticeMeasure& m,
                                    const RecurrenceTable& t, int n_max);

}  // namespace dlag::oracle
