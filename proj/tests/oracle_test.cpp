#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "dlag/oracle.hpp"

using namespace dlag;
using namespace dlag::oracle;
using C = std::complex<double>;

namespace {

// Published 20-digit zeros for the lattice weight e^{-(pi^2/60) x} on
// x_k = k^2, k >= 1, degree 10.
const char* kDiscreteZeros[10] = {
    "1.0312593902618079872", "4.3927946544706143130",
    "10.508882642411045983", "19.696609776199878331",
    "32.270084609499775568", "48.658595847104970581",
    "69.526822240006454052", "95.99803545442174504",
    "130.24647289010848939", "177.85779728345868061"};

struct TableFixture {
  BigFloat rate;
  ModelParams params;
  LatticeMeasure measure;
  RecurrenceTable table;

  TableFixture()
      : rate((set_precision_bits(192), pi_big() * pi_big() / 60)),
        params{0.0, static_cast<double>(rate), 10, 1},
        measure(params, 10, 1, 160, rate),
        table(build_recurrence(measure, 10)) {}
};

TableFixture& fix() {
  static TableFixture f;
  return f;
}

}  // namespace

TEST_CASE("moment identities for the first recurrence entries") {
  const auto& f = fix();
  BigFloat m0 = 0, m1 = 0;
  for (std::size_t i = 0; i < f.measure.nodes.size(); ++i) {
    m0 += f.measure.weights[i];
    m1 += f.measure.nodes[i] * f.measure.weights[i];
  }
  CHECK(static_cast<double>(abs(f.table.h[0] / m0 - 1)) < 1e-40);
  CHECK(static_cast<double>(abs(f.table.B[0] / (m1 / m0) - 1)) < 1e-40);
  for (int k = 0; k <= 10; ++k) {
    CHECK(f.table.h[k] > 0);
    if (k >= 1) CHECK(f.table.A2[k] > 0);
    CHECK(f.table.B[k] > 0);
  }
}

TEST_CASE("norm from the table equals direct inner-product summation") {
  const auto& f = fix();
  BigFloat inner = 0;
  for (std::size_t i = 0; i < f.measure.nodes.size(); ++i) {
    BigFloat p;
    eval_poly_big(f.table, 10, f.measure.nodes[i], &p, nullptr);
    inner += p * p * f.measure.weights[i];
  }
  CHECK(static_cast<double>(abs(inner / f.table.h[10] - 1)) < 1e-20);
}

TEST_CASE("orthogonality residual matrix is tiny") {
  const auto& f = fix();
  const BigFloat worst = max_orthogonality_residual(f.measure, f.table, 10);
  CHECK(static_cast<double>(worst) < std::pow(2.0, -80));  // 2^{-pb/2}
  CHECK(static_cast<double>(worst) < 1e-25);  // covers the <P3,P5> case
}

TEST_CASE("log-scaled evaluation agrees with the recurrence") {
  const auto& f = fix();
  // P0 = 1, P1 = z - B0.
  const ScaledValue p0 = eval_poly(f.table, 0, {3.7, 0.0});
  CHECK(p0.log_modulus == 0.0);
  CHECK(p0.sign() == 1.0);
  const C z(2.0, 1.5);
  const ScaledValue p1 = eval_poly(f.table, 1, z);
  CHECK(std::abs(p1.to_complex() - (z - f.table.B_d(0))) < 1e-13);
  // Higher degree against the extended-precision path at a real point.
  const ScaledValue p7 = eval_poly(f.table, 7, {50.0, 0.0});
  BigFloat exact;
  eval_poly_big(f.table, 7, BigFloat(50), &exact, nullptr);
  const double want = static_cast<double>(log(abs(exact)));
  CHECK(p7.log_modulus == doctest::Approx(want).epsilon(1e-12));
  CHECK(p7.sign() == (exact > 0 ? 1.0 : -1.0));
  CHECK_THROWS_AS(eval_poly(f.table, 11, {1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("published degree-10 zeros are reproduced") {
  const auto& f = fix();
  const auto z = zeros(f.table, 10);
  REQUIRE(z.size() == 10);
  for (int i = 0; i < 10; ++i) {
    const BigFloat want(kDiscreteZeros[i]);
    CHECK(static_cast<double>(abs(z[i] / want - 1)) < 1e-12);
  }
}

TEST_CASE("zero set invariants: ordering, trace, lattice interlacing") {
  const auto& f = fix();
  const auto z = zeros(f.table, 10);
  // Strictly increasing, inside (0, x_K).
  for (int i = 0; i < 10; ++i) {
    CHECK(z[i] > 0);
    CHECK(z[i] < f.measure.nodes.back());
    if (i > 0) CHECK(z[i] > z[i - 1]);
  }
  // Sum of zeros = trace of the Jacobi matrix.
  BigFloat trace = 0, sum = 0;
  for (int k = 0; k < 10; ++k) trace += f.table.B[k];
  for (const auto& x : z) sum += x;
  CHECK(static_cast<double>(abs(sum - trace)) < 1e-30);
  // No closed node interval [x_k, x_{k+1}] holds more than one zero.
  for (std::size_t k = 0; k + 1 < f.measure.nodes.size(); ++k) {
    int count = 0;
    for (const auto& x : z) {
      if (x >= f.measure.nodes[k] && x <= f.measure.nodes[k + 1]) ++count;
    }
    CHECK(count <= 1);
  }
}

TEST_CASE("continuous Laguerre comparator") {
  const double lambda = static_cast<double>(fix().rate);
  const auto z = continuous_laguerre_zeros(10, -0.5, lambda);
  REQUIRE(z.size() == 10);
  CHECK(static_cast<double>(
            abs(z.front() / BigFloat("0.3659238650514353556") - 1)) < 1e-12);
  CHECK(static_cast<double>(
            abs(z.back() / BigFloat("176.45053941796852867") - 1)) < 1e-12);
  // Degree 1: single zero at (beta + 1) / lambda.
  const auto z1 = continuous_laguerre_zeros(1, 0.25, 2.0);
  REQUIRE(z1.size() == 1);
  CHECK(static_cast<double>(abs(z1[0] - BigFloat(1.25) / 2)) < 1e-40);
  // Scaling: zeros(lambda) = zeros(1) / lambda.
  const auto za = continuous_laguerre_zeros(6, 0.5, 1.0);
  const auto zb = continuous_laguerre_zeros(6, 0.5, 4.0);
  for (int i = 0; i < 6; ++i) {
    CHECK(static_cast<double>(abs(zb[i] * 4 - za[i])) < 1e-30);
  }
}

TEST_CASE("discrete and continuous zeros approach each other away from 0") {
  const auto& f = fix();
  const auto zd = zeros(f.table, 10);
  const auto zc =
      continuous_laguerre_zeros(10, -0.5, static_cast<double>(f.rate));
  const double first_gap =
      std::abs(static_cast<double>(zd[0] - zc[0]) /
               static_cast<double>(zd[0]));
  const double last_gap =
      std::abs(static_cast<double>(zd[9] - zc[9]) /
               static_cast<double>(zd[9]));
  CHECK(last_gap < 0.02 * first_gap);
}

TEST_CASE("argument validation") {
  ModelParams p{0.0, 1.0, 4, 2};
  CHECK_THROWS_AS(LatticeMeasure(p, 4, 2, 160), std::invalid_argument);
  ModelParams neg{-0.25, 1.0, 4, 2};
  CHECK_THROWS_AS(LatticeMeasure(neg, 4, 0, 160), std::invalid_argument);
  CHECK_THROWS_AS(LatticeMeasure(p, 4, 1, 40), std::invalid_argument);
  // k_min = 0 is allowed for alpha >= 0.
  LatticeMeasure m0(p, 4, 0, 160);
  CHECK(m0.nodes.front() == 0);
  auto t = build_recurrence(m0, 4);
  const auto z = zeros(t, 4);
  CHECK(z.front() > 0);
}
