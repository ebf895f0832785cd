// Command-line harness: equilibrium solves, oracle builds, regime
// comparisons against the oracle, convergence studies, and the ten-zero
// reference table.  Emits JSON (default) or CSV; exit status 0 iff all
// thresholds of the invoked command are met.
//
// Output schemas are documented in README.md; JSON keys are fixed and
// carry "schema_version".

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlag/asymptotics.hpp"
#include "dlag/equilibrium.hpp"
#include "dlag/gfield.hpp"
#include "dlag/model.hpp"
#include "dlag/oracle.hpp"
#include "dlag/specfun.hpp"

using json = nlohmann::ordered_json;
using namespace dlag;
using C = std::complex<double>;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kPi = 3.141592653589793238462643383279503;

int thread_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("DLAG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Shortest round-trip decimal, shared by the JSON and CSV writers so the
// two encodings carry identical numeric payloads.
std::string num(double x) { return json(x).dump(); }

std::string big_str(const oracle::BigFloat& v, int precision_bits) {
  const int digits = std::max(17, static_cast<int>(precision_bits / 3.32));
  return v.str(digits);
}

void emit(const json& doc, const std::string& format) {
  if (format == "json") {
    std::printf("%s\n", doc.dump(2).c_str());
    return;
  }
  // CSV: one section per array-of-objects field, scalar fields first.
  std::string scalars_hdr, scalars_row;
  for (auto& [key, value] : doc.items()) {
    if (value.is_array()) continue;
    if (!scalars_hdr.empty()) {
      scalars_hdr += ',';
      scalars_row += ',';
    }
    scalars_hdr += key;
    scalars_row += value.is_string() ? value.get<std::string>() : value.dump();
  }
  std::printf("%s\n%s\n", scalars_hdr.c_str(), scalars_row.c_str());
  for (auto& [key, value] : doc.items()) {
    if (!value.is_array() || value.empty()) continue;
    std::string hdr;
    for (auto& [col, cell] : value.front().items()) {
      if (!hdr.empty()) hdr += ',';
      hdr += col;
    }
    std::printf("\n%s\n%s\n", key.c_str(), hdr.c_str());
    for (auto& row : value) {
      std::string line;
      for (auto& [col, cell] : row.items()) {
        if (!line.empty()) line += ',';
        line += cell.is_string() ? cell.get<std::string>() : cell.dump();
      }
      std::printf("%s\n", line.c_str());
    }
  }
}

struct Contexts {
  equilibrium::SupportData sup;
  gfield::GContext gctx;
  specfun::ParametrixContext ctx;

  Contexts(double c, double alpha)
      : sup(equilibrium::solve_endpoints(c)), gctx(sup), ctx(gctx, alpha) {}
};

void require_supercritical(double c) {
  if (!(c > equilibrium::critical_value()))
    throw CLI::ValidationError(
        "regime evaluation requires supercritical c > pi^2/4, got c = " +
        num(c));
}

json scaled_json(const ScaledValue& v) {
  return json{{"log_modulus", v.is_zero ? 0.0 : v.log_modulus},
              {"phase", v.phase},
              {"is_zero", v.is_zero}};
}

double rel_error(const ScaledValue& orac, const ScaledValue& asym) {
  if (orac.is_zero || asym.is_zero) return orac.is_zero == asym.is_zero ? 0.0 : 1e300;
  const double dl = orac.log_modulus - asym.log_modulus;
  const double dp = orac.phase - asym.phase;
  return std::abs(std::exp(dl) * C(std::cos(dp), std::sin(dp)) - 1.0);
}

// ---- compare ----------------------------------------------------------

struct ComparePoint {
  C z;
  bool skip = false;  // too close to a polynomial zero for a ratio test
};

// Inter-node midpoints ((k+0.5)/n)^2 inside [lo, hi], thinned to at most
// `grid` points.
std::vector<double> midpoint_grid(int n, double lo, double hi, int grid) {
  std::vector<double> pts;
  for (int k = 0; k < 2 * n; ++k) {
    const double x = std::pow((k + 0.5) / n, 2);
    if (x > hi) break;
    if (x >= lo) pts.push_back(x);
  }
  if (grid > 0 && static_cast<int>(pts.size()) > grid) {
    std::vector<double> thin;
    for (int j = 0; j < grid; ++j)
      thin.push_back(pts[j * (pts.size() - 1) / (grid - 1)]);
    thin.erase(std::unique(thin.begin(), thin.end()), thin.end());
    pts = thin;
  }
  return pts;
}

std::vector<ComparePoint> compare_grid(const std::string& regime,
                                       const Contexts& cx, int n, double delta,
                                       int grid) {
  const double a = cx.sup.a, b = cx.sup.b;
  const double d = delta > 0.0 ? delta : asymptotics::default_delta(cx.sup);
  std::vector<ComparePoint> pts;
  auto band_like = [&](double x) {
    ComparePoint p{C(x, 0.0)};
    p.skip = std::abs(asymptotics::band_cosine(x, n, cx.ctx)) < 0.15;
    return p;
  };
  if (regime == "band") {
    for (double x : midpoint_grid(n, a + d, b - d, grid))
      pts.push_back(band_like(x));
  } else if (regime == "saturated") {
    for (double x : midpoint_grid(n, d, a - d, grid)) pts.push_back({C(x, 0.0)});
  } else if (regime == "origin") {
    for (double x : midpoint_grid(n, 0.0, d, grid)) pts.push_back({C(x, 0.0)});
    pts.push_back({C(d / 3.0, d / 3.0)});
    pts.push_back({C(d / 3.0, -d / 3.0)});
    pts.push_back({C(-d / 2.0, d / 4.0)});
  } else if (regime == "void") {
    const int g = std::max(grid, 8);
    const int right = g / 2, neg = g / 4, cplx = g - right - neg;
    for (int j = 0; j < right; ++j)
      pts.push_back({C(b + d + (j + 0.5) / right * b, 0.0)});
    for (int j = 0; j < neg; ++j)
      pts.push_back({C(-(j + 0.5) / neg * b / 2.0, 0.0)});
    for (int j = 0; j < cplx; ++j)
      pts.push_back({C(0.5 * (a + b), d + (j + 0.5) / cplx * b / 4.0)});
  } else if (regime == "edge-b" || regime == "edge-a") {
    const double e = regime == "edge-b" ? b : a;
    pts.push_back({C(e, 0.0)});
    for (double t : {0.25, 0.5, 0.75, 0.99}) {
      for (double s : {-1.0, 1.0}) {
        const double x = e + s * t * d;
        ComparePoint p{C(x, 0.0)};
        if (x > a && x < b)
          p.skip = std::abs(asymptotics::band_cosine(x, n, cx.ctx)) < 0.15;
        pts.push_back(p);
      }
    }
    pts.push_back({C(e, 0.5 * d)});
    pts.push_back({C(e, -0.5 * d)});
    pts.push_back({C(e + 0.35 * d, 0.35 * d)});
    pts.push_back({C(e - 0.35 * d, -0.35 * d)});
  }
  return pts;
}

int cmd_compare(const std::string& regime, int n, double c, double alpha,
                int grid, double delta, int precision_bits, int threads,
                const std::string& format) {
  require_supercritical(c);
  Contexts cx(c, alpha);
  const double d = delta > 0.0 ? delta : asymptotics::default_delta(cx.sup);

  ModelParams params{alpha, c, n, n};
  oracle::set_precision_bits(precision_bits);
  oracle::LatticeMeasure measure(params, n, 1, precision_bits);
  const auto rec = oracle::build_recurrence(measure, n);

  auto pts = compare_grid(regime, cx, n, delta, grid);
  struct Row {
    C z;
    ScaledValue orac, asym;
    double err = 0.0;
    bool skip = false;
  };
  std::vector<Row> rows(pts.size());
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
    Row& r = rows[i];
    r.z = pts[i].z;
    r.skip = pts[i].skip;
    if (r.skip) return;
    r.orac = oracle::eval_poly(rec, n, r.z);
    if (regime == "void")
      r.asym = asymptotics::pn_void(r.z, n, cx.ctx, delta);
    else if (regime == "band")
      r.asym = asymptotics::pn_band(r.z.real(), n, cx.ctx, delta);
    else if (regime == "saturated")
      r.asym = asymptotics::pn_saturated(r.z.real(), n, cx.ctx, delta);
    else if (regime == "origin")
      r.asym = asymptotics::pn_origin(r.z, n, cx.ctx, delta);
    else if (regime == "edge-b")
      r.asym = asymptotics::pn_edge_b(r.z, n, cx.ctx, delta);
    else
      r.asym = asymptotics::pn_edge_a(r.z, n, cx.ctx, delta);
    r.err = rel_error(r.orac, r.asym);
  });

  double max_err = 0.0;
  std::vector<double> errs;
  json points = json::array();
  for (const Row& r : rows) {
    json row{{"re", r.z.real()}, {"im", r.z.imag()}, {"regime", regime}};
    if (r.skip) {
      row["skipped"] = "near polynomial zero";
    } else {
      row["oracle"] = scaled_json(r.orac);
      row["asym"] = scaled_json(r.asym);
      row["relative_error"] = r.err;
      max_err = std::max(max_err, r.err);
      errs.push_back(r.err);
    }
    points.push_back(row);
  }
  std::sort(errs.begin(), errs.end());
  const double median = errs.empty() ? 0.0 : errs[errs.size() / 2];
  const double threshold =
      (regime == "band" || regime == "void") ? 6.0 / n : 10.0 / n;

  json doc{{"schema_version", kSchemaVersion},
           {"command", "compare"},
           {"regime", regime},
           {"n", n},
           {"c", c},
           {"alpha", alpha},
           {"delta", d},
           {"precision_bits", precision_bits},
           {"threshold", threshold},
           {"max_err", max_err},
           {"median_err", median},
           {"pass", max_err <= threshold},
           {"points", points}};
  emit(doc, format);
  return max_err <= threshold ? 0 : 1;
}

// ---- equilibrium ------------------------------------------------------

int cmd_equilibrium(double c, double tol, const std::string& format) {
  const auto sup = equilibrium::solve_endpoints(c, tol);
  const auto [r1, r2] = equilibrium::endpoint_residuals(sup.a, sup.b, c);
  gfield::GContext gctx(sup);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "equilibrium"},
           {"c", c},
           {"a", sup.a},
           {"b", sup.b},
           {"residual1", r1},
           {"residual2", r2},
           {"C1", sup.C1},
           {"C2", sup.C2},
           {"l", gctx.lagrange_constant()}};
  emit(doc, format);
  return (std::abs(r1) <= 1e-9 && std::abs(r2) <= 1e-9) ? 0 : 1;
}

// ---- oracle -----------------------------------------------------------

int cmd_oracle(bool want_zeros, int n, double c, double alpha, int bigN,
               int precision_bits, bool include_origin_node,
               const std::string& format) {
  ModelParams params{alpha, c, n, bigN};
  oracle::set_precision_bits(precision_bits);
  oracle::LatticeMeasure measure(params, n, include_origin_node ? 0 : 1,
                                 precision_bits);
  const auto rec = oracle::build_recurrence(measure, n);
  json doc{{"schema_version", kSchemaVersion},
           {"command", want_zeros ? "oracle zeros" : "oracle recurrence"},
           {"n", n},
           {"c", c},
           {"alpha", alpha},
           {"bigN", bigN},
           {"precision_bits", precision_bits},
           {"k_min", include_origin_node ? 0 : 1}};
  if (want_zeros) {
    json zs = json::array();
    for (const auto& z : oracle::zeros(rec, n))
      zs.push_back(json{{"zero", big_str(z, precision_bits)}});
    doc["zeros"] = zs;
  } else {
    json rows = json::array();
    for (int k = 0; k <= n; ++k)
      rows.push_back(json{{"k", k},
                          {"B", big_str(rec.B[k], precision_bits)},
                          {"A2", big_str(rec.A2[k], precision_bits)},
                          {"h", big_str(rec.h[k], precision_bits)}});
    doc["recurrence"] = rows;
  }
  emit(doc, format);
  return 0;
}

// ---- table1 -----------------------------------------------------------

// Published ten-zero reference values (20 digits) for the rate pi^2/60.
const char* kDiscreteZeros[10] = {
    "1.0312593902618079872", "4.3927946544706143130", "10.508882642411045983",
    "19.696609776199878331", "32.270084609499775568", "48.658595847104970581",
    "69.526822240006454052", "95.99803545442174504",  "130.24647289010848939",
    "177.85779728345868061"};
const char* kContinuousZeros[10] = {
    "0.3659238650514353556", "3.3063179324671812008", "9.2583899628419669141",
    "18.374677972612339445", "30.912532317124747650", "47.281160918670718658",
    "68.137261123322616690", "94.600529260150193532", "128.84341399111556911",
    "176.45053941796852867"};

int cmd_table1(int precision_bits, const std::string& format) {
  oracle::set_precision_bits(precision_bits);
  const oracle::BigFloat rate = oracle::pi_big() * oracle::pi_big() / 60;
  const double rate_d = static_cast<double>(rate);

  // The published zeros live on the unscaled lattice {k^2} (N = 1), with
  // the exponential rate supplied exactly.
  ModelParams params{0.0, rate_d, 10, 1};
  oracle::LatticeMeasure measure(params, 10, 1, precision_bits, rate);
  const auto rec = oracle::build_recurrence(measure, 10);
  const auto dz = oracle::zeros(rec, 10);
  const auto cz = oracle::continuous_laguerre_zeros(10, -0.5, rate_d);

  double worst = 0.0;
  json rows = json::array();
  for (int k = 0; k < 10; ++k) {
    const oracle::BigFloat ref_d(kDiscreteZeros[k]), ref_c(kContinuousZeros[k]);
    const double dev_d = std::abs(static_cast<double>((dz[k] - ref_d) / ref_d));
    const double dev_c = std::abs(static_cast<double>((cz[k] - ref_c) / ref_c));
    worst = std::max({worst, dev_d, dev_c});
    rows.push_back(json{
        {"k", k + 1},
        {"discrete", big_str(dz[k], precision_bits)},
        {"discrete_published", kDiscreteZeros[k]},
        {"discrete_rel_dev", dev_d},
        {"continuous", big_str(cz[k], precision_bits)},
        {"continuous_published", kContinuousZeros[k]},
        {"continuous_rel_dev", dev_c},
        {"discrete_continuous_gap",
         std::abs(static_cast<double>((dz[k] - cz[k]) / dz[k]))}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"command", "table1"},
           {"precision_bits", precision_bits},
           {"threshold", 1e-12},
           {"max_rel_dev", worst},
           {"pass", worst <= 1e-12},
           {"zeros", rows}};
  emit(doc, format);
  return worst <= 1e-12 ? 0 : 1;
}

// ---- convergence ------------------------------------------------------

int cmd_convergence(const std::string& quantity, std::vector<int> n_list,
                    double c, double alpha, int precision_bits,
                    const std::string& format) {
  require_supercritical(c);
  Contexts cx(c, alpha);
  asymptotics::AsymCoefficients coef(cx.ctx);
  const C zpt(cx.sup.b + 1.0, 0.0);

  json rows = json::array();
  std::vector<double> logn, logerr;
  for (int n : n_list) {
    ModelParams params{alpha, c, n, n};
    oracle::set_precision_bits(precision_bits);
    oracle::LatticeMeasure measure(params, n, 1, precision_bits);
    const auto rec = oracle::build_recurrence(measure, n);
    const auto nr = asymptotics::asym_norm_and_recurrence(n, coef);
    double orac = 0.0, asym = 0.0, err = 0.0;
    if (quantity == "h") {
      orac = rec.log_h_d(n);
      asym = nr.h.log_modulus;
      err = std::abs(std::exp(orac - asym) - 1.0);
    } else if (quantity == "A2") {
      orac = rec.A2_d(n);
      asym = nr.A2;
      err = std::abs(orac / asym - 1.0);
    } else if (quantity == "B") {
      orac = rec.B_d(n);
      asym = nr.B;
      err = std::abs(orac / asym - 1.0);
    } else {  // pn at a fixed void point
      const auto o = oracle::eval_poly(rec, n, zpt);
      const auto a = asymptotics::pn_void(zpt, n, cx.ctx);
      orac = o.log_modulus;
      asym = a.log_modulus;
      err = rel_error(o, a);
    }
    rows.push_back(json{{"n", n},
                        {"oracle", orac},
                        {"asym", asym},
                        {"rel_err", err}});
    logn.push_back(std::log(static_cast<double>(n)));
    logerr.push_back(std::log(std::max(err, 1e-300)));
  }
  // least-squares slope of log err vs log n
  const int m = static_cast<int>(logn.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sx += logn[i];
    sy += logerr[i];
    sxx += logn[i] * logn[i];
    sxy += logn[i] * logerr[i];
  }
  const double slope =
      m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  const bool pass = m < 2 || (slope >= -1.35 && slope <= -0.65);

  json doc{{"schema_version", kSchemaVersion},
           {"command", "convergence"},
           {"quantity", quantity},
           {"c", c},
           {"alpha", alpha},
           {"precision_bits", precision_bits},
           {"slope", slope},
           {"slope_window", json::array({-1.35, -0.65})},
           {"pass", pass},
           {"rows", rows}};
  emit(doc, format);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice orthogonal polynomial asymptotics harness"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: DLAG_THREADS or logical cores)");

  double c = 4.0, alpha = 0.0, tol = 1e-12, delta = 0.0;
  int n = 32, bigN = 0, precision_bits = 160, grid = 20;
  bool include_origin_node = false;

  auto* eq = app.add_subcommand("equilibrium", "solve for the support [a, b]");
  eq->add_option("--c", c, "field strength")->required();
  eq->add_option("--tol", tol, "endpoint tolerance");

  auto* orc = app.add_subcommand("oracle", "extended-precision reference");
  orc->require_subcommand(1);
  auto add_oracle_opts = [&](CLI::App* sub) {
    sub->add_option("--n", n, "degree")->required();
    sub->add_option("--c", c, "field strength")->required();
    sub->add_option("--alpha", alpha, "origin exponent")->required();
    sub->add_option("--bigN", bigN, "lattice parameter N (default n)");
    sub->add_option("--precision-bits", precision_bits, "MPFR precision");
    sub->add_flag("--include-origin-node", include_origin_node,
                  "start the lattice at k = 0");
  };
  auto* orc_rec = orc->add_subcommand("recurrence", "recurrence coefficients");
  add_oracle_opts(orc_rec);
  auto* orc_zeros = orc->add_subcommand("zeros", "sorted polynomial zeros");
  add_oracle_opts(orc_zeros);

  std::string regime;
  auto* cmp = app.add_subcommand("compare", "oracle vs asymptotics on a grid");
  cmp->add_option("--regime", regime, "which evaluator")
      ->required()
      ->check(CLI::IsMember(
          {"void", "band", "saturated", "origin", "edge-a", "edge-b"}));
  cmp->add_option("--n", n, "degree")->required();
  cmp->add_option("--c", c, "field strength")->required();
  cmp->add_option("--alpha", alpha, "origin exponent")->required();
  cmp->add_option("--grid", grid, "grid size");
  cmp->add_option("--delta", delta, "region margin (default 0.1 min(a, b-a))");
  cmp->add_option("--precision-bits", precision_bits, "MPFR precision");

  auto* t1 = app.add_subcommand("table1", "ten-zero reference table");
  t1->add_option("--precision-bits", precision_bits, "MPFR precision");

  std::string quantity = "h";
  std::vector<int> n_list;
  auto* conv = app.add_subcommand("convergence", "error decay study");
  conv->add_option("--quantity", quantity, "which quantity")
      ->check(CLI::IsMember({"h", "A2", "B", "pn"}));
  conv->add_option("--n-list", n_list, "ascending degrees")
      ->required()
      ->delimiter(',');
  conv->add_option("--c", c, "field strength");
  conv->add_option("--alpha", alpha, "origin exponent");
  conv->add_option("--precision-bits", precision_bits, "MPFR precision");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eq) return cmd_equilibrium(c, tol, format);
    if (*orc_rec || *orc_zeros)
      return cmd_oracle(static_cast<bool>(*orc_zeros), n, c, alpha,
                        bigN > 0 ? bigN : n, precision_bits,
                        include_origin_node, format);
    if (*cmp)
      return cmd_compare(regime, n, c, alpha, grid, delta, precision_bits,
                         thread_count(threads), format);
    if (*t1) return cmd_table1(precision_bits, format);
    if (*conv)
      return cmd_convergence(quantity, n_list, c, alpha, precision_bits,
                             format);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
