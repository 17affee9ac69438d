// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "countfact/bounds.hpp"
#include "countfact/factorizations.hpp"
#include "countfact/mechanism.hpp"
#include "countfact/metrics.hpp"
#include "countfact/sequences.hpp"
#include "countfact/sweep.hpp"
#include "oracles.hpp"

using namespace countfact;

namespace {

// Pinned tolerances.
constexpr double kReconTol = 1e-9;
constexpr double kReconSeconds = 30.0;
constexpr double kSqrtIdentityRel = 1e-12;
constexpr double kAlpha2Tol = 1e-14;
constexpr double kNsrMaxseUpper = 0.88;
constexpr double kTrendFloor = 1e-3;
constexpr double kNsrMeanseTol = 0.03;
constexpr double kGaClosedRel = 1e-9;
constexpr double kGaResidualTol = 0.02;
constexpr double kGaMeanEqMaxRel = 1e-10;
constexpr double kSqrtMeanseTol = 0.02;
constexpr double kBoundResidualTol = 0.02;
constexpr double kSvdTol = 1e-8;
constexpr double kSandwichSlack = 1e-12;
constexpr double kMechInfRel = 0.05;
constexpr double kMech2Rel = 0.03;

// Reference values quoted alongside the criteria.
constexpr double kQuotedAlphaInf = 1.066258;
constexpr double kQuotedNsrMaxse = 0.8456;
constexpr double kQuotedNsrMeanse = 0.74794;
constexpr double kQuotedGa = 0.98133;
constexpr double kQuotedSqrtMeanse = 0.90710;
constexpr double kQuotedNuclear = 0.70193;
constexpr double kQuotedMathias = 0.48133;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Method kMethods[] = {Method::SquareRoot, Method::NSR, Method::GroupAlgebra};

void reconstruction() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (Method m : kMethods)
    for (std::size_t n : {1u, 2u, 3u, 4u, 8u, 16u, 64u, 256u}) {
      const Factorization f = make_factorization(m, n);
      const double err = oracle::max_abs_diff(oracle::multiply(f.dense_left(), f.dense_right()), oracle::lower_ones(n));
      worst = std::max({worst, err, verify_reconstruction(f)});
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, "reconstruction", worst <= kReconTol && secs < kReconSeconds,
         fmt("max |LR - M| = %.3e (tol %.0e), %.2f s", worst, kReconTol, secs));
}

void sqrt_identity() {
  double worst = 0.0;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1; n <= 64; ++n) sizes.push_back(n);
  sizes.push_back(1024);
  for (std::size_t n : sizes) {
    const double direct = maxse(sqrt_factorization(n));
    double landau = 0.0;
    for (double r : wallis_coeffs(n)) landau += r * r;
    worst = std::max(worst, std::abs(direct - landau) / landau);
  }
  report(2, "sqrt maxse = landau sum", worst <= kSqrtIdentityRel,
         fmt("max rel diff %.3e (tol %.0e)", worst, kSqrtIdentityRel));
}

void landau() {
  const double a_inf = constants().alpha_infinity;
  const auto table = CoefficientTable::build(100000);
  bool monotone = true;
  for (std::size_t m = 2; m <= table.n; ++m) monotone &= table.alpha_at(m) > table.alpha_at(m - 1);
  bool watson = true;
  std::string gaps;
  bool quoted_ok = true;
  for (std::size_t n : {100u, 1000u, 10000u, 1000000u}) {
    const double a = landau_alpha(n);
    const double bound = 1.0 / (5.0 * static_cast<double>(n));
    watson &= std::abs(a - a_inf) <= bound;
    quoted_ok &= std::abs(a - kQuotedAlphaInf) <= bound;
    gaps += fmt(" n=%zu:%.2e/%.1e", n, std::abs(a - a_inf), bound);
  }
  const double a2 = landau_alpha(2);
  const bool exact2 = std::abs(a2 - (1.25 - std::log(2.0) / std::numbers::pi)) <= kAlpha2Tol;
  report(3, "landau/watson", monotone && watson && exact2,
         fmt("monotone=%d alpha_inf=%.10f gaps%s alpha_2 ok=%d [info: vs 1.066258 literal %s]", monotone,
             a_inf, gaps.c_str(), exact2, quoted_ok ? "within" : "outside 1/(5n) at n=1e6"));
}

void nsr_maxse() {
  const std::size_t n = 4096;
  const double res = maxse(nsr_factorization(n)) - log_baseline(n);
  const double lb = nuclear_lower_bound(n) - log_baseline(n);
  const bool sandwich = res >= lb && res <= kNsrMaxseUpper;
  const double target = constants().nsr_maxse_const;
  bool trend = true;
  double prev = INFINITY;
  std::string seq;
  for (std::size_t m = 256; m <= 8192; m *= 2) {
    const double r = maxse(nsr_factorization(m)) - log_baseline(m);
    const double gap = std::abs(r - target);
    trend &= gap <= prev + kTrendFloor;
    prev = gap;
    seq += fmt(" %.5f", r);
  }
  report(4, "nsr maxse residual", sandwich && trend,
         fmt("res(4096)=%.5f in [%.5f, %.2f]; residuals 2^8..2^13:%s -> %.5f (quoted %.4f)", res, lb,
             kNsrMaxseUpper, seq.c_str(), target, kQuotedNsrMaxse));
}

void nsr_meanse() {
  const std::size_t n = 8192;
  const double res = meanse(nsr_factorization(n)) - log_baseline(n);
  const double target = constants().nsr_meanse_const;
  const bool ok = std::abs(res - kQuotedNsrMeanse) <= kNsrMeanseTol && std::abs(res - target) <= kNsrMeanseTol;
  report(5, "nsr meanse residual", ok,
         fmt("res(8192)=%.6f, |res-%.5f|=%.5f, |res-%.6f|=%.5f (tol %.2f)", res, kQuotedNsrMeanse,
             std::abs(res - kQuotedNsrMeanse), target, std::abs(res - target), kNsrMeanseTol));
}

void group_algebra() {
  double worst_closed = 0.0, worst_eq = 0.0;
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 64u, 256u}) {
    const Factorization f = group_algebra_factorization(n);
    const double closed = 0.5 + [&] {
      double s = 0;
      for (std::size_t l = 1; l <= n; ++l)
        s += 1.0 / std::sin(std::numbers::pi * (2.0 * static_cast<double>(l) - 1.0) / (2.0 * static_cast<double>(n)));
      return s / (2.0 * static_cast<double>(n));
    }();
    worst_closed = std::max(worst_closed, std::abs(maxse(f) - closed) / closed);
    worst_eq = std::max(worst_eq, std::abs(meanse(f) - maxse(f)) / maxse(f));
  }
  const Factorization big = group_algebra_factorization(4096);
  const double res = maxse(big) - log_baseline(4096);
  worst_eq = std::max(worst_eq, std::abs(meanse(big) - maxse(big)) / maxse(big));
  const bool ok = worst_closed <= kGaClosedRel && std::abs(res - kQuotedGa) <= kGaResidualTol &&
                  worst_eq <= kGaMeanEqMaxRel;
  report(6, "group algebra", ok,
         fmt("closed-form rel %.2e, res(4096)=%.6f (|-%.5f|=%.5f, limit %.6f), meanse/maxse rel %.1e", worst_closed,
             res, kQuotedGa, std::abs(res - kQuotedGa), constants().ga_const, worst_eq));
}

void sqrt_meanse() {
  const std::size_t n = 8192;
  const double res = meanse(sqrt_factorization(n)) - log_baseline(n);
  report(7, "sqrt meanse residual", std::abs(res - kQuotedSqrtMeanse) <= kSqrtMeanseTol,
         fmt("res(8192)=%.5f, |res-%.5f|=%.5f (tol %.2f)", res, kQuotedSqrtMeanse, std::abs(res - kQuotedSqrtMeanse),
             kSqrtMeanseTol));
}

void lower_bounds() {
  const std::size_t n = 4096;
  const double nuc = nuclear_lower_bound(n) - log_baseline(n);
  const double mat = mathias_lower_bound(n) - log_baseline(n);
  double worst_svd = 0.0;
  for (std::size_t m = 1; m <= 32; ++m) {
    double s = 0;
    for (double v : oracle::singular_values(oracle::lower_ones(m))) s += v;
    worst_svd = std::max(worst_svd, std::abs(nuclear_lower_bound(m) * static_cast<double>(m) - s));
  }
  const bool ok = std::abs(nuc - kQuotedNuclear) <= kBoundResidualTol &&
                  std::abs(mat - kQuotedMathias) <= kBoundResidualTol && worst_svd <= kSvdTol;
  report(8, "lower bounds", ok,
         fmt("nuclear res %.5f (|-%.5f|=%.5f), mathias res %.5f (|-%.5f|=%.5f), svd diff %.1e", nuc, kQuotedNuclear,
             std::abs(nuc - kQuotedNuclear), mat, kQuotedMathias, std::abs(mat - kQuotedMathias), worst_svd));
}

void nsr_sandwiches() {
  std::size_t violations = 0, checked = 0;
  for (std::size_t n : {16u, 64u, 256u, 512u}) {
    const Factorization f = nsr_factorization(n);
    const DenseMatrix b = f.dense_left();
    const auto r = wallis_coeffs(n);
    const auto d2 = column_norms_sq(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double dj = std::sqrt(d2[j]);
      double row = 0;
      for (std::size_t k = 0; k <= j; ++k) {
        ++checked;
        if (b(j, k) < dj * r[j - k] - kSandwichSlack) ++violations;
        row += b(j, k) * b(j, k);
      }
      ++checked;
      if (row < d2[j] * d2[n - 1 - j] - kSandwichSlack) ++violations;
    }
  }
  report(9, "nsr sandwiches", violations == 0, fmt("%zu violations in %zu checks", violations, checked));
}

void mechanism() {
  MechanismConfig cfg;
  cfg.factorization = std::make_shared<const Factorization>(nsr_factorization(64));
  cfg.mu = 1.0;
  cfg.trials = 10000;
  cfg.seed = 20240601;
  cfg.input.assign(64, 0.0);
  const auto a = estimate_errors(cfg);
  const auto b = estimate_errors(cfg);
  cfg.mu = 2.0;
  const auto h = estimate_errors(cfg);
  const double ms = maxse(*cfg.factorization), me = meanse(*cfg.factorization);
  const double rel_inf = std::abs(a.empirical_err_inf / ms - 1.0);
  const double rel_2 = std::abs(a.empirical_err_2 / me - 1.0);
  const bool same = a.empirical_err_inf == b.empirical_err_inf && a.empirical_err_2 == b.empirical_err_2 &&
                    a.z_mean == b.z_mean && a.z_var == b.z_var;
  const bool halves = h.empirical_err_inf == a.empirical_err_inf / 2 && h.empirical_err_2 == a.empirical_err_2 / 2;
  report(10, "mechanism statistics", rel_inf <= kMechInfRel && rel_2 <= kMech2Rel && same && halves,
         fmt("err_inf rel %.4f (tol %.2f), err_2 rel %.4f (tol %.2f), rerun identical=%d, mu=2 halves=%d", rel_inf,
             kMechInfRel, rel_2, kMech2Rel, same, halves));
}

void orderings() {
  SweepSpec spec;
  spec.methods = {Method::SquareRoot, Method::NSR, Method::GroupAlgebra};
  spec.metrics = {"maxse", "meanse", "nuclear_lb"};
  spec.n_min = 4;
  spec.n_max = 8192;
  const auto rows = compute_sweep(spec);
  std::map<std::size_t, std::map<std::string, double>> at;
  for (const auto& r : rows) at[r.n][r.method + "/" + r.metric] = r.value;
  std::size_t violations = 0;
  for (auto& [n, v] : at) {
    for (const char* m : {"sqrt", "nsr", "group-algebra"}) {
      const std::string k(m);
      if (v[k + "/meanse"] > v[k + "/maxse"]) ++violations;
      if (v["bound/nuclear_lb"] > v[k + "/maxse"]) ++violations;
    }
    if (n >= 4 && v["nsr/maxse"] > v["sqrt/maxse"]) ++violations;
  }
  report(11, "orderings", violations == 0, fmt("%zu sweep points (n=4..8192), %zu violations", at.size(), violations));
}

}  // namespace

int main() {
  reconstruction();
  sqrt_identity();
  landau();
  nsr_maxse();
  nsr_meanse();
  group_algebra();
  sqrt_meanse();
  lower_bounds();
  nsr_sandwiches();
  mechanism();
  orderings();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
