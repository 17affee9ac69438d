#include "countfact/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "countfact/metrics.hpp"
#include "countfact/sequences.hpp"

namespace countfact {

namespace {

// Reconstruction is O(n^2 log n) or worse; keep --check interactive.
constexpr std::size_t kCheckReconstructionMax = 512;

template <typename... Args>
std::string describe(const Args&... args) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(17);
  (s << ... << args);
  return s.str();
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::vector<std::string> check_coefficients(const CoefficientTable& t) {
  std::vector<std::string> out;
  const std::size_t n = t.n;
  if (t.r.size() != n || t.rtilde.size() != n || t.d_sq.size() != n || t.alpha.size() != n) {
    out.push_back("coefficient table has inconsistent lengths");
    return out;
  }
  if (t.r[0] != 1.0) out.push_back("r_0 != 1");
  if (t.d_sq[n - 1] != 1.0) out.push_back("d_n^2 != 1");

  double prefix = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    prefix += t.rtilde[k];
    if (std::abs(prefix - t.r[k]) > 1e-13)
      out.push_back(describe("prefix identity fails at k=", k, ": ", prefix, " vs ", t.r[k]));
    if (k >= 1) {
      const double kk = static_cast<double>(k);
      const double lo = 1.0 / std::sqrt(kPi * (kk + 0.5));
      const double hi = 1.0 / std::sqrt(kPi * kk);
      if (t.r[k] < lo * (1 - 1e-14) || t.r[k] > hi * (1 + 1e-14))
        out.push_back(describe("Wallis sandwich fails at k=", k));
    }
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double diff = t.d_sq[j] - t.d_sq[j + 1];
    const double expect = t.r[n - 1 - j] * t.r[n - 1 - j];
    if (std::abs(diff - expect) > 1e-14 * t.d_sq[j])
      out.push_back(describe("d_sq increment mismatch at j=", j + 1));
  }
  const double a_inf = constants().alpha_infinity;
  for (std::size_t m = 1; m <= n; ++m) {
    const double gap = a_inf - t.alpha_at(m);
    if (!(gap > 0.0) || gap > 1.0 / (5.0 * static_cast<double>(m)))
      out.push_back(describe("alpha_", m, " outside (alpha_inf - 1/(5m), alpha_inf)"));
    if (m >= 2 && !(t.alpha_at(m) > t.alpha_at(m - 1)))
      out.push_back(describe("alpha not increasing at m=", m));
  }
  return out;
}

std::vector<std::string> check_factorization(const Factorization& f) {
  std::vector<std::string> out;
  const std::size_t n = f.n;
  if (f.row_norms_sq_left.size() != n || f.col_norms_sq_right.size() != n) {
    out.push_back("cached norm vectors have the wrong length");
    return out;
  }
  for (double v : f.row_norms_sq_left)
    if (!std::isfinite(v) || v < 0.0) out.push_back("non-finite or negative row norm");
  for (double v : f.col_norms_sq_right)
    if (!std::isfinite(v) || v < 0.0) out.push_back("non-finite or negative column norm");
  if (!out.empty()) return out;

  const double mx = maxse(f);
  const double mn = meanse(f);
  if (mn > mx * (1 + 1e-12)) out.push_back(describe("meanse ", mn, " exceeds maxse ", mx));
  const double lb = nuclear_lower_bound(n);
  if (lb > mx * (1 + 1e-12)) out.push_back(describe("nuclear bound ", lb, " exceeds maxse ", mx));

  switch (f.method) {
    case Method::SquareRoot:
      if (!close_rel(mx, closed_form_maxse_sqrt(n), 1e-12))
        out.push_back("sqrt maxse disagrees with the closed form");
      if (!close_rel(mn, closed_form_meanse_sqrt(n), 1e-12))
        out.push_back("sqrt meanse disagrees with the closed form");
      break;
    case Method::NSR:
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(f.col_norms_sq_right[k] - 1.0) > 1e-12)
          out.push_back(describe("NSR right factor column ", k, " is not unit norm"));
      break;
    case Method::GroupAlgebra:
      if (!close_rel(mx, closed_form_maxse_group_algebra(n), 1e-9))
        out.push_back("group-algebra maxse disagrees with the closed form");
      if (!close_rel(mn, mx, 1e-10)) out.push_back("group-algebra meanse != maxse");
      if (f.discarded_imag > 1e-10) out.push_back("group-algebra factor is not real");
      break;
  }

  if (n <= kCheckReconstructionMax) {
    const double err = verify_reconstruction(f);
    if (!(err <= 1e-9)) out.push_back(describe("reconstruction error ", err, " > 1e-9"));
  }
  return out;
}

std::vector<std::string> check_bounds(const BoundReport& b) {
  std::vector<std::string> out;
  if (!std::isfinite(b.nuclear_lb) || !std::isfinite(b.mathias_lb))
    out.push_back("non-finite lower bound");
  if (b.n >= 2 && b.nuclear_lb < b.mathias_lb)
    out.push_back(describe("nuclear bound ", b.nuclear_lb, " below Mathias bound ", b.mathias_lb));
  const double base = log_baseline(b.n);
  if (std::abs(b.nuclear_residual - (b.nuclear_lb - base)) > 1e-14 ||
      std::abs(b.mathias_residual - (b.mathias_lb - base)) > 1e-14)
    out.push_back("residuals inconsistent with log(n)/pi");
  // Only the closed-form methods here; the NSR comparison belongs to the sweep check.
  if (b.nuclear_lb > closed_form_maxse_sqrt(b.n) * (1 + 1e-12))
    out.push_back("nuclear bound exceeds the sqrt maxse");
  if (b.nuclear_lb > closed_form_maxse_group_algebra(b.n) * (1 + 1e-12))
    out.push_back("nuclear bound exceeds the group-algebra maxse");
  return out;
}

std::vector<std::string> check_simulation(const MechanismConfig& cfg, const SimulationResult& r) {
  std::vector<std::string> out;
  if (!std::isfinite(r.empirical_err_inf) || !std::isfinite(r.empirical_err_2))
    out.push_back("non-finite empirical error");
  if (r.sigma == 0.0) {
    if (r.empirical_err_inf > 1e-9 * std::max(1.0, static_cast<double>(cfg.input.size())))
      out.push_back("noise-free run deviates from the exact prefix sums");
    return out;
  }
  if (cfg.trials < 100) return out;  // too few trials for the z-score test
  const double t = static_cast<double>(cfg.trials);
  const double mean_tol = 4.0 / std::sqrt(t);
  const double var_tol = 5.0 / std::sqrt(t);
  for (std::size_t i = 0; i < r.z_mean.size(); ++i) {
    if (std::abs(r.z_mean[i]) >= mean_tol)
      out.push_back(describe("z-score mean ", r.z_mean[i], " at coordinate ", i));
    if (std::abs(r.z_var[i] - 1.0) >= var_tol)
      out.push_back(describe("z-score variance ", r.z_var[i], " at coordinate ", i));
  }
  return out;
}

std::vector<std::string> check_sweep(const std::vector<SweepRow>& rows) {
  std::vector<std::string> out;
  std::map<std::size_t, std::map<std::pair<std::string, std::string>, double>> by_n;
  for (const auto& r : rows) {
    by_n[r.n][{r.method, r.metric}] = r.value;
    if (std::abs(r.residual - (r.value - log_baseline(r.n))) > 1e-14)
      out.push_back(describe("residual inconsistent at n=", r.n, " ", r.method, " ", r.metric));
  }
  for (const auto& [n, vals] : by_n) {
    auto get = [&](const std::string& method, const std::string& metric) -> const double* {
      auto it = vals.find({method, metric});
      return it == vals.end() ? nullptr : &it->second;
    };
    const double lb = nuclear_lower_bound(n);
    for (Method m : {Method::SquareRoot, Method::NSR, Method::GroupAlgebra}) {
      const std::string name(to_string(m));
      const double* mx = get(name, "maxse");
      const double* mn = get(name, "meanse");
      if (mx && mn && *mn > *mx * (1 + 1e-12))
        out.push_back(describe("meanse > maxse for ", name, " at n=", n));
      if (mx && lb > *mx * (1 + 1e-12))
        out.push_back(describe("nuclear bound > maxse for ", name, " at n=", n));
    }
    const double* nsr = get("nsr", "maxse");
    const double* sq = get("sqrt", "maxse");
    if (n >= 4 && nsr && sq && *nsr > *sq * (1 + 1e-12))
      out.push_back(describe("nsr maxse > sqrt maxse at n=", n));
  }
  return out;
}

}  // namespace countfact
