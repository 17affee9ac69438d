#include "countfact/sequences.hpp"

#include <cmath>
#include <stdexcept>

#include "countfact/summation.hpp"

namespace countfact {

namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

const NamedConstants& constants() {
  static const NamedConstants c = [] {
    NamedConstants k{};
    const double g = kEulerGamma;
    k.euler_gamma = g;
    k.alpha_infinity = (g + std::log(16.0)) / kPi;
    k.nsr_maxse_const = (g + std::log(8.0)) / kPi;
    k.nsr_meanse_const = (g + std::log(16.0) - 1.0) / kPi;
    k.sqrt_meanse_const = k.alpha_infinity - 1.0 / (2.0 * kPi);
    k.ga_const = 0.5 + (g + std::log(8.0 / kPi)) / kPi;
    k.lb_const = (g + std::log(16.0 / kPi)) / kPi;
    k.mathias_lb_const = (g + std::log(8.0 / kPi)) / kPi;
    return k;
  }();
  return c;
}

std::vector<double> wallis_coeffs(std::size_t n) {
  require_positive(n, "wallis_coeffs");
  std::vector<double> r(n);
  r[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    r[k] = r[k - 1] * (2.0 * kk - 1.0) / (2.0 * kk);
  }
  return r;
}

std::vector<double> inverse_coeffs(std::size_t n) {
  require_positive(n, "inverse_coeffs");
  std::vector<double> rt = wallis_coeffs(n);
  for (std::size_t j = 1; j < n; ++j) {
    rt[j] = -rt[j] / (2.0 * static_cast<double>(j) - 1.0);
  }
  return rt;
}

namespace {

std::vector<double> column_norms_sq_from(const std::vector<double>& r) {
  const std::size_t n = r.size();
  std::vector<double> d_sq(n);
  // d_j^2 = sum_{t=0}^{n-j} r_t^2, so d_n^2 = r_0^2 and each step towards
  // j = 1 adds r_{n-j}^2.
  CompensatedSum acc;
  for (std::size_t j = n; j >= 1; --j) {
    const double rv = r[n - j];
    acc += rv * rv;
    d_sq[j - 1] = acc.value();
  }
  return d_sq;
}

}  // namespace

std::vector<double> column_norms_sq(std::size_t n) {
  require_positive(n, "column_norms_sq");
  return column_norms_sq_from(wallis_coeffs(n));
}

double landau_partial_sum(std::size_t n) {
  require_positive(n, "landau_partial_sum");
  CompensatedSum acc;
  double r = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      const double kk = static_cast<double>(k);
      r *= (2.0 * kk - 1.0) / (2.0 * kk);
    }
    acc += r * r;
  }
  return acc.value();
}

double landau_alpha(std::size_t n) {
  return landau_partial_sum(n) - std::log(static_cast<double>(n)) / kPi;
}

CoefficientTable CoefficientTable::build(std::size_t n) {
  require_positive(n, "CoefficientTable::build");
  CoefficientTable t;
  t.n = n;
  t.r = wallis_coeffs(n);
  t.rtilde = inverse_coeffs(n);
  t.d_sq = column_norms_sq_from(t.r);
  t.alpha.resize(n);
  CompensatedSum acc;
  for (std::size_t m = 1; m <= n; ++m) {
    acc += t.r[m - 1] * t.r[m - 1];
    t.alpha[m - 1] = acc.value() - std::log(static_cast<double>(m)) / kPi;
  }
  return t;
}

}  // namespace countfact
