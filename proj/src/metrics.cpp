#include "countfact/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "countfact/summation.hpp"

namespace countfact {

std::string_view to_string(Metric m) {
  return m == Metric::MaxSE ? "maxse" : "meanse";
}

Metric parse_metric(std::string_view name) {
  if (name == "maxse") return Metric::MaxSE;
  if (name == "meanse") return Metric::MeanSE;
  throw std::invalid_argument("unknown metric: " + std::string(name));
}

double log_baseline(std::size_t n) { return std::log(static_cast<double>(n)) / kPi; }

double max_row_norm(const FactorMatrix& l) {
  const auto rows = l.row_norms_sq();
  if (rows.empty()) throw std::invalid_argument("max_row_norm: empty matrix");
  return std::sqrt(*std::max_element(rows.begin(), rows.end()));
}

double max_col_norm(const FactorMatrix& r) {
  const auto cols = r.col_norms_sq();
  if (cols.empty()) throw std::invalid_argument("max_col_norm: empty matrix");
  return std::sqrt(*std::max_element(cols.begin(), cols.end()));
}

double maxse(const Factorization& f) {
  const double rows = *std::max_element(f.row_norms_sq_left.begin(), f.row_norms_sq_left.end());
  const double cols = *std::max_element(f.col_norms_sq_right.begin(), f.col_norms_sq_right.end());
  return std::sqrt(rows) * std::sqrt(cols);
}

double meanse(const Factorization& f) {
  const double cols = *std::max_element(f.col_norms_sq_right.begin(), f.col_norms_sq_right.end());
  return std::sqrt(f.frobenius_sq_left / static_cast<double>(f.n)) * std::sqrt(cols);
}

double closed_form_maxse_sqrt(std::size_t n) { return landau_partial_sum(n); }

double closed_form_meanse_sqrt(std::size_t n) {
  if (n == 0) throw std::invalid_argument("closed_form_meanse_sqrt: n must be >= 1");
  CompensatedSum partial;
  CompensatedSum frob;
  double r = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      const double kk = static_cast<double>(k);
      r *= (2.0 * kk - 1.0) / (2.0 * kk);
    }
    partial += r * r;
    frob += partial.value();
  }
  return std::sqrt(frob.value() / static_cast<double>(n)) * std::sqrt(partial.value());
}

double closed_form_maxse_group_algebra(std::size_t n) {
  if (n == 0) throw std::invalid_argument("closed_form_maxse_group_algebra: n must be >= 1");
  const double nn = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t l = 1; l <= n; ++l)
    terms[l - 1] = 1.0 / std::sin(kPi * (2.0 * static_cast<double>(l) - 1.0) / (2.0 * nn));
  return 0.5 + ascending_sum(std::move(terms)) / (2.0 * nn);
}

double predicted_residual(Method method, Metric metric) {
  const NamedConstants& c = constants();
  switch (method) {
    case Method::SquareRoot:
      return metric == Metric::MaxSE ? c.alpha_infinity : c.sqrt_meanse_const;
    case Method::NSR:
      return metric == Metric::MaxSE ? c.nsr_maxse_const : c.nsr_meanse_const;
    case Method::GroupAlgebra:
      return c.ga_const;
  }
  throw std::invalid_argument("predicted_residual: unknown method");
}

ErrorReport error_report(const Factorization& f) {
  ErrorReport r;
  r.method = f.method;
  r.n = f.n;
  r.maxse = maxse(f);
  r.meanse = meanse(f);
  const double base = log_baseline(f.n);
  r.maxse_residual = r.maxse - base;
  r.meanse_residual = r.meanse - base;
  switch (f.method) {
    case Method::SquareRoot:
      r.closed_form_maxse = closed_form_maxse_sqrt(f.n);
      r.closed_form_meanse = closed_form_meanse_sqrt(f.n);
      break;
    case Method::GroupAlgebra:
      r.closed_form_maxse = closed_form_maxse_group_algebra(f.n);
      r.closed_form_meanse = r.closed_form_maxse;
      break;
    case Method::NSR:
      break;
  }
  r.predicted_maxse_residual = predicted_residual(f.method, Metric::MaxSE);
  r.predicted_meanse_residual = predicted_residual(f.method, Metric::MeanSE);
  return r;
}

}  // namespace countfact
