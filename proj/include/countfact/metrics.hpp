#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "countfact/factorizations.hpp"

namespace countfact {

enum class Metric { MaxSE, MeanSE };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view name);

struct ErrorReport {
  Method method = Method::SquareRoot;
  std::size_t n = 0;
  double maxse = 0.0;
  double meanse = 0.0;
  double maxse_residual = 0.0;
  double meanse_residual = 0.0;
  std::optional<double> closed_form_maxse;
  std::optional<double> closed_form_meanse;
  double predicted_maxse_residual = 0.0;
  double predicted_meanse_residual = 0.0;
};

/// log(n)/pi, the common subtrahend of every residual.
double log_baseline(std::size_t n);

/// ||L||_{2->inf}: the largest row l2 norm.
double max_row_norm(const FactorMatrix& l);
/// ||R||_{1->2}: the largest column l2 norm.
double max_col_norm(const FactorMatrix& r);

/// ||L||_{2->inf} ||R||_{1->2}, from the norms cached on the factorization.
double maxse(const Factorization& f);
/// (1/sqrt(n)) ||L||_F ||R||_{1->2}.
double meanse(const Factorization& f);

/// MaxSE(C, C) = sum_{j<n} r_j^2 = alpha_n + log(n)/pi.
double closed_form_maxse_sqrt(std::size_t n);
/// MeanSE(C, C) = sqrt((1/n) sum_{m=1}^{n} sum_{j<m} r_j^2) * sqrt(sum_{j<n} r_j^2).
double closed_form_meanse_sqrt(std::size_t n);
/// 1/2 + (1/2n) sum_{l=1}^{n} csc(pi (2l-1) / (2n)). Equal to the MeanSE.
double closed_form_maxse_group_algebra(std::size_t n);

/// Limit of (metric - log(n)/pi) for the method.
double predicted_residual(Method method, Metric metric);

ErrorReport error_report(const Factorization& f);

}  // namespace countfact
