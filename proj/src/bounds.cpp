#include "countfact/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "countfact/metrics.hpp"
#include "countfact/sequences.hpp"
#include "countfact/summation.hpp"

namespace countfact {

namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

double nuclear_lower_bound(std::size_t n) {
  require_positive(n, "nuclear_lower_bound");
  const double nn = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t j = 1; j <= n; ++j)
    terms[j - 1] = 1.0 / std::sin((2.0 * static_cast<double>(j) - 1.0) * kPi / (4.0 * nn + 2.0));
  return ascending_sum(std::move(terms)) / (2.0 * nn);
}

double mathias_lower_bound(std::size_t n) {
  require_positive(n, "mathias_lower_bound");
  const double nn = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t j = 1; j <= n; ++j)
    terms[j - 1] = 1.0 / std::sin((2.0 * static_cast<double>(j) - 1.0) * kPi / (2.0 * nn));
  return (nn + 1.0) / (2.0 * nn * nn) * ascending_sum(std::move(terms));
}

ValueWithPrediction cosecant_average(std::size_t n) {
  if (n < 2) throw std::invalid_argument("cosecant_average: n must be >= 2");
  const double nn = static_cast<double>(n);
  std::vector<double> terms(n - 1);
  for (std::size_t l = 1; l < n; ++l) terms[l - 1] = 1.0 / std::sin(kPi * static_cast<double>(l) / nn);
  const double g = constants().euler_gamma;
  return {ascending_sum(std::move(terms)) / nn,
          2.0 / kPi * (std::log(nn) + g + std::log(2.0 / kPi))};
}

ValueWithPrediction quarter_cosecant_average(std::size_t n) {
  require_positive(n, "quarter_cosecant_average");
  const double nn = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t j = 1; j <= n; ++j)
    terms[j - 1] = 1.0 / std::sin(static_cast<double>(j) / nn * kPi / 2.0);
  const double g = constants().euler_gamma;
  return {ascending_sum(std::move(terms)) / nn,
          2.0 / kPi * (std::log(nn) + g + std::log(4.0 / kPi))};
}

ValueWithPrediction log_product_average(std::size_t n) {
  require_positive(n, "log_product_average");
  const double nn = static_cast<double>(n);
  CompensatedSum acc;
  for (std::size_t j = 1; j <= n; ++j)
    acc += std::log(static_cast<double>(j)) * std::log(static_cast<double>(n + 1 - j));
  const double ln = std::log(nn);
  return {acc.value() / nn, ln * ln - 2.0 * ln + 2.0 - kPi * kPi / 6.0};
}

BoundReport bound_report(std::size_t n) {
  BoundReport b;
  b.n = n;
  b.nuclear_lb = nuclear_lower_bound(n);
  b.mathias_lb = mathias_lower_bound(n);
  const double base = log_baseline(n);
  b.nuclear_residual = b.nuclear_lb - base;
  b.mathias_residual = b.mathias_lb - base;
  if (n >= 2) {
    const auto g = cosecant_average(n);
    b.g_n = g.value;
    b.g_n_predicted = g.predicted;
  } else {
    b.g_n = std::numeric_limits<double>::quiet_NaN();
    b.g_n_predicted = 2.0 / kPi * (constants().euler_gamma + std::log(2.0 / kPi));
  }
  return b;
}

}  // namespace countfact
