#pragma once

#include <cstddef>

namespace countfact {

/// A finite-n value together with its asymptotic prediction.
struct ValueWithPrediction {
  double value;
  double predicted;
};

struct BoundReport {
  std::size_t n = 0;
  double nuclear_lb = 0.0;
  double mathias_lb = 0.0;
  double nuclear_residual = 0.0;
  double mathias_residual = 0.0;
  double g_n = 0.0;  // G(n); NaN for n = 1 where the sum is undefined
  double g_n_predicted = 0.0;
};

/// ||M_count||_* / n = (1/2n) sum_{j=1}^{n} csc((2j-1) pi / (4n+2)).
double nuclear_lower_bound(std::size_t n);

/// ((n+1)/(2n^2)) sum_{j=1}^{n} csc((2j-1) pi / (2n)).
double mathias_lower_bound(std::size_t n);

/// G(n) = (1/n) sum_{l=1}^{n-1} csc(pi l / n), with prediction
/// (2/pi)(log n + gamma + log(2/pi)). Throws for n < 2.
ValueWithPrediction cosecant_average(std::size_t n);

/// F(n) = (1/n) sum_{j=1}^{n} csc((j/n)(pi/2)), with prediction
/// (2/pi)(log n + gamma + log(4/pi)).
ValueWithPrediction quarter_cosecant_average(std::size_t n);

/// (1/n) sum_{j=1}^{n} log(j) log(n+1-j), with prediction
/// log^2 n - 2 log n + 2 - pi^2/6.
ValueWithPrediction log_product_average(std::size_t n);

BoundReport bound_report(std::size_t n);

}  // namespace countfact
