#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace countfact {

/// Neumaier-compensated running sum. Keeps the low-order bits that a plain
/// `+=` drops, which matters once sums run over 10^5..10^6 terms.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc += x;
  return acc.value();
}

/// Sums terms in order of increasing magnitude with compensation. Used for
/// cosecant sums whose terms span several orders of magnitude.
inline double ascending_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  return compensated_sum(terms);
}

}  // namespace countfact
