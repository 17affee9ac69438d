#pragma once

#include <cstddef>
#include <vector>

namespace countfact {

inline constexpr double kPi = 3.141592653589793238;
inline constexpr double kEulerGamma = 0.57721566490153286;

/// Asymptotic constants of the counting-matrix factorizations. Every value is
/// an expression in the Euler-Mascheroni constant, log and pi; residuals in
/// this library are always measured against log(n)/pi.
struct NamedConstants {
  double euler_gamma;
  /// Limit of alpha_n: (gamma + log 16) / pi.
  double alpha_infinity;
  /// NSR MaxSE residual: (gamma + log 8) / pi.
  double nsr_maxse_const;
  /// NSR MeanSE residual: (gamma + log 16 - 1) / pi.
  double nsr_meanse_const;
  /// Square-root MeanSE residual: alpha_infinity - 1/(2 pi).
  double sqrt_meanse_const;
  /// Group-algebra MaxSE = MeanSE residual: 1/2 + (gamma + log(8/pi)) / pi.
  double ga_const;
  /// Nuclear-norm lower bound residual: (gamma + log(16/pi)) / pi.
  double lb_const;
  /// Mathias lower bound residual: (gamma + log(8/pi)) / pi.
  double mathias_lb_const;
};

const NamedConstants& constants();

/// Scalar machinery for one matrix size n. Storage is 0-based throughout;
/// the 1-based quantities d_j and alpha_m live at index j-1 and m-1.
struct CoefficientTable {
  std::size_t n = 0;
  std::vector<double> r;       // r[k], Taylor coefficients of (1-x)^(-1/2)
  std::vector<double> rtilde;  // rtilde[k], Taylor coefficients of (1-x)^(1/2)
  std::vector<double> d_sq;    // d_sq[j-1] = sum_{t=0}^{n-j} r_t^2
  std::vector<double> alpha;   // alpha[m-1] = sum_{j<m} r_j^2 - log(m)/pi

  static CoefficientTable build(std::size_t n);

  double d_sq_at(std::size_t j) const { return d_sq[j - 1]; }
  double alpha_at(std::size_t m) const { return alpha[m - 1]; }
};

/// r_k = binom(2k,k)/4^k via r_k = r_{k-1}(2k-1)/(2k). Throws on n = 0.
std::vector<double> wallis_coeffs(std::size_t n);

/// rtilde_0 = 1, rtilde_j = -r_j/(2j-1). These are the first-column entries
/// of C^{-1}. Throws on n = 0.
std::vector<double> inverse_coeffs(std::size_t n);

/// Squared column norms of C, suffix-summed with compensation.
/// Element j-1 holds d_j^2; the last element is exactly 1.
std::vector<double> column_norms_sq(std::size_t n);

/// alpha_n = sum_{j<n} r_j^2 - log(n)/pi. Increases monotonically towards
/// alpha_infinity with alpha_infinity - alpha_n in (0, 1/(5n)].
double landau_alpha(std::size_t n);

/// sum_{j<n} r_j^2, the Landau partial sum G_{n-1}.
double landau_partial_sum(std::size_t n);

}  // namespace countfact
