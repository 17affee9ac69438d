#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "countfact/sequences.hpp"
#include "countfact/structmat.hpp"

namespace countfact {

enum class Method { SquareRoot, NSR, GroupAlgebra };

std::string_view to_string(Method m);
/// Accepts "sqrt", "nsr" and "group-algebra". Throws std::invalid_argument.
Method parse_method(std::string_view name);

/// Largest n for which factors may be materialized densely.
inline constexpr std::size_t kDenseBudget = 4096;
inline constexpr std::size_t kGroupAlgebraDenseBudget = 1024;

/// T * diag(col_scale).
struct ScaledToeplitz {
  LowerTriangularToeplitz base;
  std::vector<double> col_scale;
};

/// M_count * diag(d) * T(rtilde), the NSR left factor. Entry (j, k) for
/// j >= k is sum_{t=0}^{j-k} rtilde_t d_{k+t} (0-based j, k, d).
struct NsrLeft {
  std::vector<double> rtilde;
  std::vector<double> d;
};

/// First `rows` rows of the circulant with the given first column.
struct CirculantRows {
  std::vector<double> first_column;
  std::size_t rows = 0;
};

/// First `cols` columns of the circulant with the given first column.
struct CirculantCols {
  std::vector<double> first_column;
  std::size_t cols = 0;
};

using FactorData =
    std::variant<LowerTriangularToeplitz, ScaledToeplitz, NsrLeft, CirculantRows, CirculantCols, DenseMatrix>;

/// A factor held in whichever structured form it was built in. Norms and
/// products are computed from the structure; dense form only on request.
class FactorMatrix {
 public:
  FactorMatrix() = default;
  FactorMatrix(FactorData data) : data_(std::move(data)) {}  // NOLINT(google-explicit-constructor)

  std::size_t rows() const;
  std::size_t cols() const;

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> row_norms_sq() const;
  std::vector<double> col_norms_sq() const;
  /// Throws std::length_error above kDenseBudget^2 entries.
  DenseMatrix to_dense() const;

  const FactorData& data() const { return data_; }

 private:
  FactorData data_;
};

struct Factorization {
  Method method = Method::SquareRoot;
  std::size_t n = 0;
  std::size_t inner_dim = 0;
  FactorMatrix left;   // n x inner_dim
  FactorMatrix right;  // inner_dim x n
  std::vector<double> row_norms_sq_left;   // one per row of left
  std::vector<double> col_norms_sq_right;  // one per column of right
  double frobenius_sq_left = 0.0;
  /// Largest imaginary part dropped when forming real factors.
  double discarded_imag = 0.0;

  /// Dense copies, subject to the per-method budget.
  DenseMatrix dense_left() const;
  DenseMatrix dense_right() const;
};

/// L = R = C = M_count^{1/2}.
Factorization sqrt_factorization(std::size_t n);

/// Normalized square root: R = C D^{-1} with unit columns, L = M_count D C^{-1}.
Factorization nsr_factorization(std::size_t n);

/// Diagonal of the 2n x 2n circulant extension of M_count in the DFT basis:
/// lambda_0 = n, lambda_k = 2/(1 - w^{-k}) for odd k, 0 for even k != 0,
/// with w = exp(i pi / n).
CirculantSpectrum group_algebra_spectrum(std::size_t n);

/// L = P M_circ^{1/2}, R = M_circ^{1/2} P^T with P the projection onto the
/// first n coordinates.
Factorization group_algebra_factorization(std::size_t n);

Factorization make_factorization(Method m, std::size_t n);

/// NSR left factor rows squared-summed in a single O(n^2)-time, O(n)-memory
/// sweep over columns. Also returns the column norms when `col_norms_sq` is
/// non-null.
std::vector<double> nsr_row_norms_sq(const NsrLeft& b, std::vector<double>* col_norms_sq = nullptr);

/// max_{j,k} |(L R)_{jk} - M_count_{jk}|, computed column by column through
/// the structured factors. Refuses n > kDenseBudget.
double verify_reconstruction(const Factorization& f);

}  // namespace countfact
