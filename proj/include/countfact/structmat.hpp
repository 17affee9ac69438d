#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace countfact {

using Complex = std::complex<double>;

/// Row-major dense matrix, used for small-n validation and dumps.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// The n x n lower-triangular all-ones matrix.
DenseMatrix counting_matrix(std::size_t n);

/// max_{i,j} |a(i,j) - b(i,j)|. Throws on shape mismatch.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Writes rows as comma-separated decimals with 17 significant digits.
void write_matrix_csv(const DenseMatrix& m, const std::string& path);

/// Lower-triangular Toeplitz matrix stored by its first column:
/// entry (j, k) = col[j - k] for j >= k, else 0.
struct LowerTriangularToeplitz {
  std::vector<double> col;

  std::size_t size() const { return col.size(); }
  double entry(std::size_t j, std::size_t k) const { return j >= k ? col[j - k] : 0.0; }
  DenseMatrix to_dense() const;
  /// y = T x. Direct O(n^2) for small n, FFT convolution otherwise.
  std::vector<double> apply(std::span<const double> x) const;
};

/// Product of two LTT matrices: the truncated convolution of their columns.
LowerTriangularToeplitz ltt_multiply(const LowerTriangularToeplitz& a,
                                     const LowerTriangularToeplitz& b);

/// First n terms of the linear convolution of a and b.
std::vector<double> truncated_convolution(std::span<const double> a,
                                          std::span<const double> b, std::size_t n);

/// Unitary DFT. Forward kernel is w^{-jk}/sqrt(m) with w = exp(2 pi i / m)
/// (for m = 2n this is w = exp(i pi / n)); the inverse uses w^{+jk}/sqrt(m).
/// Power-of-two lengths use a radix-2 FFT, other lengths a direct O(m^2) sum.
std::vector<Complex> dft(std::span<const Complex> v, bool inverse = false);

/// Eigenvalues of a circulant matrix C = F* diag(lambda) F, where F is the
/// forward unitary DFT above. lambda_k = sum_j c_j w^{-jk} for first column c.
struct CirculantSpectrum {
  std::vector<Complex> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
  /// max_k |lambda_k - conj(lambda_{m-k})|, zero for a real circulant.
  double conjugate_asymmetry() const;
};

CirculantSpectrum circulant_spectrum(std::span<const double> first_column);

/// First column of F* diag(lambda) F. The imaginary residue is discarded;
/// its largest magnitude is written to `max_imag` when provided.
std::vector<double> circulant_first_column(const CirculantSpectrum& spec,
                                           double* max_imag = nullptr);

/// Principal square root of every eigenvalue (nonnegative real part; negative
/// reals map to the positive imaginary axis). Preserves conjugate symmetry.
CirculantSpectrum circulant_sqrt(const CirculantSpectrum& spec);

/// y = Circ(c) x for a real circulant given by its first column.
std::vector<double> circulant_apply(std::span<const double> first_column,
                                    std::span<const double> x);

/// Dense circulant with first column c: entry (j, k) = c[(j - k) mod m].
DenseMatrix circulant_dense(std::span<const double> first_column);

}  // namespace countfact
