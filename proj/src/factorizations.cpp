#include "countfact/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "countfact/summation.hpp"

namespace countfact {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sum_of_squares(std::span<const double> v) {
  CompensatedSum acc;
  for (double x : v) acc += x * x;
  return acc.value();
}

// Squared norms of the first `count` columns (or, by symmetry of the index
// pattern, rows) of a circulant restricted to `span` leading coordinates:
// out[k] = sum_{j<span} c[(j - k) mod m]^2.
std::vector<double> circulant_partial_norms(std::span<const double> c, std::size_t count,
                                            std::size_t span, bool by_row) {
  const std::size_t m = c.size();
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < span; ++j) {
      const std::size_t idx = by_row ? (k + m - j) % m : (j + m - k) % m;
      acc += c[idx] * c[idx];
    }
    out[k] = acc.value();
  }
  return out;
}

// Column norms of a lower-triangular Toeplitz matrix: column k holds
// col[0..n-1-k].
std::vector<double> ltt_col_norms_sq(std::span<const double> col) {
  const std::size_t n = col.size();
  std::vector<double> out(n);
  CompensatedSum acc;
  for (std::size_t k = n; k-- > 0;) {
    acc += col[n - 1 - k] * col[n - 1 - k];
    out[k] = acc.value();
  }
  return out;
}

std::vector<double> ltt_row_norms_sq(std::span<const double> col) {
  const std::size_t n = col.size();
  std::vector<double> out(n);
  CompensatedSum acc;
  for (std::size_t j = 0; j < n; ++j) {
    acc += col[j] * col[j];
    out[j] = acc.value();
  }
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::SquareRoot: return "sqrt";
    case Method::NSR: return "nsr";
    case Method::GroupAlgebra: return "group-algebra";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "sqrt") return Method::SquareRoot;
  if (name == "nsr") return Method::NSR;
  if (name == "group-algebra" || name == "ga") return Method::GroupAlgebra;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::size_t FactorMatrix::rows() const {
  return std::visit(Overloaded{
                        [](const LowerTriangularToeplitz& t) { return t.size(); },
                        [](const ScaledToeplitz& t) { return t.base.size(); },
                        [](const NsrLeft& b) { return b.d.size(); },
                        [](const CirculantRows& c) { return c.rows; },
                        [](const CirculantCols& c) { return c.first_column.size(); },
                        [](const DenseMatrix& d) { return d.rows(); },
                    },
                    data_);
}

std::size_t FactorMatrix::cols() const {
  return std::visit(Overloaded{
                        [](const LowerTriangularToeplitz& t) { return t.size(); },
                        [](const ScaledToeplitz& t) { return t.base.size(); },
                        [](const NsrLeft& b) { return b.d.size(); },
                        [](const CirculantRows& c) { return c.first_column.size(); },
                        [](const CirculantCols& c) { return c.cols; },
                        [](const DenseMatrix& d) { return d.cols(); },
                    },
                    data_);
}

std::vector<double> FactorMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols()) throw std::invalid_argument("FactorMatrix::apply: dimension mismatch");
  return std::visit(
      Overloaded{
          [&](const LowerTriangularToeplitz& t) { return t.apply(x); },
          [&](const ScaledToeplitz& t) {
            std::vector<double> scaled(x.begin(), x.end());
            for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] *= t.col_scale[k];
            return t.base.apply(scaled);
          },
          [&](const NsrLeft& b) {
            std::vector<double> y = truncated_convolution(b.rtilde, x, x.size());
            double run = 0.0;
            for (std::size_t j = 0; j < y.size(); ++j) {
              run += b.d[j] * y[j];
              y[j] = run;
            }
            return y;
          },
          [&](const CirculantRows& c) {
            std::vector<double> y = circulant_apply(c.first_column, x);
            y.resize(c.rows);
            return y;
          },
          [&](const CirculantCols& c) {
            std::vector<double> padded(c.first_column.size(), 0.0);
            std::copy(x.begin(), x.end(), padded.begin());
            return circulant_apply(c.first_column, padded);
          },
          [&](const DenseMatrix& d) {
            std::vector<double> y(d.rows(), 0.0);
            for (std::size_t i = 0; i < d.rows(); ++i) {
              CompensatedSum acc;
              for (std::size_t j = 0; j < d.cols(); ++j) acc += d(i, j) * x[j];
              y[i] = acc.value();
            }
            return y;
          },
      },
      data_);
}

std::vector<double> nsr_row_norms_sq(const NsrLeft& b, std::vector<double>* col_norms_sq) {
  const std::size_t n = b.d.size();
  std::vector<CompensatedSum> rows(n);
  if (col_norms_sq) col_norms_sq->assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum entry;
    CompensatedSum col;
    for (std::size_t j = k; j < n; ++j) {
      entry += b.rtilde[j - k] * b.d[j];
      const double v = entry.value();
      rows[j] += v * v;
      col += v * v;
    }
    if (col_norms_sq) (*col_norms_sq)[k] = col.value();
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = rows[j].value();
  return out;
}

std::vector<double> FactorMatrix::row_norms_sq() const {
  return std::visit(
      Overloaded{
          [](const LowerTriangularToeplitz& t) { return ltt_row_norms_sq(t.col); },
          [](const ScaledToeplitz& t) {
            const std::size_t n = t.base.size();
            std::vector<double> out(n);
            for (std::size_t j = 0; j < n; ++j) {
              CompensatedSum acc;
              for (std::size_t k = 0; k <= j; ++k) {
                const double v = t.base.col[j - k] * t.col_scale[k];
                acc += v * v;
              }
              out[j] = acc.value();
            }
            return out;
          },
          [](const NsrLeft& b) { return nsr_row_norms_sq(b); },
          [](const CirculantRows& c) {
            return std::vector<double>(c.rows, sum_of_squares(c.first_column));
          },
          [](const CirculantCols& c) {
            return circulant_partial_norms(c.first_column, c.first_column.size(), c.cols, true);
          },
          [](const DenseMatrix& d) {
            std::vector<double> out(d.rows());
            for (std::size_t i = 0; i < d.rows(); ++i) out[i] = sum_of_squares(d.row(i));
            return out;
          },
      },
      data_);
}

std::vector<double> FactorMatrix::col_norms_sq() const {
  return std::visit(
      Overloaded{
          [](const LowerTriangularToeplitz& t) { return ltt_col_norms_sq(t.col); },
          [](const ScaledToeplitz& t) {
            std::vector<double> out = ltt_col_norms_sq(t.base.col);
            for (std::size_t k = 0; k < out.size(); ++k) out[k] *= t.col_scale[k] * t.col_scale[k];
            return out;
          },
          [](const NsrLeft& b) {
            std::vector<double> cols;
            nsr_row_norms_sq(b, &cols);
            return cols;
          },
          [](const CirculantRows& c) {
            return circulant_partial_norms(c.first_column, c.first_column.size(), c.rows, false);
          },
          [](const CirculantCols& c) {
            return std::vector<double>(c.cols, sum_of_squares(c.first_column));
          },
          [](const DenseMatrix& d) {
            std::vector<CompensatedSum> acc(d.cols());
            for (std::size_t i = 0; i < d.rows(); ++i)
              for (std::size_t j = 0; j < d.cols(); ++j) acc[j] += d(i, j) * d(i, j);
            std::vector<double> out(d.cols());
            for (std::size_t j = 0; j < d.cols(); ++j) out[j] = acc[j].value();
            return out;
          },
      },
      data_);
}

DenseMatrix FactorMatrix::to_dense() const {
  if (rows() * cols() > kDenseBudget * kDenseBudget)
    throw std::length_error("FactorMatrix::to_dense: exceeds dense budget");
  return std::visit(
      Overloaded{
          [](const LowerTriangularToeplitz& t) { return t.to_dense(); },
          [](const ScaledToeplitz& t) {
            DenseMatrix m = t.base.to_dense();
            for (std::size_t j = 0; j < m.rows(); ++j)
              for (std::size_t k = 0; k <= j; ++k) m(j, k) *= t.col_scale[k];
            return m;
          },
          [](const NsrLeft& b) {
            const std::size_t n = b.d.size();
            DenseMatrix m(n, n);
            for (std::size_t k = 0; k < n; ++k) {
              CompensatedSum entry;
              for (std::size_t j = k; j < n; ++j) {
                entry += b.rtilde[j - k] * b.d[j];
                m(j, k) = entry.value();
              }
            }
            return m;
          },
          [](const CirculantRows& c) {
            const std::size_t m = c.first_column.size();
            DenseMatrix out(c.rows, m);
            for (std::size_t j = 0; j < c.rows; ++j)
              for (std::size_t k = 0; k < m; ++k) out(j, k) = c.first_column[(j + m - k) % m];
            return out;
          },
          [](const CirculantCols& c) {
            const std::size_t m = c.first_column.size();
            DenseMatrix out(m, c.cols);
            for (std::size_t j = 0; j < m; ++j)
              for (std::size_t k = 0; k < c.cols; ++k) out(j, k) = c.first_column[(j + m - k) % m];
            return out;
          },
          [](const DenseMatrix& d) { return d; },
      },
      data_);
}

namespace {

void check_budget(const Factorization& f) {
  const std::size_t budget =
      f.method == Method::GroupAlgebra ? kGroupAlgebraDenseBudget : kDenseBudget;
  if (f.n > budget) throw std::length_error("dense factor requested above the dense budget");
}

void fill_norms(Factorization& f) {
  f.row_norms_sq_left = f.left.row_norms_sq();
  f.col_norms_sq_right = f.right.col_norms_sq();
  f.frobenius_sq_left = compensated_sum(f.row_norms_sq_left);
}

}  // namespace

DenseMatrix Factorization::dense_left() const {
  check_budget(*this);
  return left.to_dense();
}

DenseMatrix Factorization::dense_right() const {
  check_budget(*this);
  return right.to_dense();
}

Factorization sqrt_factorization(std::size_t n) {
  Factorization f;
  f.method = Method::SquareRoot;
  f.n = n;
  f.inner_dim = n;
  LowerTriangularToeplitz c{wallis_coeffs(n)};
  f.left = FactorMatrix(c);
  f.right = FactorMatrix(std::move(c));
  fill_norms(f);
  return f;
}

Factorization nsr_factorization(std::size_t n) {
  const CoefficientTable table = CoefficientTable::build(n);
  std::vector<double> d(n), inv_d(n);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = std::sqrt(table.d_sq[j]);
    inv_d[j] = 1.0 / d[j];
  }
  Factorization f;
  f.method = Method::NSR;
  f.n = n;
  f.inner_dim = n;
  NsrLeft left{table.rtilde, d};
  std::vector<double> cols;
  f.row_norms_sq_left = nsr_row_norms_sq(left, &cols);
  f.frobenius_sq_left = compensated_sum(f.row_norms_sq_left);
  f.left = FactorMatrix(std::move(left));
  f.right = FactorMatrix(ScaledToeplitz{LowerTriangularToeplitz{table.r}, std::move(inv_d)});
  f.col_norms_sq_right = f.right.col_norms_sq();
  return f;
}

CirculantSpectrum group_algebra_spectrum(std::size_t n) {
  if (n == 0) throw std::invalid_argument("group_algebra_spectrum: n must be >= 1");
  const std::size_t m = 2 * n;
  CirculantSpectrum spec;
  spec.eigenvalues.assign(m, Complex{0.0, 0.0});
  spec.eigenvalues[0] = static_cast<double>(n);
  for (std::size_t k = 1; k < m; k += 2) {
    const double angle = -kPi * static_cast<double>(k) / static_cast<double>(n);
    const Complex w_neg_k{std::cos(angle), std::sin(angle)};
    spec.eigenvalues[k] = 2.0 / (1.0 - w_neg_k);
  }
  return spec;
}

Factorization group_algebra_factorization(std::size_t n) {
  const CirculantSpectrum half = circulant_sqrt(group_algebra_spectrum(n));
  double imag = 0.0;
  std::vector<double> c = circulant_first_column(half, &imag);
  Factorization f;
  f.method = Method::GroupAlgebra;
  f.n = n;
  f.inner_dim = 2 * n;
  f.discarded_imag = imag;
  f.left = FactorMatrix(CirculantRows{c, n});
  f.right = FactorMatrix(CirculantCols{std::move(c), n});
  fill_norms(f);
  return f;
}

Factorization make_factorization(Method m, std::size_t n) {
  switch (m) {
    case Method::SquareRoot: return sqrt_factorization(n);
    case Method::NSR: return nsr_factorization(n);
    case Method::GroupAlgebra: return group_algebra_factorization(n);
  }
  throw std::invalid_argument("make_factorization: unknown method");
}

double verify_reconstruction(const Factorization& f) {
  if (f.n > kDenseBudget) throw std::length_error("verify_reconstruction: n above dense budget");
  const std::size_t n = f.n;
  double worst = 0.0;
  std::vector<double> e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    const std::vector<double> col = f.left.apply(f.right.apply(e));
    e[k] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = j >= k ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(col[j] - expected));
    }
  }
  return worst;
}

}  // namespace countfact
