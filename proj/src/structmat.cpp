#include "countfact/structmat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "countfact/sequences.hpp"

namespace countfact {

namespace {

constexpr std::size_t kDirectConvolutionLimit = 64;

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t next_power_of_two(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

// exp(sign * 2 pi i t / m) for t in [0, m).
std::vector<Complex> twiddles(std::size_t m, double sign) {
  std::vector<Complex> tw(m);
  for (std::size_t t = 0; t < m; ++t) {
    const double angle = sign * 2.0 * kPi * static_cast<double>(t) / static_cast<double>(m);
    tw[t] = {std::cos(angle), std::sin(angle)};
  }
  return tw;
}

void fft_in_place(std::vector<Complex>& a, double sign) {
  const std::size_t m = a.size();
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::vector<Complex> tw = twiddles(m, sign);
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = m / len;
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * tw[k * stride];
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

std::vector<Complex> direct_dft(std::span<const Complex> v, double sign) {
  const std::size_t m = v.size();
  const std::vector<Complex> tw = twiddles(m, sign);
  std::vector<Complex> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
      acc += v[j] * tw[(static_cast<unsigned long long>(j) * k) % m];
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const double ait = a(i, t);
      if (ait == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ait * b(t, j);
    }
  }
  return c;
}

DenseMatrix counting_matrix(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = 1.0;
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

void write_matrix_csv(const DenseMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      auto res = std::to_chars(buf, buf + sizeof buf, m(i, j), std::chars_format::general, 17);
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

DenseMatrix LowerTriangularToeplitz::to_dense() const {
  const std::size_t n = size();
  DenseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k <= j; ++k) m(j, k) = col[j - k];
  return m;
}

std::vector<double> LowerTriangularToeplitz::apply(std::span<const double> x) const {
  if (x.size() != size()) throw std::invalid_argument("LowerTriangularToeplitz::apply: size mismatch");
  return truncated_convolution(col, x, size());
}

std::vector<double> truncated_convolution(std::span<const double> a, std::span<const double> b,
                                          std::size_t n) {
  std::vector<double> out(n, 0.0);
  const std::size_t na = std::min(a.size(), n);
  const std::size_t nb = std::min(b.size(), n);
  if (na == 0 || nb == 0) return out;
  if (std::min(na, nb) <= kDirectConvolutionLimit) {
    for (std::size_t i = 0; i < na; ++i) {
      if (a[i] == 0.0) continue;
      const std::size_t lim = std::min(nb, n - i);
      for (std::size_t j = 0; j < lim; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  const std::size_t m = next_power_of_two(na + nb - 1);
  std::vector<Complex> fa(m), fb(m);
  for (std::size_t i = 0; i < na; ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < nb; ++i) fb[i] = b[i];
  fft_in_place(fa, -1.0);
  fft_in_place(fb, -1.0);
  for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
  fft_in_place(fa, +1.0);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real() * scale;
  return out;
}

LowerTriangularToeplitz ltt_multiply(const LowerTriangularToeplitz& a,
                                     const LowerTriangularToeplitz& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ltt_multiply: dimension mismatch");
  return {truncated_convolution(a.col, b.col, a.size())};
}

std::vector<Complex> dft(std::span<const Complex> v, bool inverse) {
  if (v.empty()) throw std::invalid_argument("dft: empty input");
  const double sign = inverse ? +1.0 : -1.0;
  std::vector<Complex> out;
  if (is_power_of_two(v.size())) {
    out.assign(v.begin(), v.end());
    fft_in_place(out, sign);
  } else {
    out = direct_dft(v, sign);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (auto& z : out) z *= scale;
  return out;
}

double CirculantSpectrum::conjugate_asymmetry() const {
  const std::size_t m = size();
  double worst = 0.0;
  if (m == 0) return worst;
  worst = std::abs(eigenvalues[0].imag());
  for (std::size_t k = 1; k < m; ++k)
    worst = std::max(worst, std::abs(eigenvalues[k] - std::conj(eigenvalues[m - k])));
  return worst;
}

CirculantSpectrum circulant_spectrum(std::span<const double> first_column) {
  std::vector<Complex> c(first_column.begin(), first_column.end());
  std::vector<Complex> lam = dft(c, false);
  const double scale = std::sqrt(static_cast<double>(c.size()));
  for (auto& z : lam) z *= scale;
  return {std::move(lam)};
}

std::vector<double> circulant_first_column(const CirculantSpectrum& spec, double* max_imag) {
  std::vector<Complex> col = dft(spec.eigenvalues, true);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.size()));
  std::vector<double> out(col.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < col.size(); ++i) {
    out[i] = col[i].real() * scale;
    worst = std::max(worst, std::abs(col[i].imag() * scale));
  }
  if (max_imag) *max_imag = worst;
  return out;
}

CirculantSpectrum circulant_sqrt(const CirculantSpectrum& spec) {
  CirculantSpectrum out;
  out.eigenvalues.reserve(spec.size());
  for (const Complex& z : spec.eigenvalues) {
    // std::sqrt follows the principal branch, but a negative real with a -0.0
    // imaginary part would land on the negative imaginary axis.
    if (z.imag() == 0.0 && z.real() < 0.0) {
      out.eigenvalues.emplace_back(0.0, std::sqrt(-z.real()));
    } else {
      out.eigenvalues.push_back(std::sqrt(z));
    }
  }
  return out;
}

std::vector<double> circulant_apply(std::span<const double> first_column,
                                    std::span<const double> x) {
  const std::size_t m = first_column.size();
  if (x.size() != m) throw std::invalid_argument("circulant_apply: size mismatch");
  std::vector<double> y(m, 0.0);
  if (!is_power_of_two(m) || m <= kDirectConvolutionLimit) {
    for (std::size_t k = 0; k < m; ++k) {
      if (x[k] == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t idx = j >= k ? j - k : j + m - k;
        y[j] += first_column[idx] * x[k];
      }
    }
    return y;
  }
  std::vector<Complex> fc(first_column.begin(), first_column.end());
  std::vector<Complex> fx(x.begin(), x.end());
  fft_in_place(fc, -1.0);
  fft_in_place(fx, -1.0);
  for (std::size_t k = 0; k < m; ++k) fc[k] *= fx[k];
  fft_in_place(fc, +1.0);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) y[j] = fc[j].real() * scale;
  return y;
}

DenseMatrix circulant_dense(std::span<const double> first_column) {
  const std::size_t m = first_column.size();
  DenseMatrix out(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) out(j, k) = first_column[(j + m - k) % m];
  return out;
}

}  // namespace countfact
