#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "countfact/factorizations.hpp"
#include "countfact/sequences.hpp"
#include "oracles.hpp"

using namespace countfact;

namespace {

std::vector<double> dense_row_norms_sq(const DenseMatrix& m) {
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (double v : m.row(i)) out[i] += v * v;
  return out;
}

std::vector<double> dense_col_norms_sq(const DenseMatrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j) * m(i, j);
  return out;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("sqrt") == Method::SquareRoot);
  CHECK(parse_method("nsr") == Method::NSR);
  CHECK(parse_method("group-algebra") == Method::GroupAlgebra);
  CHECK(parse_method("ga") == Method::GroupAlgebra);
  CHECK(to_string(Method::GroupAlgebra) == "group-algebra");
  CHECK_THROWS_AS(parse_method("cholesky"), std::invalid_argument);
}

TEST_CASE("every factorization reproduces the counting matrix (dense oracle)") {
  for (Method m : {Method::SquareRoot, Method::NSR, Method::GroupAlgebra}) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 16u, 33u, 64u, 256u}) {
      CAPTURE(n);
      const Factorization f = make_factorization(m, n);
      const DenseMatrix l = f.dense_left(), r = f.dense_right();
      CHECK(l.rows() == n);
      CHECK(l.cols() == f.inner_dim);
      CHECK(r.rows() == f.inner_dim);
      CHECK(r.cols() == n);
      const double dense_err = oracle::max_abs_diff(oracle::multiply(l, r), oracle::lower_ones(n));
      CHECK(dense_err <= 1e-9);
      CHECK(verify_reconstruction(f) <= 1e-9);

      const auto rows = dense_row_norms_sq(l);
      const auto cols = dense_col_norms_sq(r);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(f.row_norms_sq_left[i] == doctest::Approx(rows[i]).epsilon(1e-12));
        CHECK(f.col_norms_sq_right[i] == doctest::Approx(cols[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("structured apply agrees with dense multiplication") {
  oracle::SizeGen gen(3);
  for (Method m : {Method::SquareRoot, Method::NSR, Method::GroupAlgebra}) {
    for (int trial = 0; trial < 4; ++trial) {
      const std::size_t n = gen(1, 200);
      const Factorization f = make_factorization(m, n);
      std::vector<double> x(n);
      for (double& v : x) v = gen.real(-1, 1);
      const auto rx = f.right.apply(x);
      const auto lrx = f.left.apply(rx);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += x[i];
        REQUIRE(std::abs(lrx[i] - s) <= 1e-9);
      }
      const DenseMatrix r = f.dense_right();
      for (std::size_t i = 0; i < r.rows(); ++i) {
        double acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += r(i, k) * x[k];
        REQUIRE(std::abs(rx[i] - acc) <= 1e-10);
      }
    }
  }
}

TEST_CASE("square root factorization is C = C with C^2 = M") {
  const Factorization f = sqrt_factorization(5);
  const DenseMatrix l = f.dense_left();
  const auto r = wallis_coeffs(5);
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k <= j; ++k) CHECK(l(j, k) == r[j - k]);
  CHECK(oracle::max_abs_diff(l, f.dense_right()) == 0.0);
}

TEST_CASE("nsr: unit columns, rearranged entries and the sandwiches") {
  for (std::size_t n : {1u, 2u, 16u, 64u, 256u}) {
    CAPTURE(n);
    const Factorization f = nsr_factorization(n);
    for (double c : f.col_norms_sq_right) CHECK(c == doctest::Approx(1.0).epsilon(1e-13));

    const auto r = wallis_coeffs(n);
    std::vector<double> d(n);
    const auto d2 = column_norms_sq(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = std::sqrt(d2[j]);
    const DenseMatrix b = f.dense_left();
    const DenseMatrix rearranged = oracle::nsr_left_rearranged(r, d);
    CHECK(oracle::max_abs_diff(b, rearranged) <= 1e-12);

    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k <= j; ++k) REQUIRE(b(j, k) >= d[j] * r[j - k] - 1e-12);
      // 1-based: sum_k B_{jk}^2 >= d_j^2 d_{n-j+1}^2.
      REQUIRE(f.row_norms_sq_left[j] >= d2[j] * d2[n - 1 - j] - 1e-12);
    }
  }
}

TEST_CASE("nsr streamed row norms match dense norms") {
  oracle::SizeGen gen(29);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = gen(1, 300);
    const Factorization f = nsr_factorization(n);
    const auto& nl = std::get<NsrLeft>(f.left.data());
    std::vector<double> cols;
    const auto rows = nsr_row_norms_sq(nl, &cols);
    const DenseMatrix b = f.dense_left();
    const auto dr = dense_row_norms_sq(b);
    const auto dc = dense_col_norms_sq(b);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(rows[i] == doctest::Approx(dr[i]).epsilon(1e-12));
      REQUIRE(cols[i] == doctest::Approx(dc[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("group algebra spectrum and circulant structure") {
  const std::size_t n = 8;
  const auto spec = group_algebra_spectrum(n);
  REQUIRE(spec.size() == 2 * n);
  CHECK(std::abs(spec.eigenvalues[0] - Complex(8.0)) < 1e-13);
  for (std::size_t k = 1; k < 2 * n; ++k) {
    if (k % 2 == 0) {
      CHECK(std::abs(spec.eigenvalues[k]) < 1e-13);
    } else {
      const Complex w = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / n);
      CHECK(std::abs(spec.eigenvalues[k] - 2.0 / (1.0 - w)) < 1e-12);
    }
  }
  // The spectrum is that of the circulant extension of M_count: first column
  // (1, ..., 1, 0, ..., 0) of length 2n.
  std::vector<double> ext(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) ext[i] = 1.0;
  const auto direct = circulant_spectrum(ext);
  for (std::size_t k = 0; k < 2 * n; ++k) CHECK(std::abs(direct.eigenvalues[k] - spec.eigenvalues[k]) < 1e-12);
}

TEST_CASE("group algebra agrees with the b_f double sum") {
  for (std::size_t n : {1u, 2u, 3u, 4u, 8u, 12u}) {
    CAPTURE(n);
    const Factorization f = group_algebra_factorization(n);
    const DenseMatrix l = f.dense_left();
    const DenseMatrix r = f.dense_right();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < 2 * n; ++t) {
        const Complex bl = oracle::b_f(n, static_cast<long>(t) - static_cast<long>(j));
        REQUIRE(std::abs(bl.imag()) < 1e-12);
        REQUIRE(std::abs(l(j, t) - bl.real()) < 1e-12);
        const Complex br = oracle::b_f(n, static_cast<long>(j) - static_cast<long>(t));
        REQUIRE(std::abs(r(t, j) - br.real()) < 1e-12);
      }
  }
}

TEST_CASE("group algebra DFT decomposition of the left factor") {
  for (std::size_t n : {1u, 2u, 4u, 6u, 16u}) {
    CAPTURE(n);
    const std::size_t m = 2 * n;
    const DenseMatrix l = group_algebra_factorization(n).dense_left();
    for (std::size_t j = 0; j < n; ++j) {
      // Row j of L F* is the inverse unitary DFT of row j of L.
      std::vector<oracle::cplx> row(m);
      for (std::size_t t = 0; t < m; ++t) row[t] = l(j, t);
      const auto lf = oracle::naive_dft(row, true);
      for (std::size_t k = 0; k < m; ++k) {
        oracle::cplx expect = 0;
        if (k == 0) {
          expect = 1.0 / std::sqrt(2.0);
        } else if (k % 2 == 1) {
          const double dn = static_cast<double>(n);
          const oracle::cplx w_jk = std::polar(1.0, std::numbers::pi * static_cast<double>(j * k) / dn);
          const oracle::cplx w_mk = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / dn);
          expect = w_jk / std::sqrt(dn * (1.0 - w_mk));
        }
        REQUIRE(std::abs(lf[k] - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("group algebra rows and columns share one norm") {
  for (std::size_t n : {1u, 3u, 64u, 5000u}) {
    const Factorization f = group_algebra_factorization(n);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(f.row_norms_sq_left[i] == doctest::Approx(f.row_norms_sq_left[0]).epsilon(1e-13));
      REQUIRE(f.col_norms_sq_right[i] == doctest::Approx(f.row_norms_sq_left[0]).epsilon(1e-13));
    }
    CHECK(f.discarded_imag < 1e-10);
  }
}

TEST_CASE("dense budgets") {
  CHECK_THROWS_AS(group_algebra_factorization(kGroupAlgebraDenseBudget + 1).dense_left(), std::length_error);
  CHECK_NOTHROW(group_algebra_factorization(kGroupAlgebraDenseBudget).dense_left());
  CHECK_THROWS_AS(verify_reconstruction(sqrt_factorization(kDenseBudget + 1)), std::length_error);
  CHECK_THROWS_AS(make_factorization(Method::NSR, 0), std::invalid_argument);
}
