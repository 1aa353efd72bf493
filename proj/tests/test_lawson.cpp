#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crsing/lawson.hpp"

using namespace crsing;

namespace {

double unit(std::mt19937& gen) { return gen() * (1.0 / 4294967296.0); }

}  // namespace

TEST_SUITE("lawson") {

TEST_CASE("targets inside the span are interpolated") {
  std::mt19937 gen(3);
  const std::size_t m = 200, n = 4;
  std::vector<Complex> A(m * n), t(m);
  const std::vector<Complex> truth{{1, 0}, {0, -2}, {0.5, 0.5}, {-1, 1}};
  for (std::size_t i = 0; i < m; ++i) {
    Complex acc(0, 0);
    for (std::size_t q = 0; q < n; ++q) {
      A[i * n + q] = Complex(unit(gen) - 0.5, unit(gen) - 0.5);
      acc += A[i * n + q] * truth[q];
    }
    t[i] = acc;
  }
  const LawsonResult res = lawson_minimax(A, m, n, t);
  CHECK(res.supError < 1e-10);
  for (std::size_t q = 0; q < n; ++q)
    CHECK(std::abs(res.coeffs[q] - truth[q]) < 1e-8);
}

TEST_CASE("best linear sup approximation of x^2 on [-1, 1]") {
  // Classic equioscillation answer: constant 1/2, error 1/2.
  const std::size_t m = 2001;
  std::vector<Complex> A(m * 2), t(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = -1.0 + 2.0 * double(i) / double(m - 1);
    A[i * 2 + 0] = Complex(1, 0);
    A[i * 2 + 1] = Complex(x, 0);
    t[i] = Complex(x * x, 0);
  }
  const LawsonResult res = lawson_minimax(A, m, 2, t);
  CHECK(res.supError == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(std::abs(res.coeffs[0] - Complex(0.5, 0)) < 1e-2);
  CHECK(std::abs(res.coeffs[1]) < 1e-2);
}

TEST_CASE("the reported error never exceeds the zero baseline") {
  std::mt19937 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 50, n = 3;
    std::vector<Complex> A(m * n), t(m);
    double tmax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      t[i] = Complex(unit(gen) - 0.5, unit(gen) - 0.5);
      tmax = std::max(tmax, std::abs(t[i]));
      for (std::size_t q = 0; q < n; ++q)
        A[i * n + q] = Complex(unit(gen) - 0.5, unit(gen) - 0.5);
    }
    const LawsonResult res = lawson_minimax(A, m, n, t);
    CHECK(res.supError <= tmax);
  }
}

TEST_CASE("warm starts can only help") {
  const std::size_t m = 100, n = 2;
  std::vector<Complex> A(m * n), t(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = double(i) / double(m - 1);
    A[i * n + 0] = Complex(1, 0);
    A[i * n + 1] = Complex(x, 0);
    t[i] = Complex(std::exp(x), 0);
  }
  LawsonOptions opts;
  opts.maxIterations = 1;  // starve the iteration so the warm start matters
  const std::vector<Complex> warm{Complex(0.9, 0), Complex(1.7, 0)};

  std::vector<double> rs;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = double(i) / double(m - 1);
    rs.push_back(std::abs(std::exp(x) - 0.9 - 1.7 * x));
  }
  const double warmErr = *std::max_element(rs.begin(), rs.end());

  const LawsonResult res = lawson_minimax(A, m, n, t, opts, &warm);
  CHECK(res.supError <= warmErr + 1e-15);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(lawson_minimax({}, 0, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(lawson_minimax(std::vector<Complex>(5), 2, 2,
                                 std::vector<Complex>(2)),
                  std::invalid_argument);
}

}  // TEST_SUITE
