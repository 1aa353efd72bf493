#include "crsing/lawson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crsing/parallel.hpp"

namespace crsing {

namespace {

// Cholesky factorization G = L L^H of a Hermitian positive-definite matrix,
// in place (lower triangle). Returns false when a pivot is not positive.
bool cholesky(std::vector<Complex>& G, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = G[j * n + j].real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(G[j * n + k]);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    G[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = G[i * n + j];
      for (std::size_t k = 0; k < j; ++k)
        s -= G[i * n + k] * std::conj(G[j * n + k]);
      G[i * n + j] = s / ljj;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<Complex>& L, std::size_t n,
                    std::vector<Complex>& x) {
  for (std::size_t i = 0; i < n; ++i) {  // L y = b
    Complex s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= L[i * n + k] * x[k];
    x[i] = s / L[i * n + i].real();
  }
  for (std::size_t ii = n; ii-- > 0;) {  // L^H x = y
    Complex s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k)
      s -= std::conj(L[k * n + ii]) * x[k];
    x[ii] = s / L[ii * n + ii].real();
  }
}

}  // namespace

LawsonResult lawson_minimax(const std::vector<Complex>& A, std::size_t m,
                            std::size_t n, const std::vector<Complex>& target,
                            const LawsonOptions& options,
                            const std::vector<Complex>* warmStart) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("lawson_minimax: empty problem");
  if (A.size() != m * n || target.size() != m)
    throw std::invalid_argument("lawson_minimax: dimension mismatch");

  const auto residuals = [&](const std::vector<Complex>& c,
                             std::vector<double>& r) {
    par::for_each_index(m, [&](std::size_t i) {
      Complex acc = target[i];
      const Complex* row = A.data() + i * n;
      for (std::size_t q = 0; q < n; ++q) acc -= row[q] * c[q];
      r[i] = std::abs(acc);
    });
  };

  std::vector<double> r(m);
  LawsonResult best;
  best.coeffs.assign(n, Complex(0.0, 0.0));
  residuals(best.coeffs, r);
  best.supError = par::max_map(m, [&](std::size_t i) { return r[i]; });
  if (warmStart && warmStart->size() == n) {
    residuals(*warmStart, r);
    const double e = par::max_map(m, [&](std::size_t i) { return r[i]; });
    if (e < best.supError) {
      best.supError = e;
      best.coeffs = *warmStart;
    }
  }

  std::vector<double> w(m, 1.0 / double(m));
  std::vector<Complex> G(n * n), rhs(n), c(n);
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(options.maxIterations));

  double prev = best.supError;
  int stagnant = 0;
  int it = 0;
  for (; it < options.maxIterations; ++it) {
    // Weighted normal equations. Each (p, q) entry is an independent serial
    // dot product over the grid, so the assembly is deterministic at any
    // thread count.
    par::for_each_index(n * (n + 1) / 2, [&](std::size_t lin) {
      // Unrank lin -> upper-triangle pair (p, q), p <= q.
      std::size_t p = 0, remaining = lin;
      while (remaining >= n - p) {
        remaining -= n - p;
        ++p;
      }
      const std::size_t q = p + remaining;
      Complex acc(0.0, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        acc += w[i] * std::conj(A[i * n + p]) * A[i * n + q];
      G[p * n + q] = acc;
      if (p != q) G[q * n + p] = std::conj(acc);
    });
    par::for_each_index(n, [&](std::size_t p) {
      Complex acc(0.0, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        acc += w[i] * std::conj(A[i * n + p]) * target[i];
      rhs[p] = acc;
    });

    double lambda = options.tikhonov;
    bool solved = false;
    for (int attempt = 0; attempt < 6 && !solved; ++attempt) {
      std::vector<Complex> L = G;
      for (std::size_t d = 0; d < n; ++d) L[d * n + d] += lambda;
      if (cholesky(L, n)) {
        c = rhs;
        cholesky_solve(L, n, c);
        solved = true;
      } else {
        lambda *= 100.0;
      }
    }
    if (!solved) break;

    residuals(c, r);
    const double e = par::max_map(m, [&](std::size_t i) { return r[i]; });
    history.push_back(e);
    if (e < best.supError) {
      best.supError = e;
      best.coeffs = c;
    }
    if (e == 0.0) break;

    if (std::abs(e - prev) <= options.stagnationTol * std::max(1.0, e)) {
      if (++stagnant >= 3) break;
    } else {
      stagnant = 0;
    }
    prev = e;

    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] *= r[i] + 1e-300;
      total += w[i];
    }
    if (!(total > 0.0)) break;
    for (std::size_t i = 0; i < m; ++i) w[i] /= total;
  }

  best.iterations = it;
  best.converged = true;
  if (it >= options.maxIterations && history.size() >= 10) {
    // Flag oscillation: relative swing of the sup error over the last window.
    double lo = history.back(), hi = history.back();
    for (std::size_t i = history.size() - 10; i < history.size(); ++i) {
      lo = std::min(lo, history[i]);
      hi = std::max(hi, history[i]);
    }
    if (hi - lo > options.swingTol * std::max(1.0, hi)) best.converged = false;
  }
  return best;
}

}  // namespace crsing
