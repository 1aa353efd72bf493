#pragma once

#include <cstddef>
#include <vector>

#include "crsing/complex_geometry.hpp"

namespace crsing {

struct LawsonOptions {
  int maxIterations = 200;
  double stagnationTol = 1e-8;  // stop when the sup error stalls
  double tikhonov = 1e-12;      // diagonal floor for the normal equations
  double swingTol = 1e-4;       // oscillation threshold for the converged flag
};

struct LawsonResult {
  std::vector<Complex> coeffs;
  double supError = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Approximate discrete Chebyshev solution of
///
///   min_c  max_i | t_i - (A c)_i |
///
/// by Lawson's iteratively reweighted least squares: each round solves the
/// weighted normal equations and multiplies the weights by the residual
/// moduli. A is row-major with m rows and n columns. The best iterate seen is
/// returned, and the search starts no worse than c = 0 (or `warmStart` when
/// given), so the reported sup error never exceeds either baseline.
LawsonResult lawson_minimax(const std::vector<Complex>& A, std::size_t m,
                            std::size_t n, const std::vector<Complex>& target,
                            const LawsonOptions& options = {},
                            const std::vector<Complex>* warmStart = nullptr);

}  // namespace crsing
