#pragma once

#include <cstdint>
#include <vector>

#include "crsing/surface.hpp"

namespace crsing {

struct DeltaRadiusOptions {
  int angleSamples = 2048;
  int radiusSamples = 64;
  double margin = 0.05;  // require |u| <= 1 - margin on the sampled disc
  int bisectIters = 40;
};

/// Largest sampled radius delta <= s.radius such that
/// u(z) = tau_M(z) + G(z) / (C_M z^{k-M} zbar^M) satisfies |u| <= 1 - margin
/// on the punctured disc 0 < |z| <= delta. Throws std::runtime_error when no
/// sampled radius qualifies (the message reports the smallest sampled |u|).
double delta_radius(const CRSurface& s, int M,
                    const DeltaRadiusOptions& options = {});

/// The Delta sheets of the pullback of the surface under (z, w) -> (z, w^Delta):
///
///   F_j(z) = C_* omega_j |z|^{k/Delta} e^{-i theta} (1 + u(z))^{1/Delta},
///
/// with C_* = |C_M|^{1/Delta} e^{i Arg(C_M)/Delta}, omega_j the Delta-th roots
/// of unity, and the principal root (valid because |u| < 1 inside the validity
/// radius).
class SheetSystem {
 public:
  SheetSystem(const CRSurface& normalizedSurface, int M, double validityRadius);

  const CRSurface& base() const { return base_; }
  int M() const { return M_; }
  int delta() const { return delta_; }
  Complex c_star() const { return cStar_; }
  const std::vector<Complex>& omegas() const { return omegas_; }
  double validity_radius() const { return validityRadius_; }

  /// Sigma(z) + G(z): the function whose Delta-th roots the sheets are.
  Complex frak(Complex z) const;
  /// u(z) = frak(z) / (C_M z^{k-M} zbar^M) - 1; undefined at z = 0.
  Complex u(Complex z) const;

  /// F_j(z), 1 <= j <= delta, |z| <= validity radius; F_j(0) = 0.
  Complex sheet(int j, Complex z) const;
  /// F_0(z) = F_1(z) / C_*.
  Complex f0(Complex z) const;
  /// F_0 without the radius check, for finite-difference stencils near the rim.
  Complex f0_unchecked(Complex z) const;

 private:
  CRSurface base_;
  int M_;
  int delta_;
  Complex cM_;
  Complex cStar_;
  std::vector<Complex> omegas_;
  double validityRadius_;
};

/// Builds the sheet system for a passing certificate (rejects failing ones).
SheetSystem build_sheets(const CRSurface& s, const Certificate& cert,
                         const DeltaRadiusOptions& options = {});

/// Diagnostics path: same construction at an explicit M in I(S), without the
/// certificate gate (used e.g. to inspect Delta = 1 candidates).
SheetSystem build_sheets_at(const CRSurface& s, int M,
                            const DeltaRadiusOptions& options = {});

/// Max over sample pairs of the relative residual of the defining identity
/// prod_j (w - F_j(z)) = w^Delta - frak(z).
double verify_product(const SheetSystem& sys, const std::vector<Complex>& zs,
                      const std::vector<Complex>& ws);

/// Deterministic sample pairs inside the validity disc for verify_product.
void sample_pairs(const SheetSystem& sys, std::size_t count, std::uint32_t seed,
                  std::vector<Complex>& zs, std::vector<Complex>& ws);

/// |dF_0/dzbar| - |dF_0/dz| at z via finite differences; a positive gap
/// makes the real Jacobian of F_0 negative, so fibers are discrete near z.
/// Rejects z = 0 and |z| > validity radius.
double jacobian_gap(const SheetSystem& sys, Complex z);

/// Closed-form Wirtinger derivatives of F_0; available only when G = 0.
Wirtinger f0_wirtinger_closed(const SheetSystem& sys, Complex z);

/// The Taylor coefficients of (1 + x)^{1/delta} - 1, i.e. the series behind
/// the truncated-sheet expansion; count entries starting at the linear term.
std::vector<double> root_series_coefficients(int delta, int count);

/// Geometric bound A^{N+1} / (1 - A) on the tail sum_{nu > N} |alpha_nu| A^nu
/// of that series; requires 0 <= A < 1.
double series_tail_bound(double A, int N);

}  // namespace crsing
