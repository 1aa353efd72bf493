#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crsing/approx.hpp"
#include "crsing/sheets.hpp"

namespace crsing {

/// Midpoint of the admissible interval (A, size_rhs(delta)) for the wedge
/// constant. Rejects an empty interval.
double choose_c(double A, int delta);

/// The separating polynomial p(z, w) = z w / C_*.
Complex p_eval(const SheetSystem& sys, Complex z, Complex w);

/// Per-sheet containment margins, both relative to |z|^{(k/Delta)+1}:
///   re: min of Re{p} - (1 - C) |z|^{(k/Delta)+1}
///   im: min of C |z|^{(k/Delta)+1} - |Im{p}|
/// where the p-values of sheet j are rotated back by omega_j^{-1}. All
/// positive means p maps each sheet into its wedge.
struct SheetMargins {
  double re = 0.0;
  double im = 0.0;
};

std::vector<SheetMargins> containment_margins(const SheetSystem& sys, double C,
                                              double eps, int nRadii = 32,
                                              int nAngles = 128);

/// Bivariate polynomial in (z, w) with complex coefficients.
struct Poly2 {
  std::map<std::pair<int, int>, Complex> terms;  // (z power, w power)

  void add_term(int zPow, int wPow, Complex c);
  Complex eval(Complex z, Complex w) const;
};

/// The root-of-unity average (1/Delta) sum_j g(z, omega_j w) written as a
/// polynomial P with P(z, w^Delta) equal to that average: w-powers not
/// divisible by Delta are annihilated, and the coefficient of z^mu u^nu in P
/// is the coefficient of z^mu w^{Delta nu} in g.
Poly2 symmetrize(const Poly2& g, int delta);

struct EpsilonSearchOptions {
  int bisectIters = 20;
  int marginRadii = 16;
  int marginAngles = 64;
  int jacobianRadii = 8;
  int jacobianAngles = 32;
  ScanOptions scan{24, 96, 4, 0.05, 1e-12, 1e-9, 1.05};
};

struct EpsilonSearch {
  bool found = false;
  double epsilon = 0.0;
  std::string failedCheck;  // which conjunct failed at the smallest tested eps
};

/// Bisection over (0, validity radius] for the largest sampled eps at which
/// all three checks hold together: positive containment margins, positive
/// Jacobian gap on the annulus of radius 2*eps (capped at the validity
/// radius), and a passing sector scan of F_0 on the eps-disc. Requires
/// A < C < size_rhs(Delta).
EpsilonSearch epsilon_search(const SheetSystem& sys, const Certificate& cert,
                             double C, const EpsilonSearchOptions& options = {});

struct KallinReport {
  double C = 0.0;
  double epsilon = 0.0;
  double vertexAngle = 0.0;  // 2 arctan(C / (1 - C))
  bool wedgeDisjoint = false;
  bool epsilonFound = false;
  std::string failedCheck;
  std::vector<SheetMargins> margins;  // at the found epsilon
};

/// Full Step-III verification: pick C (or take the override), search for the
/// working radius, and report the wedge geometry and containment margins.
KallinReport kallin_report(const SheetSystem& sys, const Certificate& cert,
                           double cOverride = -1.0,
                           const EpsilonSearchOptions& options = {});

}  // namespace crsing
