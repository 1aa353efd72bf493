#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "crsing/complex_geometry.hpp"
#include "crsing/lawson.hpp"

namespace crsing {

using ComplexFn = std::function<Complex(Complex)>;

struct BranchChoice {
  double phi = 0.0;  // rotation taking the sector bisector to arg 0
  int nu = 1;        // 1 when the angular length is at most pi, else 2
};

/// Branch data for a vertex-0 sector: Re[(e^{i phi} w)^{1/nu}] > 0 holds on
/// the open sector. Rejects angular length >= 2*pi.
BranchChoice choose_branch(const Sector& sectorAtOrigin);

/// The rational approximants to 1/w on the closed sector:
///
///   Q_n(w) = {1 - [1 + (e^{i phi} w)^{1/nu}]^{-n}}^nu / w,   Q_n(0) = e^{i phi} n,
///
/// principal nu-th root. Satisfies |Q_n(w)| <= 4/|w| and Q_n(w) -> 1/w.
/// Rejects w whose rotated argument leaves the closed half-plane cone
/// |arg(e^{i phi} w)| <= nu*pi/2 (the branch is invalid there).
Complex qn_eval(double phi, int nu, int n, Complex w);

struct SectorWitness {
  Complex zeta{0.0, 0.0};
  Sector sector{Complex(0.0, 0.0), -0.1, 0.1};
  double phi = 0.0;
  int nu = 1;
};

/// f_n(z) = W(z) Q_n((z - zeta) W(z)) with W = F - F(zeta); the sequence that
/// converges to 1/(z - zeta) off the fiber of zeta with |f_n| <= 4/|z - zeta|.
/// Returns 0 on the fiber (W = 0); rejects arguments outside the witness's
/// closed sector.
Complex fn_eval(const ComplexFn& F, Complex zeta, const SectorWitness& witness,
                int n, Complex z);

struct ScanOptions {
  int radialSamples = 48;
  int angularSamples = 192;
  int zetaStride = 4;          // base points = every stride-th grid sample
  double padding = 0.05;       // violation when spread >= 2*pi*(1 - padding)
  double equalityTol = 1e-12;  // |F(z) - F(zeta)| below this joins the fiber
  double excludeTol = 1e-9;    // matching distance for the declared null set
  double sectorPadFactor = 1.05;
};

struct ZetaScan {
  Complex zeta{0.0, 0.0};
  double spread = 0.0;
  std::size_t fiberHits = 0;
  bool violation = false;
  bool fiberFlag = false;
};

struct ScanReport {
  bool pass = false;
  double maxSpread = 0.0;
  std::size_t fiberThreshold = 0;
  std::vector<ZetaScan> perZeta;
  std::vector<SectorWitness> witnesses;  // for non-violating base points
  std::vector<Complex> violatingZeta;
  std::vector<Complex> fiberFlagged;
};

/// Scans the value distribution of (z - zeta)(F(z) - F(zeta)) over a polar
/// grid on the disc: each sampled base point zeta off the declared null set
/// gets the minimal enclosing sector of its products, a violation when the
/// circular spread leaves no admissible sector, and a fiber flag when the
/// near-fiber {|F(z) - F(zeta)| < tol} collects more grid hits than a curve
/// at this resolution could explain away as discrete.
ScanReport sector_scan(const ComplexFn& F, const Disc& disc,
                       const ScanOptions& options = {},
                       const std::vector<Complex>& excluded = {});

struct BasisTerm {
  int a = 0;
  int b = 0;
};

/// The (aMax+1)(bMax+1) exponent pairs of z^a F^b in graded order
/// (total degree, then a).
std::vector<BasisTerm> algebra_basis(int aMax, int bMax);

/// Tensor polar grid: nRadii rings r = radius*i/nRadii times nAngles angles.
std::vector<Complex> polar_grid(double radius, int nRadii, int nAngles);

struct MinimaxFit {
  std::vector<Complex> coeffs;
  double supError = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Discrete sup-norm fit of `target` in the span of `basis` on the grid
/// (Lawson IRLS; see lawson.hpp).
MinimaxFit minimax_fit(const ComplexFn& target,
                       const std::vector<ComplexFn>& basis,
                       const std::vector<Complex>& grid,
                       const LawsonOptions& options = {});

struct ApproxStep {
  int aMax = 0;
  int bMax = 0;
  double supError = 0.0;
  bool converged = true;
};

struct ApproxReport {
  std::vector<ApproxStep> steps;
  std::vector<BasisTerm> finalBasis;
  std::vector<Complex> finalCoeffs;
};

/// Runs minimax_fit along a nested schedule of (aMax, bMax) cutoffs for the
/// basis {z^a F^b}, warm-starting each step with the previous solution so the
/// error column is non-increasing by construction.
ApproxReport approx_report(const ComplexFn& F, const ComplexFn& target,
                           const std::vector<std::pair<int, int>>& schedule,
                           const std::vector<Complex>& grid,
                           const LawsonOptions& options = {});

}  // namespace crsing
