#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crsing/bihom.hpp"
#include "crsing/complex_geometry.hpp"

namespace crsing {

/// Germ of a real surface in C^2 written as a graph over a disc,
///
///   w = C_0 z^k + Sigma(z) + G(z),   Sigma(z) = sum_{j=1..k} C_j z^{k-j} zbar^j,
///
/// with k > 2 and a polynomial residual G whose terms all have total degree
/// at least k+1.
class CRSurface {
 public:
  CRSurface(int k, std::vector<Complex> coeffs, BihomPoly residual = {},
            double radius = 1.0);

  int k() const { return k_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  const BihomPoly& residual() const { return residual_; }
  double radius() const { return radius_; }

  /// Sigma(z): the bihomogeneous part without the C_0 z^k term.
  Complex sigma(Complex z) const;
  /// Full graph value C_0 z^k + Sigma(z) + G(z).
  Complex value(Complex z) const;

 private:
  int k_;
  std::vector<Complex> coeffs_;
  BihomPoly residual_;
  double radius_;
};

/// The coordinate change w -> w - C_0 z^k: same surface with C_0 = 0.
CRSurface normalize(const CRSurface& s);

/// I(S) = { j : k/2 < j <= k and C_j != 0 }.
std::vector<int> index_set(const CRSurface& s);

/// tau_M(z) = (Sigma(z) - C_M z^{k-M} zbar^M) / (C_M z^{k-M} zbar^M) as a
/// ratio of bihomogeneous polynomials. Requires M in I(S).
BihomRatio tau_ratio(const CRSurface& s, int M);

/// Pointwise tau_M; rejects z = 0 and M outside I(S).
Complex tau_eval(const CRSurface& s, int M, Complex z);

/// Certified upper estimate of sup_{|z|=1} |tau_M|: grid maximum inflated by
/// the sampled Lipschitz bound times half the arc spacing pi/n.
double tau_sup(const CRSurface& s, int M, const CircleGrid& grid);

/// Certified upper estimate of sup_{|z|=1} |z| * (|d tau_M/dz| + |d tau_M/dzbar|)
/// from closed-form Wirtinger derivatives, inflated the same way using the
/// sampled second derivatives.
double grad_tau_sup(const CRSurface& s, int M, const CircleGrid& grid);

/// sin(pi/delta) / (sin(pi/delta) + cos(pi/delta)): the continuous form of
/// tan(pi/delta)/(1 + tan(pi/delta)), equal to 1 at delta = 2 and 0 at
/// delta = 1. Rejects delta <= 0.
double size_rhs(int delta);

struct TauProfile {
  int M = 0;
  std::vector<Complex> values;  // tau_M on the circle grid
  double A = 0.0;               // certified sup |tau_M|
  double gradSup = 0.0;         // certified sup |z| * grad norm
};

TauProfile tau_profile(const CRSurface& s, int M, const CircleGrid& grid);

/// Diagnostics for one candidate index M in I(S).
struct MCandidate {
  int M = 0;
  int delta = 0;  // 2M - k
  double A = 0.0;
  double gradSup = 0.0;
  double B = 0.0;        // derivLhs / delta
  double sizeRhs = 0.0;
  double derivLhs = 0.0;  // k A + (1 - A)^{-1} gradSup
  bool sizeOk = false;
  bool derivOk = false;
  double sizeMargin = 0.0;
  double derivMarginRel = 0.0;  // (delta - derivLhs) / delta
  bool vacuousBound = false;    // delta == 1: size bound is 0, unsatisfiable
  bool boundary = false;        // A equals the size bound exactly
  bool pass() const { return sizeOk && derivOk; }
};

struct Certificate {
  bool pass = false;
  std::string reason;  // populated when pass == false
  int M = 0;
  int delta = 0;
  double A = 0.0;
  double B = 0.0;
  double gradSup = 0.0;
  double sizeRhs = 0.0;
  double derivLhs = 0.0;
  bool sizeOk = false;
  bool derivOk = false;
  double sizeMargin = 0.0;
  double derivMarginRel = 0.0;
  std::pair<double, double> cRange{0.0, 0.0};
  std::vector<MCandidate> perM;
};

struct CertifyOptions {
  int forceM = -1;  // select this M instead of the widest-margin one
};

/// Decide the size and derivative conditions for every M in I(S); the
/// certificate passes when any candidate satisfies both strict inequalities.
/// Among passing candidates the selected M maximizes the relative derivative
/// margin unless forceM names a specific index.
Certificate certify(const CRSurface& s, const CircleGrid& grid,
                    const CertifyOptions& options = {});

}  // namespace crsing
