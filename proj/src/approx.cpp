#include "crsing/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crsing/parallel.hpp"

namespace crsing {

namespace {

Complex ipow(Complex z, int e) {
  Complex acc(1.0, 0.0);
  for (int i = 0; i < e; ++i) acc *= z;
  return acc;
}

}  // namespace

BranchChoice choose_branch(const Sector& sectorAtOrigin) {
  const double len = sectorAtOrigin.length();
  if (!(len < kTwoPi))
    throw std::invalid_argument("choose_branch: sector must be narrower than 2*pi");
  BranchChoice bc;
  bc.phi = principal_angle(-sectorAtOrigin.bisector());
  if (bc.phi == kPi) bc.phi = -kPi;  // keep phi in [-pi, pi)
  bc.nu = (len <= kPi + 1e-12) ? 1 : 2;
  return bc;
}

Complex qn_eval(double phi, int nu, int n, Complex w) {
  if (n < 1) throw std::invalid_argument("qn_eval: n must be >= 1");
  if (nu != 1 && nu != 2)
    throw std::invalid_argument("qn_eval: nu must be 1 or 2");
  if (w == Complex(0.0, 0.0)) return std::polar(double(n), phi);

  const Complex rotated = std::polar(1.0, phi) * w;
  if (std::abs(std::arg(rotated)) > 0.5 * nu * kPi + 1e-9)
    throw std::domain_error("qn_eval: w lies outside the branch's closed sector");

  const Complex root = (nu == 1) ? rotated : std::sqrt(rotated);
  const Complex decay = ipow(1.0 / (1.0 + root), n);
  const Complex t = 1.0 - decay;
  return (nu == 1 ? t : t * t) / w;
}

Complex fn_eval(const ComplexFn& F, Complex zeta, const SectorWitness& witness,
                int n, Complex z) {
  const Complex W = F(z) - F(zeta);
  if (W == Complex(0.0, 0.0)) return {0.0, 0.0};  // on the fiber
  const Complex arg0 = (z - zeta) * W;
  if (arg0 == Complex(0.0, 0.0)) return {0.0, 0.0};

  const double t = positive_angle(std::arg(arg0) - witness.sector.theta_lo);
  const bool inside =
      t <= witness.sector.length() + 1e-9 || t >= kTwoPi - 1e-9;
  if (!inside)
    throw std::domain_error("fn_eval: (z - zeta) W(z) left the witness sector");
  return W * qn_eval(witness.phi, witness.nu, n, arg0);
}

ScanReport sector_scan(const ComplexFn& F, const Disc& disc,
                       const ScanOptions& options,
                       const std::vector<Complex>& excluded) {
  const int nR = options.radialSamples, nA = options.angularSamples;
  if (nR < 2 || nA < 8)
    throw std::invalid_argument("sector_scan: grid too coarse");

  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(nR) * nA);
  for (int i = 0; i < nR; ++i) {
    const double r = disc.radius * double(i + 1) / double(nR);
    for (int m = 0; m < nA; ++m)
      grid.push_back(disc.center + std::polar(r, kTwoPi * m / nA));
  }

  std::vector<Complex> values(grid.size());
  par::for_each_index(grid.size(),
                      [&](std::size_t i) { values[i] = F(grid[i]); });

  std::vector<std::size_t> zetaIdx;
  for (int i = 0; i < nR; i += options.zetaStride)
    for (int m = 0; m < nA; m += options.zetaStride)
      zetaIdx.push_back(static_cast<std::size_t>(i) * nA + m);

  ScanReport report;
  report.fiberThreshold = std::max<std::size_t>(
      8, static_cast<std::size_t>(std::llround(std::sqrt(double(grid.size())))));

  struct Slot {
    ZetaScan scan;
    bool skipped = false;
    bool hasWitness = false;
    SectorWitness witness;
  };
  std::vector<Slot> slots(zetaIdx.size());

  par::for_each_index(zetaIdx.size(), [&](std::size_t si) {
    Slot& slot = slots[si];
    const Complex zeta = grid[zetaIdx[si]];
    const Complex Fz = values[zetaIdx[si]];
    for (const Complex& e : excluded)
      if (std::abs(zeta - e) <= options.excludeTol) {
        slot.skipped = true;
        return;
      }

    std::vector<Complex> products;
    products.reserve(grid.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex d = values[i] - Fz;
      if (std::abs(d) < options.equalityTol) {
        ++hits;
        continue;
      }
      const Complex prod = (grid[i] - zeta) * d;
      if (prod == Complex(0.0, 0.0)) continue;
      products.push_back(prod);
    }

    slot.scan.zeta = zeta;
    slot.scan.fiberHits = hits;
    slot.scan.fiberFlag = hits > report.fiberThreshold;
    if (products.empty()) {
      slot.scan.spread = 0.0;
      return;
    }
    const SectorFit fit =
        minimal_enclosing_sector(products, options.sectorPadFactor);
    slot.scan.spread = fit.spread;
    slot.scan.violation = fit.spread >= kTwoPi * (1.0 - options.padding);
    if (!slot.scan.violation && fit.sector) {
      const BranchChoice bc = choose_branch(*fit.sector);
      slot.witness = SectorWitness{zeta, *fit.sector, bc.phi, bc.nu};
      slot.hasWitness = true;
    }
  });

  for (const Slot& slot : slots) {
    if (slot.skipped) continue;
    report.perZeta.push_back(slot.scan);
    report.maxSpread = std::max(report.maxSpread, slot.scan.spread);
    if (slot.scan.violation) report.violatingZeta.push_back(slot.scan.zeta);
    if (slot.scan.fiberFlag) report.fiberFlagged.push_back(slot.scan.zeta);
    if (slot.hasWitness) report.witnesses.push_back(slot.witness);
  }
  report.pass = report.violatingZeta.empty() && report.fiberFlagged.empty();
  return report;
}

std::vector<BasisTerm> algebra_basis(int aMax, int bMax) {
  if (aMax < 0 || bMax < 0)
    throw std::invalid_argument("algebra_basis: negative cutoff");
  std::vector<BasisTerm> terms;
  terms.reserve(static_cast<std::size_t>(aMax + 1) * (bMax + 1));
  for (int a = 0; a <= aMax; ++a)
    for (int b = 0; b <= bMax; ++b) terms.push_back({a, b});
  std::stable_sort(terms.begin(), terms.end(),
                   [](const BasisTerm& x, const BasisTerm& y) {
                     if (x.a + x.b != y.a + y.b) return x.a + x.b < y.a + y.b;
                     return x.a < y.a;
                   });
  return terms;
}

std::vector<Complex> polar_grid(double radius, int nRadii, int nAngles) {
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(nRadii) * nAngles);
  for (int i = 1; i <= nRadii; ++i)
    for (int m = 0; m < nAngles; ++m)
      grid.push_back(std::polar(radius * double(i) / double(nRadii),
                                kTwoPi * m / nAngles));
  return grid;
}

MinimaxFit minimax_fit(const ComplexFn& target,
                       const std::vector<ComplexFn>& basis,
                       const std::vector<Complex>& grid,
                       const LawsonOptions& options) {
  if (grid.empty()) throw std::invalid_argument("minimax_fit: empty grid");
  if (basis.empty()) throw std::invalid_argument("minimax_fit: empty basis");
  const std::size_t m = grid.size(), n = basis.size();
  std::vector<Complex> A(m * n), t(m);
  par::for_each_index(m, [&](std::size_t i) {
    t[i] = target(grid[i]);
    for (std::size_t q = 0; q < n; ++q) A[i * n + q] = basis[q](grid[i]);
  });
  const LawsonResult res = lawson_minimax(A, m, n, t, options);
  return {res.coeffs, res.supError, res.iterations, res.converged};
}

namespace {

// Design matrix for the algebra basis {z^a F^b}, reusing cached F values.
void assemble_algebra_matrix(const std::vector<Complex>& grid,
                             const std::vector<Complex>& Fv,
                             const std::vector<BasisTerm>& terms,
                             std::vector<Complex>& A) {
  const std::size_t m = grid.size(), n = terms.size();
  A.resize(m * n);
  par::for_each_index(m, [&](std::size_t i) {
    for (std::size_t q = 0; q < n; ++q)
      A[i * n + q] = ipow(grid[i], terms[q].a) * ipow(Fv[i], terms[q].b);
  });
}

}  // namespace

ApproxReport approx_report(const ComplexFn& F, const ComplexFn& target,
                           const std::vector<std::pair<int, int>>& schedule,
                           const std::vector<Complex>& grid,
                           const LawsonOptions& options) {
  if (schedule.empty())
    throw std::invalid_argument("approx_report: empty schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i].first < schedule[i - 1].first ||
        schedule[i].second < schedule[i - 1].second)
      throw std::invalid_argument("approx_report: schedule must be nested");

  const std::size_t m = grid.size();
  std::vector<Complex> Fv(m), t(m);
  par::for_each_index(m, [&](std::size_t i) {
    Fv[i] = F(grid[i]);
    t[i] = target(grid[i]);
  });

  ApproxReport report;
  std::vector<BasisTerm> prevTerms;
  std::vector<Complex> prevCoeffs;
  std::vector<Complex> A;
  for (const auto& [aMax, bMax] : schedule) {
    const std::vector<BasisTerm> terms = algebra_basis(aMax, bMax);
    assemble_algebra_matrix(grid, Fv, terms, A);

    std::vector<Complex> warm;
    if (!prevCoeffs.empty()) {
      warm.assign(terms.size(), Complex(0.0, 0.0));
      for (std::size_t q = 0; q < prevTerms.size(); ++q)
        for (std::size_t p = 0; p < terms.size(); ++p)
          if (terms[p].a == prevTerms[q].a && terms[p].b == prevTerms[q].b)
            warm[p] = prevCoeffs[q];
    }

    const LawsonResult res = lawson_minimax(A, m, terms.size(), t, options,
                                            warm.empty() ? nullptr : &warm);
    report.steps.push_back({aMax, bMax, res.supError, res.converged});
    prevTerms = terms;
    prevCoeffs = res.coeffs;
  }
  report.finalBasis = prevTerms;
  report.finalCoeffs = prevCoeffs;
  return report;
}

}  // namespace crsing
