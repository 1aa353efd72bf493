#include "crsing/hull.hpp"

#include <cmath>
#include <stdexcept>

#include "crsing/approx.hpp"
#include "crsing/parallel.hpp"

namespace crsing {

namespace {

Complex ipow(Complex z, int e) {
  Complex acc(1.0, 0.0);
  for (int i = 0; i < e; ++i) acc *= z;
  return acc;
}

// Monomial exponents (alpha, beta) with alpha + beta <= d, graded, without
// the constant term (which is eliminated by the P(probe) = 1 constraint).
std::vector<std::pair<int, int>> monomials_up_to(int d) {
  std::vector<std::pair<int, int>> out;
  for (int total = 1; total <= d; ++total)
    for (int alpha = 0; alpha <= total; ++alpha)
      out.emplace_back(alpha, total - alpha);
  return out;
}

}  // namespace

HullProbeResult hull_probe(const std::vector<Point2>& samples, Point2 probe,
                           int dMax, const HullOptions& options) {
  if (samples.empty()) throw std::invalid_argument("hull_probe: no samples");
  if (dMax < 1) throw std::invalid_argument("hull_probe: dMax must be >= 1");
  for (const Point2& s : samples)
    if (s.z == probe.z && s.w == probe.w)
      throw std::invalid_argument("hull_probe: probe coincides with a sample");

  HullProbeResult result;
  result.probe = probe;

  // P = 1 + sum_c gamma_c (m_c(x) - m_c(probe)); minimizing sup |P| is the
  // Lawson problem with target -1 and columns m_c(x) - m_c(probe).
  const std::size_t m = samples.size();
  const std::vector<Complex> target(m, Complex(-1.0, 0.0));

  std::vector<Complex> prevCoeffs;
  std::vector<std::pair<int, int>> prevMon;
  for (int d = 1; d <= dMax; ++d) {
    const std::vector<std::pair<int, int>> mon = monomials_up_to(d);
    const std::size_t n = mon.size();
    std::vector<Complex> A(m * n);
    par::for_each_index(m, [&](std::size_t i) {
      for (std::size_t q = 0; q < n; ++q) {
        const auto [alpha, beta] = mon[q];
        A[i * n + q] = ipow(samples[i].z, alpha) * ipow(samples[i].w, beta) -
                       ipow(probe.z, alpha) * ipow(probe.w, beta);
      }
    });

    // Warm-start with the previous degree's solution; the monomial list is a
    // prefix of the new one, so m_d can only improve as d grows.
    std::vector<Complex> warm;
    if (!prevCoeffs.empty()) {
      warm.assign(n, Complex(0.0, 0.0));
      for (std::size_t q = 0; q < prevMon.size(); ++q) warm[q] = prevCoeffs[q];
    }

    const LawsonResult res =
        lawson_minimax(A, m, n, target, options.lawson,
                       warm.empty() ? nullptr : &warm);
    result.degrees.push_back(d);
    result.mValues.push_back(res.supError);
    result.allConverged = result.allConverged && res.converged;
    prevCoeffs = res.coeffs;
    prevMon = mon;
  }

  for (double md : result.mValues)
    if (md < 1.0 - options.outsideTol) result.verdict = HullVerdict::Outside;
  return result;
}

ConvexityScan convexity_scan(const CRSurface& surface, double eps,
                             const ConvexityScanOptions& options) {
  if (!(eps > 0.0) || eps > surface.radius())
    throw std::invalid_argument(
        "convexity_scan: eps must lie in (0, surface radius]");

  const CRSurface s = normalize(surface);
  const std::vector<Complex> grid =
      polar_grid(eps, options.nRadii, options.nAngles);
  std::vector<Point2> samples(grid.size());
  double supF = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    samples[i] = {grid[i], s.value(grid[i])};
    supF = std::max(supF, std::abs(samples[i].w));
  }

  // Probes in a tube around the graph: base z-points on a half-radius ring
  // plus the center, each displaced in w by +-h and +-ih. Graph points are
  // uniquely determined by z, so a nonzero displacement is always off it.
  const double h = std::max(options.offsetScale * supF, 1e-6);
  std::vector<Point2> probes;
  std::vector<Complex> bases;
  if (options.probeRings > 0) {
    bases.push_back(Complex(0.0, 0.0));
    for (int a = 0; a < options.probeRings; ++a)
      bases.push_back(std::polar(0.5 * eps, kTwoPi * a / options.probeRings));
  }
  for (const Complex& z : bases)
    for (const Complex off :
         {Complex(h, 0.0), Complex(-h, 0.0), Complex(0.0, h), Complex(0.0, -h)})
      probes.push_back({z, s.value(z) + off});

  ConvexityScan scan;
  scan.probes.resize(probes.size());
  par::for_each_index(probes.size(), [&](std::size_t i) {
    scan.probes[i] = hull_probe(samples, probes[i], options.dMax, options.hull);
  });
  for (const HullProbeResult& p : scan.probes) {
    if (p.verdict == HullVerdict::Outside)
      ++scan.outsideCount;
    else
      ++scan.unresolvedCount;
  }
  return scan;
}

}  // namespace crsing
