#include "crsing/pipeline.hpp"

#include <cmath>
#include <random>

#include "crsing/parallel.hpp"

namespace crsing {

namespace {

double unit_double(std::mt19937& gen) {
  return gen() * (1.0 / 4294967296.0);
}

// Max relative residual of P(z, w^Delta) = (1/Delta) sum_j g(z, omega_j w)
// over deterministic random points.
double symmetrize_residual(const Poly2& g, int delta, std::size_t count,
                           std::uint32_t seed) {
  const Poly2 P = symmetrize(g, delta);
  std::mt19937 gen(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Complex z = std::polar(unit_double(gen), kTwoPi * unit_double(gen));
    const Complex w = std::polar(unit_double(gen), kTwoPi * unit_double(gen));
    Complex avg(0.0, 0.0);
    for (int j = 0; j < delta; ++j)
      avg += g.eval(z, std::polar(1.0, kTwoPi * j / delta) * w);
    avg /= double(delta);
    Complex wd(1.0, 0.0);
    for (int j = 0; j < delta; ++j) wd *= w;
    const Complex lhs = P.eval(z, wd);
    worst = std::max(worst,
                     std::abs(lhs - avg) / std::max(1.0, std::abs(avg)));
  }
  return worst;
}

}  // namespace

PipelineReport run_pipeline(const CRSurface& surface,
                            const PipelineOptions& options) {
  PipelineReport report;
  const CRSurface s = normalize(surface);

  report.cert = certify(s, CircleGrid(options.gridN), options.certify);
  report.certified = report.cert.pass;
  if (!report.certified) {
    report.haltedAt = "certify";
    return report;
  }

  // Step I: sheets, product identity, Jacobian sweep.
  const SheetSystem sys = build_sheets(s, report.cert, options.deltaRadius);
  report.haveSheets = true;
  report.delta = sys.delta();
  report.cStar = sys.c_star();
  report.omegas = sys.omegas();
  report.validityRadius = sys.validity_radius();

  std::vector<Complex> zs, ws;
  sample_pairs(sys, options.productSamples, options.productSeed, zs, ws);
  report.productResidual = verify_product(sys, zs, ws);

  const double delta = sys.validity_radius();
  const std::size_t nR = static_cast<std::size_t>(options.jacobianRadii);
  const std::size_t nA = static_cast<std::size_t>(options.jacobianAngles);
  report.jacobianMin = par::min_map(nR * nA, [&](std::size_t idx) {
    const std::size_t ir = idx / nA, ia = idx % nA;
    const double r =
        delta / 100.0 + (delta - delta / 100.0) * double(ir) / double(nR - 1);
    return jacobian_gap(sys, std::polar(r, kTwoPi * double(ia) / double(nA)));
  });

  report.stepIPass =
      report.productResidual <= 1e-9 && report.jacobianMin > 0.0;
  if (!report.stepIPass) {
    report.haltedAt = "step-one";
    return report;
  }

  // Step II: sector condition for F_0 plus the density fit.
  const ComplexFn f0 = [&](Complex z) { return sys.f0(z); };
  report.scan = sector_scan(f0, Disc(Complex(0.0, 0.0), delta), options.scan,
                            {Complex(0.0, 0.0)});
  report.density = approx_report(
      f0, [](Complex z) { return std::conj(z); }, options.densitySchedule,
      polar_grid(delta, options.densityRadii, options.densityAngles),
      options.lawson);

  report.densityDecreasing = true;
  for (std::size_t i = 1; i < report.density.steps.size(); ++i)
    if (report.density.steps[i].supError >
        report.density.steps[i - 1].supError + 1e-9)
      report.densityDecreasing = false;
  if (report.density.steps.back().supError >=
      report.density.steps.front().supError - 1e-6)
    report.densityDecreasing = false;

  report.stepIIPass = report.scan.pass && report.densityDecreasing;
  if (!report.stepIIPass) {
    report.haltedAt = "step-two";
    return report;
  }

  // Step III: wedge geometry, working radius, symmetrization round trip.
  report.kallin =
      kallin_report(sys, report.cert, options.cOverride, options.epsilonSearch);

  Poly2 g;
  for (std::size_t q = 0; q < report.density.finalBasis.size(); ++q)
    g.add_term(report.density.finalBasis[q].a, report.density.finalBasis[q].b,
               report.density.finalCoeffs[q]);
  report.symmetrizeResidual =
      symmetrize_residual(g, sys.delta(), 1000, options.productSeed ^ 0x9e37u);

  bool marginsPositive = report.kallin.epsilonFound;
  for (const SheetMargins& m : report.kallin.margins)
    if (!(m.re > 0.0) || !(m.im > 0.0)) marginsPositive = false;
  report.stepIIIPass = report.kallin.epsilonFound && marginsPositive &&
                       report.kallin.wedgeDisjoint &&
                       report.symmetrizeResidual <= 1e-12;
  if (!report.stepIIIPass) {
    report.haltedAt = "step-three";
    return report;
  }

  report.pass = true;
  return report;
}

}  // namespace crsing
