#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crsing/approx.hpp"
#include "crsing/kallin.hpp"
#include "crsing/sheets.hpp"
#include "crsing/surface.hpp"

namespace crsing {

struct PipelineOptions {
  int gridN = 4096;  // circle grid for the certificate
  CertifyOptions certify;
  DeltaRadiusOptions deltaRadius;
  // Step I
  std::size_t productSamples = 1000;
  std::uint32_t productSeed = 0x5eedu;
  int jacobianRadii = 32;
  int jacobianAngles = 128;
  // Step II
  ScanOptions scan{48, 192, 4, 0.05, 1e-12, 1e-9, 1.05};
  std::vector<std::pair<int, int>> densitySchedule{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  int densityRadii = 32;
  int densityAngles = 128;
  LawsonOptions lawson;
  // Step III
  double cOverride = -1.0;
  EpsilonSearchOptions epsilonSearch;
};

/// Combined verification run: certificate, then the covering-sheet identities
/// and Jacobian sweep, then the sector scan of F_0 with a density fit, then
/// the wedge geometry with the working-radius search and the symmetrization
/// round trip. Halts at the first failing step.
struct PipelineReport {
  Certificate cert;
  bool certified = false;

  bool haveSheets = false;
  int delta = 0;
  Complex cStar{0.0, 0.0};
  std::vector<Complex> omegas;
  double validityRadius = 0.0;
  double productResidual = 0.0;
  double jacobianMin = 0.0;
  bool stepIPass = false;

  ScanReport scan;
  ApproxReport density;
  bool densityDecreasing = false;
  bool stepIIPass = false;

  KallinReport kallin;
  double symmetrizeResidual = 0.0;
  bool stepIIIPass = false;

  bool pass = false;
  std::string haltedAt;  // empty when every step ran
};

PipelineReport run_pipeline(const CRSurface& s,
                            const PipelineOptions& options = {});

}  // namespace crsing
