#pragma once

#include <string>
#include <vector>

#include "crsing/lawson.hpp"
#include "crsing/surface.hpp"

namespace crsing {

struct Point2 {
  Complex z{0.0, 0.0};
  Complex w{0.0, 0.0};
};

enum class HullVerdict { Outside, Unresolved };

/// Degree-graded separation record for one probe point: m_d is the smallest
/// sampled sup of |P| over polynomials of total degree <= d normalized by
/// P(probe) = 1. Always m_d <= 1 (P == 1 is feasible); m_d < 1 - tol
/// certifies the probe outside the hull of the samples. A finite probe can
/// never certify membership, so the other verdict is Unresolved.
struct HullProbeResult {
  Point2 probe;
  std::vector<int> degrees;
  std::vector<double> mValues;
  HullVerdict verdict = HullVerdict::Unresolved;
  bool allConverged = true;
};

struct HullOptions {
  double outsideTol = 1e-3;
  LawsonOptions lawson;
};

HullProbeResult hull_probe(const std::vector<Point2>& samples, Point2 probe,
                           int dMax, const HullOptions& options = {});

struct ConvexityScanOptions {
  int nRadii = 48;
  int nAngles = 192;
  int probeRings = 4;   // probe base points: ring of this many angles + center
  int dMax = 8;
  double offsetScale = 0.5;  // tube height relative to the graph's sup
  HullOptions hull;
};

struct ConvexityScan {
  std::vector<HullProbeResult> probes;
  std::size_t outsideCount = 0;
  std::size_t unresolvedCount = 0;
};

/// Samples the graph of Sigma + G over the eps-disc and probes lattice points
/// in a tube around the graph but off it, one hull_probe per lattice point.
ConvexityScan convexity_scan(const CRSurface& s, double eps,
                             const ConvexityScanOptions& options = {});

}  // namespace crsing
