#include "crsing/kallin.hpp"

#include <cmath>
#include <stdexcept>

#include "crsing/parallel.hpp"

namespace crsing {

double choose_c(double A, int delta) {
  const double rhs = size_rhs(delta);
  if (!(A < rhs))
    throw std::invalid_argument(
        "choose_c: A must lie strictly below tan(pi/delta)/(1+tan(pi/delta))");
  return 0.5 * (A + rhs);
}

Complex p_eval(const SheetSystem& sys, Complex z, Complex w) {
  return z * w / sys.c_star();
}

std::vector<SheetMargins> containment_margins(const SheetSystem& sys, double C,
                                              double eps, int nRadii,
                                              int nAngles) {
  if (!(eps > 0.0) || eps > sys.validity_radius() * (1.0 + 1e-12))
    throw std::invalid_argument(
        "containment_margins: eps must lie in (0, validity radius]");

  const double power = double(sys.base().k()) / sys.delta() + 1.0;
  const std::size_t nR = static_cast<std::size_t>(nRadii);
  const std::size_t nA = static_cast<std::size_t>(nAngles);

  std::vector<SheetMargins> out(static_cast<std::size_t>(sys.delta()));
  for (int j = 1; j <= sys.delta(); ++j) {
    const Complex rot = std::conj(sys.omegas()[static_cast<std::size_t>(j - 1)]);
    const auto margins_at = [&](std::size_t idx) {
      const std::size_t ir = idx / nA, ia = idx % nA;
      const double r = eps * double(ir + 1) / double(nR);
      const Complex z = std::polar(r, kTwoPi * double(ia) / double(nA));
      const Complex p = rot * p_eval(sys, z, sys.sheet(j, z));
      const double scale = std::pow(r, power);
      return std::make_pair((p.real() - (1.0 - C) * scale) / scale,
                            (C * scale - std::abs(p.imag())) / scale);
    };
    out[static_cast<std::size_t>(j - 1)].re = par::min_map(
        nR * nA, [&](std::size_t idx) { return margins_at(idx).first; });
    out[static_cast<std::size_t>(j - 1)].im = par::min_map(
        nR * nA, [&](std::size_t idx) { return margins_at(idx).second; });
  }
  return out;
}

void Poly2::add_term(int zPow, int wPow, Complex c) {
  if (zPow < 0 || wPow < 0)
    throw std::invalid_argument("Poly2: negative exponent");
  if (c == Complex(0.0, 0.0)) return;
  const auto key = std::make_pair(zPow, wPow);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0, 0.0)) terms.erase(it);
}

Complex Poly2::eval(Complex z, Complex w) const {
  Complex acc(0.0, 0.0);
  for (const auto& [key, c] : terms) {
    Complex term = c;
    for (int i = 0; i < key.first; ++i) term *= z;
    for (int i = 0; i < key.second; ++i) term *= w;
    acc += term;
  }
  return acc;
}

Poly2 symmetrize(const Poly2& g, int delta) {
  if (delta < 1) throw std::invalid_argument("symmetrize: delta must be >= 1");
  Poly2 out;
  for (const auto& [key, c] : g.terms)
    if (key.second % delta == 0) out.add_term(key.first, key.second / delta, c);
  return out;
}

namespace {

struct CheckResult {
  bool ok = true;
  std::string failed;
};

CheckResult run_checks(const SheetSystem& sys, double C, double eps,
                       const EpsilonSearchOptions& options) {
  for (const SheetMargins& m : containment_margins(
           sys, C, eps, options.marginRadii, options.marginAngles))
    if (!(m.re > 0.0) || !(m.im > 0.0)) return {false, "containment"};

  // A candidate radius is accepted only when the Jacobian gap holds out to
  // twice that radius.
  const double rj = std::min(2.0 * eps, sys.validity_radius());
  const std::size_t nR = static_cast<std::size_t>(options.jacobianRadii);
  const std::size_t nA = static_cast<std::size_t>(options.jacobianAngles);
  const double minGap = par::min_map(nR * nA, [&](std::size_t idx) {
    const std::size_t ir = idx / nA, ia = idx % nA;
    const double r = rj / 100.0 + (rj - rj / 100.0) * double(ir) / double(nR - 1);
    return jacobian_gap(sys, std::polar(r, kTwoPi * double(ia) / double(nA)));
  });
  if (!(minGap > 0.0)) return {false, "jacobian"};

  const ScanReport scan =
      sector_scan([&](Complex z) { return sys.f0(z); },
                  Disc(Complex(0.0, 0.0), eps), options.scan,
                  {Complex(0.0, 0.0)});
  if (!scan.pass) return {false, "sector-scan"};
  return {true, ""};
}

}  // namespace

EpsilonSearch epsilon_search(const SheetSystem& sys, const Certificate& cert,
                             double C, const EpsilonSearchOptions& options) {
  if (!cert.pass)
    throw std::invalid_argument("epsilon_search: certificate did not pass");
  if (!(cert.A < C) || !(C < size_rhs(sys.delta())))
    throw std::invalid_argument(
        "epsilon_search: C must lie strictly between A and the size bound");

  EpsilonSearch result;
  const double delta = sys.validity_radius();

  CheckResult top = run_checks(sys, C, delta, options);
  if (top.ok) {
    result.found = true;
    result.epsilon = delta;
    return result;
  }

  double lo = 0.0, hi = delta;
  std::string lastFailure = top.failed;
  for (int it = 0; it < options.bisectIters; ++it) {
    const double mid = 0.5 * (lo + hi);
    const CheckResult r = run_checks(sys, C, mid, options);
    if (r.ok) {
      lo = mid;
    } else {
      hi = mid;
      lastFailure = r.failed;
    }
  }
  if (lo > 0.0) {
    result.found = true;
    result.epsilon = lo;
  } else {
    result.failedCheck = lastFailure;
  }
  return result;
}

KallinReport kallin_report(const SheetSystem& sys, const Certificate& cert,
                           double cOverride,
                           const EpsilonSearchOptions& options) {
  KallinReport report;
  report.C = (cOverride > 0.0) ? cOverride : choose_c(cert.A, sys.delta());
  report.vertexAngle = 2.0 * std::atan(report.C / (1.0 - report.C));
  report.wedgeDisjoint = report.vertexAngle < kTwoPi / sys.delta();

  const EpsilonSearch search = epsilon_search(sys, cert, report.C, options);
  report.epsilonFound = search.found;
  report.failedCheck = search.failedCheck;
  if (search.found) {
    report.epsilon = search.epsilon;
    report.margins = containment_margins(sys, report.C, report.epsilon);
  }
  return report;
}

}  // namespace crsing
