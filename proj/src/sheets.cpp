#include "crsing/sheets.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "crsing/parallel.hpp"

namespace crsing {

namespace {

Complex ipow(Complex z, int e) {
  Complex acc(1.0, 0.0);
  for (int i = 0; i < e; ++i) acc *= z;
  return acc;
}

double unit_double(std::mt19937& gen) {
  // Portable across standard libraries, unlike the distribution classes.
  return gen() * (1.0 / 4294967296.0);
}

}  // namespace

double delta_radius(const CRSurface& surface, int M,
                    const DeltaRadiusOptions& options) {
  const CRSurface s = normalize(surface);
  if (M < 1 || M > s.k() || 2 * M <= s.k() ||
      s.coeff(M) == Complex(0.0, 0.0))
    throw std::invalid_argument("delta_radius: M is not in the index set I(S)");
  const Complex cM = s.coeff(M);
  const int k = s.k();

  const auto max_u = [&](double r) {
    const std::size_t nA = static_cast<std::size_t>(options.angleSamples);
    const std::size_t nR = static_cast<std::size_t>(options.radiusSamples);
    return par::max_map(nA * nR, [&](std::size_t idx) {
      const std::size_t ia = idx / nR, ir = idx % nR;
      const double rad = r * double(ir + 1) / double(nR);
      const Complex z = std::polar(rad, kTwoPi * double(ia) / double(nA));
      const Complex den = cM * ipow(z, k - M) * ipow(std::conj(z), M);
      return std::abs(s.value(z) / den - 1.0);
    });
  };

  const double bound = 1.0 - options.margin;
  double smallest_seen = max_u(s.radius());
  if (smallest_seen <= bound) return s.radius();

  double lo = 0.0, hi = s.radius();
  for (int it = 0; it < options.bisectIters; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m = max_u(mid);
    smallest_seen = std::min(smallest_seen, m);
    if (m <= bound)
      lo = mid;
    else
      hi = mid;
  }
  if (lo == 0.0) {
    std::ostringstream msg;
    msg << "delta_radius: no sampled radius satisfies |u| <= " << bound
        << " (smallest sampled max |u| = " << smallest_seen << ")";
    throw std::runtime_error(msg.str());
  }
  return lo;
}

SheetSystem::SheetSystem(const CRSurface& normalizedSurface, int M,
                         double validityRadius)
    : base_(normalize(normalizedSurface)),
      M_(M),
      delta_(2 * M - normalizedSurface.k()),
      validityRadius_(validityRadius) {
  if (delta_ < 1)
    throw std::invalid_argument("SheetSystem: 2M - k must be positive");
  cM_ = base_.coeff(M_);
  if (cM_ == Complex(0.0, 0.0))
    throw std::invalid_argument("SheetSystem: C_M vanishes");
  if (!(validityRadius_ > 0.0) || validityRadius_ > base_.radius())
    throw std::invalid_argument(
        "SheetSystem: validity radius must lie in (0, surface radius]");
  cStar_ = std::polar(std::pow(std::abs(cM_), 1.0 / delta_),
                      std::arg(cM_) / delta_);
  omegas_.reserve(static_cast<std::size_t>(delta_));
  for (int j = 0; j < delta_; ++j)
    omegas_.push_back(std::polar(1.0, kTwoPi * j / delta_));
}

Complex SheetSystem::frak(Complex z) const { return base_.value(z); }

Complex SheetSystem::u(Complex z) const {
  if (z == Complex(0.0, 0.0))
    throw std::invalid_argument("SheetSystem::u: undefined at z = 0");
  const Complex den = cM_ * ipow(z, base_.k() - M_) * ipow(std::conj(z), M_);
  return frak(z) / den - 1.0;
}

Complex SheetSystem::f0_unchecked(Complex z) const {
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  const double kd = double(base_.k()) / double(delta_);
  const Complex root0 = std::polar(std::pow(std::abs(z), kd), -std::arg(z));
  return root0 * std::pow(1.0 + u(z), 1.0 / delta_);
}

Complex SheetSystem::f0(Complex z) const {
  if (std::abs(z) > validityRadius_ * (1.0 + 1e-12))
    throw std::domain_error("SheetSystem: point outside the validity radius");
  return f0_unchecked(z);
}

Complex SheetSystem::sheet(int j, Complex z) const {
  if (j < 1 || j > delta_)
    throw std::invalid_argument("SheetSystem::sheet: j must lie in 1..delta");
  const Complex f1 = cStar_ * f0(z);
  return omegas_[static_cast<std::size_t>(j - 1)] * f1;
}

SheetSystem build_sheets(const CRSurface& s, const Certificate& cert,
                         const DeltaRadiusOptions& options) {
  if (!cert.pass)
    throw std::invalid_argument("build_sheets: certificate did not pass");
  return build_sheets_at(s, cert.M, options);
}

SheetSystem build_sheets_at(const CRSurface& s, int M,
                            const DeltaRadiusOptions& options) {
  return SheetSystem(normalize(s), M, delta_radius(s, M, options));
}

double verify_product(const SheetSystem& sys, const std::vector<Complex>& zs,
                      const std::vector<Complex>& ws) {
  if (zs.size() != ws.size())
    throw std::invalid_argument("verify_product: sample lists differ in size");
  return par::max_map(zs.size(), [&](std::size_t i) {
    const Complex z = zs[i], w = ws[i];
    Complex prod(1.0, 0.0);
    const Complex f1 = sys.c_star() * sys.f0(z);
    for (int j = 0; j < sys.delta(); ++j)
      prod *= w - sys.omegas()[static_cast<std::size_t>(j)] * f1;
    const Complex rhs = ipow(w, sys.delta()) - sys.frak(z);
    const double scale =
        std::max(1.0, std::abs(ipow(w, sys.delta())) + std::abs(sys.frak(z)));
    return std::abs(prod - rhs) / scale;
  });
}

void sample_pairs(const SheetSystem& sys, std::size_t count, std::uint32_t seed,
                  std::vector<Complex>& zs, std::vector<Complex>& ws) {
  std::mt19937 gen(seed);
  zs.resize(count);
  ws.resize(count);
  const double zr = sys.validity_radius();
  const double wr =
      1.0 + std::abs(sys.c_star()) *
                std::pow(zr, double(sys.base().k()) / sys.delta()) * 2.0;
  for (std::size_t i = 0; i < count; ++i) {
    zs[i] = std::polar(zr * std::sqrt(unit_double(gen)),
                       kTwoPi * unit_double(gen));
    ws[i] = std::polar(wr * std::sqrt(unit_double(gen)),
                       kTwoPi * unit_double(gen));
  }
}

double jacobian_gap(const SheetSystem& sys, Complex z) {
  if (z == Complex(0.0, 0.0))
    throw std::invalid_argument(
        "jacobian_gap: F_0 may not be differentiable at z = 0");
  if (std::abs(z) > sys.validity_radius() * (1.0 + 1e-12))
    throw std::domain_error("jacobian_gap: point outside the validity radius");
  const double h = std::min(1e-5 * std::max(1.0, std::abs(z)),
                            0.05 * std::abs(z));
  const Wirtinger d = wirtinger_fd(
      [&](Complex p) { return sys.f0_unchecked(p); }, z, h);
  return std::abs(d.dzbar) - std::abs(d.dz);
}

Wirtinger f0_wirtinger_closed(const SheetSystem& sys, Complex z) {
  if (!sys.base().residual().empty())
    throw std::logic_error(
        "f0_wirtinger_closed: closed form requires G = 0");
  if (z == Complex(0.0, 0.0))
    throw std::invalid_argument("f0_wirtinger_closed: undefined at z = 0");

  const BihomRatio tau = tau_ratio(sys.base(), sys.M());
  const Complex t = tau.eval(z);
  const Complex tz = tau.dz().eval(z);
  const Complex tzb = tau.dzbar().eval(z);

  const double kd = double(sys.base().k()) / sys.delta();
  const double r = std::abs(z);
  const double theta = std::arg(z);
  const Complex root0 = std::polar(std::pow(r, kd), -theta);
  const Complex root0_z =
      0.5 * (kd - 1.0) * std::pow(r, kd - 1.0) * std::polar(1.0, -2.0 * theta);
  const Complex root0_zb = Complex(0.5 * (kd + 1.0) * std::pow(r, kd - 1.0), 0.0);

  const double inv = 1.0 / sys.delta();
  const Complex g = std::pow(1.0 + t, inv);
  const Complex gpre = inv * std::pow(1.0 + t, inv - 1.0);

  Wirtinger d;
  d.dz = root0_z * g + root0 * gpre * tz;
  d.dzbar = root0_zb * g + root0 * gpre * tzb;
  return d;
}

std::vector<double> root_series_coefficients(int delta, int count) {
  if (delta < 1 || count < 1)
    throw std::invalid_argument("root_series_coefficients: bad arguments");
  std::vector<double> alpha(static_cast<std::size_t>(count));
  const double p = 1.0 / delta;
  double prev = 1.0;  // alpha_0
  for (int nu = 1; nu <= count; ++nu) {
    prev *= (p - double(nu - 1)) / double(nu);
    alpha[static_cast<std::size_t>(nu - 1)] = prev;
  }
  return alpha;
}

double series_tail_bound(double A, int N) {
  if (!(A >= 0.0) || !(A < 1.0) || N < 0)
    throw std::invalid_argument("series_tail_bound: need 0 <= A < 1, N >= 0");
  return std::pow(A, N + 1) / (1.0 - A);
}

}  // namespace crsing
