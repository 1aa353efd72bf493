#include "crsing/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crsing/parallel.hpp"

namespace crsing {

CRSurface::CRSurface(int k, std::vector<Complex> coeffs, BihomPoly residual,
                     double radius)
    : k_(k),
      coeffs_(std::move(coeffs)),
      residual_(std::move(residual)),
      radius_(radius) {
  if (k_ <= 2) throw std::invalid_argument("CRSurface: requires k > 2");
  if (coeffs_.size() != static_cast<std::size_t>(k_) + 1)
    throw std::invalid_argument("CRSurface: need exactly k+1 coefficients");
  if (!(radius_ > 0.0))
    throw std::invalid_argument("CRSurface: radius must be positive");
  if (!residual_.empty() && residual_.min_total_degree() <= k_)
    throw std::invalid_argument(
        "CRSurface: residual terms must have total degree >= k+1");
}

Complex CRSurface::sigma(Complex z) const {
  const Complex zb = std::conj(z);
  // Horner-style walk over j = k..1 in z, zbar powers.
  Complex acc(0.0, 0.0);
  Complex zpow(1.0, 0.0);
  std::vector<Complex> zbpow(static_cast<std::size_t>(k_) + 1);
  zbpow[0] = Complex(1.0, 0.0);
  for (int j = 1; j <= k_; ++j) zbpow[j] = zbpow[j - 1] * zb;
  for (int j = k_; j >= 1; --j) {
    acc += coeffs_[static_cast<std::size_t>(j)] * zpow * zbpow[j];
    zpow *= z;
  }
  return acc;
}

Complex CRSurface::value(Complex z) const {
  Complex zk(1.0, 0.0);
  for (int i = 0; i < k_; ++i) zk *= z;
  return coeffs_[0] * zk + sigma(z) + residual_.eval(z);
}

CRSurface normalize(const CRSurface& s) {
  std::vector<Complex> c = s.coeffs();
  c[0] = Complex(0.0, 0.0);
  return CRSurface(s.k(), std::move(c), s.residual(), s.radius());
}

std::vector<int> index_set(const CRSurface& s) {
  std::vector<int> out;
  for (int j = 1; j <= s.k(); ++j)
    if (2 * j > s.k() && s.coeff(j) != Complex(0.0, 0.0)) out.push_back(j);
  return out;
}

namespace {

bool in_index_set(const CRSurface& s, int M) {
  return M >= 1 && M <= s.k() && 2 * M > s.k() &&
         s.coeff(M) != Complex(0.0, 0.0);
}

}  // namespace

BihomRatio tau_ratio(const CRSurface& s, int M) {
  if (!in_index_set(s, M))
    throw std::invalid_argument("tau_ratio: M is not in the index set I(S)");
  BihomPoly num;
  for (int j = 1; j <= s.k(); ++j)
    if (j != M) num.add_term(s.k() - j, j, s.coeff(j));
  return {num, BihomPoly::monomial(s.k() - M, M, s.coeff(M))};
}

Complex tau_eval(const CRSurface& s, int M, Complex z) {
  if (z == Complex(0.0, 0.0))
    throw std::invalid_argument("tau_eval: undefined at z = 0");
  return tau_ratio(s, M).eval(z);
}

namespace {

struct TauDerivs {
  BihomRatio tau, tz, tzb;
  BihomRatio tzz, tzzb, tzbz, tzbzb;  // Wirtinger derivatives of tz, tzb

  explicit TauDerivs(const BihomRatio& t) : tau(t) {
    tz = tau.dz();
    tzb = tau.dzbar();
    tzz = tz.dz();
    tzzb = tz.dzbar();
    tzbz = tzb.dz();
    tzbzb = tzb.dzbar();
  }

  double grad(Complex z) const {
    return std::abs(tz.eval(z)) + std::abs(tzb.eval(z));
  }
  // Bound on the tangential derivative of the gradient norm along |z| = 1.
  double grad2(Complex z) const {
    return std::abs(tzz.eval(z)) + std::abs(tzzb.eval(z)) +
           std::abs(tzbz.eval(z)) + std::abs(tzbzb.eval(z));
  }
};

double sup_with_lipschitz(const CircleGrid& grid,
                          const std::function<double(Complex)>& f,
                          const std::function<double(Complex)>& fGradBound) {
  const auto& pts = grid.points();
  const double base =
      par::max_map(pts.size(), [&](std::size_t i) { return f(pts[i]); });
  const double lip = par::max_map(
      pts.size(), [&](std::size_t i) { return fGradBound(pts[i]); });
  return base + lip * (kPi / grid.n());
}

}  // namespace

double tau_sup(const CRSurface& s, int M, const CircleGrid& grid) {
  const TauDerivs d{tau_ratio(s, M)};
  return sup_with_lipschitz(
      grid, [&](Complex z) { return std::abs(d.tau.eval(z)); },
      [&](Complex z) { return d.grad(z); });
}

double grad_tau_sup(const CRSurface& s, int M, const CircleGrid& grid) {
  const TauDerivs d{tau_ratio(s, M)};
  return sup_with_lipschitz(grid, [&](Complex z) { return d.grad(z); },
                            [&](Complex z) { return d.grad2(z); });
}

double size_rhs(int delta) {
  if (delta <= 0) throw std::invalid_argument("size_rhs: delta must be >= 1");
  if (delta == 1) return 0.0;
  if (delta == 2) return 1.0;
  const double x = kPi / delta;
  return std::sin(x) / (std::sin(x) + std::cos(x));
}

TauProfile tau_profile(const CRSurface& s, int M, const CircleGrid& grid) {
  TauProfile p;
  p.M = M;
  const BihomRatio tau = tau_ratio(s, M);
  p.values.resize(grid.points().size());
  par::for_each_index(p.values.size(), [&](std::size_t i) {
    p.values[i] = tau.eval(grid.points()[i]);
  });
  p.A = tau_sup(s, M, grid);
  p.gradSup = grad_tau_sup(s, M, grid);
  return p;
}

Certificate certify(const CRSurface& s, const CircleGrid& grid,
                    const CertifyOptions& options) {
  Certificate cert;
  const std::vector<int> idx = index_set(s);
  if (idx.empty()) {
    cert.reason = "empty index set";
    return cert;
  }

  for (int M : idx) {
    MCandidate c;
    c.M = M;
    c.delta = 2 * M - s.k();
    c.A = tau_sup(s, M, grid);
    c.gradSup = grad_tau_sup(s, M, grid);
    c.sizeRhs = size_rhs(c.delta);
    c.vacuousBound = (c.delta == 1);
    c.boundary = (c.A == c.sizeRhs);
    c.sizeOk = c.A < c.sizeRhs;
    c.derivLhs = (c.A < 1.0)
                     ? s.k() * c.A + c.gradSup / (1.0 - c.A)
                     : std::numeric_limits<double>::infinity();
    c.derivOk = c.derivLhs < double(c.delta);
    c.B = c.derivLhs / double(c.delta);
    c.sizeMargin = c.sizeRhs - c.A;
    c.derivMarginRel = (double(c.delta) - c.derivLhs) / double(c.delta);
    cert.perM.push_back(c);
  }

  const MCandidate* selected = nullptr;
  if (options.forceM >= 0) {
    for (const MCandidate& c : cert.perM)
      if (c.M == options.forceM) selected = &c;
    if (!selected)
      throw std::invalid_argument("certify: forced M is not in the index set");
  } else {
    for (const MCandidate& c : cert.perM) {
      if (!c.pass()) continue;
      if (!selected || c.derivMarginRel > selected->derivMarginRel)
        selected = &c;
    }
    if (!selected) {
      // Report the least-bad candidate for diagnostics.
      for (const MCandidate& c : cert.perM)
        if (!selected || c.derivMarginRel > selected->derivMarginRel)
          selected = &c;
    }
  }

  cert.M = selected->M;
  cert.delta = selected->delta;
  cert.A = selected->A;
  cert.B = selected->B;
  cert.gradSup = selected->gradSup;
  cert.sizeRhs = selected->sizeRhs;
  cert.derivLhs = selected->derivLhs;
  cert.sizeOk = selected->sizeOk;
  cert.derivOk = selected->derivOk;
  cert.sizeMargin = selected->sizeMargin;
  cert.derivMarginRel = selected->derivMarginRel;
  cert.cRange = {selected->A, selected->sizeRhs};
  cert.pass = selected->pass();
  if (!cert.pass)
    cert.reason = "no candidate satisfies the size and derivative conditions";
  return cert;
}

}  // namespace crsing
