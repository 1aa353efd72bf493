#include "crsing/complex_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crsing {

double principal_angle(double theta) {
  double t = std::remainder(theta, kTwoPi);  // (-pi, pi] up to the -pi edge
  if (t <= -kPi) t += kTwoPi;
  return t;
}

double positive_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

Disc::Disc(Complex c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw std::invalid_argument("Disc: radius must be positive");
}

bool Disc::contains(Complex z) const { return std::abs(z - center) <= radius; }

Sector::Sector(Complex v, double lo, double hi)
    : vertex(v), theta_lo(lo), theta_hi(hi) {
  const double len = hi - lo;
  if (!(len > 0.0) || !(len < kTwoPi))
    throw std::invalid_argument("Sector: angular length must lie in (0, 2*pi)");
}

bool sector_contains(const Sector& s, Complex w) {
  const Complex d = w - s.vertex;
  if (d == Complex(0.0, 0.0)) return false;  // open sector excludes the vertex
  const double t = positive_angle(std::arg(d) - s.theta_lo);
  return t > 0.0 && t < s.length();
}

CircleGrid::CircleGrid(int n) : n_(n) {
  if (n < 8) throw std::invalid_argument("CircleGrid: need at least 8 samples");
  points_.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m)
    points_.push_back(std::polar(1.0, kTwoPi * m / n));
}

double circular_spread(const std::vector<Complex>& values) {
  if (values.empty())
    throw std::invalid_argument("circular_spread: empty value set");
  std::vector<double> args;
  args.reserve(values.size());
  for (const Complex& v : values) {
    if (v == Complex(0.0, 0.0))
      throw std::invalid_argument("circular_spread: zero value has no argument");
    args.push_back(positive_angle(std::arg(v)));
  }
  std::sort(args.begin(), args.end());
  double max_gap = kTwoPi - args.back() + args.front();  // wrap-around gap
  for (std::size_t i = 1; i < args.size(); ++i)
    max_gap = std::max(max_gap, args[i] - args[i - 1]);
  return kTwoPi - max_gap;
}

SectorFit minimal_enclosing_sector(const std::vector<Complex>& values,
                                   double pad_factor) {
  if (values.empty())
    throw std::invalid_argument("minimal_enclosing_sector: empty value set");
  std::vector<double> args;
  args.reserve(values.size());
  for (const Complex& v : values) {
    if (v == Complex(0.0, 0.0))
      throw std::invalid_argument(
          "minimal_enclosing_sector: zero value (point of the fiber?)");
    args.push_back(positive_angle(std::arg(v)));
  }
  std::sort(args.begin(), args.end());

  // The occupied arc is the complement of the largest gap.
  double max_gap = kTwoPi - args.back() + args.front();
  std::size_t gap_after = args.size() - 1;  // gap between args[i] and args[i+1]
  for (std::size_t i = 1; i < args.size(); ++i) {
    const double g = args[i] - args[i - 1];
    if (g > max_gap) {
      max_gap = g;
      gap_after = i - 1;
    }
  }
  const double spread = kTwoPi - max_gap;

  SectorFit fit;
  fit.spread = spread;
  const double length = std::max(spread * pad_factor, 1e-9);
  if (length >= kTwoPi) return fit;  // no admissible open sector

  const double arc_start =
      (gap_after + 1 == args.size()) ? args.front() : args[gap_after + 1];
  const double mid = arc_start + 0.5 * spread;
  fit.sector.emplace(Complex(0.0, 0.0), mid - 0.5 * length, mid + 0.5 * length);
  return fit;
}

Wirtinger wirtinger_fd(const std::function<Complex(Complex)>& phi, Complex z,
                       double h) {
  if (!(h > 0.0)) throw std::invalid_argument("wirtinger_fd: step must be > 0");
  const Complex fx =
      (phi(z + Complex(h, 0.0)) - phi(z - Complex(h, 0.0))) / (2.0 * h);
  const Complex fy =
      (phi(z + Complex(0.0, h)) - phi(z - Complex(0.0, h))) / (2.0 * h);
  Wirtinger d;
  d.dz = 0.5 * (fx - Complex(0.0, 1.0) * fy);
  d.dzbar = 0.5 * (fx + Complex(0.0, 1.0) * fy);
  return d;
}

Wirtinger wirtinger_fd(const std::function<Complex(Complex)>& phi, Complex z) {
  return wirtinger_fd(phi, z, 1e-5 * std::max(1.0, std::abs(z)));
}

}  // namespace crsing
