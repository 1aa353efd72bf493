#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace crsing {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduce an angle to the principal range (-pi, pi].
double principal_angle(double theta);

/// Reduce an angle to [0, 2*pi).
double positive_angle(double theta);

/// Closed disc |z - center| <= radius, radius > 0.
struct Disc {
  Complex center{0.0, 0.0};
  double radius = 1.0;

  Disc(Complex c, double r);
  bool contains(Complex z) const;
};

/// Open sector with vertex `vertex` spanning the angular interval
/// (theta_lo, theta_hi). The bounds are stored un-normalized so the
/// interval may straddle the principal cut; only the angular length,
/// which must lie strictly in (0, 2*pi), matters for membership.
struct Sector {
  Complex vertex{0.0, 0.0};
  double theta_lo = 0.0;
  double theta_hi = 0.0;

  Sector(Complex v, double lo, double hi);
  double length() const { return theta_hi - theta_lo; }
  double bisector() const { return 0.5 * (theta_lo + theta_hi); }
};

/// True iff w != vertex and arg(w - vertex) falls inside the open interval
/// (theta_lo, theta_hi) modulo 2*pi.
bool sector_contains(const Sector& s, Complex w);

/// n equispaced unit-circle samples e^{2 pi i m / n}, m = 0..n-1; n >= 8.
class CircleGrid {
 public:
  explicit CircleGrid(int n);
  int n() const { return n_; }
  const std::vector<Complex>& points() const { return points_; }

 private:
  int n_;
  std::vector<Complex> points_;
};

/// Circular spread of a set of nonzero values: 2*pi minus the largest
/// angular gap between consecutive arguments. Throws std::invalid_argument
/// on empty input or any zero value.
double circular_spread(const std::vector<Complex>& values);

struct SectorFit {
  std::optional<Sector> sector;  // vertex 0; nullopt when no admissible sector
  double spread = 0.0;           // exact circular spread of the inputs
};

/// Smallest-angle open sector at vertex 0 containing every value, with the
/// angular length padded by `pad_factor` so containment is strict. Returns
/// no sector when the padded length would reach 2*pi.
SectorFit minimal_enclosing_sector(const std::vector<Complex>& values,
                                   double pad_factor = 1.05);

struct Wirtinger {
  Complex dz{0.0, 0.0};
  Complex dzbar{0.0, 0.0};
};

/// Central finite-difference Wirtinger derivatives:
///   d/dz    = (phi_x - i phi_y)/2,   d/dzbar = (phi_x + i phi_y)/2,
/// second-order accurate in the step h.
Wirtinger wirtinger_fd(const std::function<Complex(Complex)>& phi, Complex z,
                       double h);

/// Same with the default step 1e-5 * max(1, |z|).
Wirtinger wirtinger_fd(const std::function<Complex(Complex)>& phi, Complex z);

}  // namespace crsing
