#pragma once

#include <map>
#include <utility>

#include "crsing/complex_geometry.hpp"

namespace crsing {

/// Polynomial in z and zbar: sum of c_{a,b} z^a zbar^b. Exact zero
/// coefficients are never stored, and the term map iterates in a fixed
/// (a, b)-lexicographic order.
class BihomPoly {
 public:
  using Key = std::pair<int, int>;  // (a, b) exponents, both >= 0

  BihomPoly() = default;
  static BihomPoly monomial(int a, int b, Complex c);

  /// Accumulate c * z^a zbar^b into the polynomial.
  void add_term(int a, int b, Complex c);

  const std::map<Key, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Smallest a+b over stored terms; 0 for the zero polynomial.
  int min_total_degree() const;
  int max_total_degree() const;

  Complex eval(Complex z) const;

  BihomPoly dz() const;     // term-by-term: a z^{a-1} zbar^b
  BihomPoly dzbar() const;  // term-by-term: b z^a zbar^{b-1}

  BihomPoly& operator+=(const BihomPoly& rhs);
  friend BihomPoly operator+(BihomPoly lhs, const BihomPoly& rhs) {
    lhs += rhs;
    return lhs;
  }
  BihomPoly operator*(const BihomPoly& rhs) const;
  BihomPoly operator*(Complex s) const;

 private:
  std::map<Key, Complex> terms_;
};

/// Ratio of two bihomogeneous polynomials with closed-form Wirtinger
/// derivatives through the quotient rule. The denominator must not vanish
/// at evaluation points.
struct BihomRatio {
  BihomPoly num;
  BihomPoly den;

  Complex eval(Complex z) const { return num.eval(z) / den.eval(z); }
  BihomRatio dz() const;
  BihomRatio dzbar() const;

  /// |d/dz| + |d/dzbar| at z, all in closed form.
  double grad_norm(Complex z) const;
};

}  // namespace crsing
