#include "crsing/bihom.hpp"

#include <cmath>
#include <stdexcept>

namespace crsing {

namespace {

Complex ipow(Complex z, int e) {
  Complex acc(1.0, 0.0);
  for (int i = 0; i < e; ++i) acc *= z;
  return acc;
}

}  // namespace

BihomPoly BihomPoly::monomial(int a, int b, Complex c) {
  BihomPoly p;
  p.add_term(a, b, c);
  return p;
}

void BihomPoly::add_term(int a, int b, Complex c) {
  if (a < 0 || b < 0)
    throw std::invalid_argument("BihomPoly: negative exponent");
  if (c == Complex(0.0, 0.0)) return;
  const Key key{a, b};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

int BihomPoly::min_total_degree() const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first.first + terms_.begin()->first.second;
  for (const auto& [key, c] : terms_) d = std::min(d, key.first + key.second);
  return d;
}

int BihomPoly::max_total_degree() const {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
  return d;
}

Complex BihomPoly::eval(Complex z) const {
  const Complex zb = std::conj(z);
  Complex acc(0.0, 0.0);
  for (const auto& [key, c] : terms_)
    acc += c * ipow(z, key.first) * ipow(zb, key.second);
  return acc;
}

BihomPoly BihomPoly::dz() const {
  BihomPoly out;
  for (const auto& [key, c] : terms_)
    if (key.first > 0)
      out.add_term(key.first - 1, key.second, c * double(key.first));
  return out;
}

BihomPoly BihomPoly::dzbar() const {
  BihomPoly out;
  for (const auto& [key, c] : terms_)
    if (key.second > 0)
      out.add_term(key.first, key.second - 1, c * double(key.second));
  return out;
}

BihomPoly& BihomPoly::operator+=(const BihomPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_)
    add_term(key.first, key.second, c);
  return *this;
}

BihomPoly BihomPoly::operator*(const BihomPoly& rhs) const {
  BihomPoly out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : rhs.terms_)
      out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

BihomPoly BihomPoly::operator*(Complex s) const {
  BihomPoly out;
  for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c * s);
  return out;
}

BihomRatio BihomRatio::dz() const {
  return {num.dz() * den + num * (den.dz() * Complex(-1.0, 0.0)), den * den};
}

BihomRatio BihomRatio::dzbar() const {
  return {num.dzbar() * den + num * (den.dzbar() * Complex(-1.0, 0.0)),
          den * den};
}

double BihomRatio::grad_norm(Complex z) const {
  return std::abs(dz().eval(z)) + std::abs(dzbar().eval(z));
}

}  // namespace crsing
