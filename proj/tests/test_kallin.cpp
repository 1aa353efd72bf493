#include <doctest.h>

#include <cmath>
#include <random>

#include "crsing/json_io.hpp"
#include "crsing/kallin.hpp"

using namespace crsing;

namespace {

double unit(std::mt19937& gen) { return gen() * (1.0 / 4294967296.0); }

SheetSystem certified(const char* demo) {
  const CRSurface s = demo_surface(demo);
  return build_sheets(s, certify(s, CircleGrid(2048)));
}

Poly2 random_poly(std::mt19937& gen, int maxDeg) {
  Poly2 g;
  for (int i = 0; i < 8; ++i)
    g.add_term(int(unit(gen) * (maxDeg + 1)), int(unit(gen) * (maxDeg + 1)),
               Complex(2 * unit(gen) - 1, 2 * unit(gen) - 1));
  return g;
}

}  // namespace

TEST_SUITE("kallin") {

TEST_CASE("wedge constant midpoints") {
  CHECK(choose_c(0.3, 4) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(choose_c(0.0, 3) == doctest::Approx(0.3169873).epsilon(1e-6));
  CHECK_THROWS_AS(choose_c(0.6, 4), std::invalid_argument);
}

TEST_CASE("separating polynomial values") {
  const SheetSystem cubicSys = certified("cubic");  // C_* = 1
  CHECK(std::abs(p_eval(cubicSys, Complex(0.5, 0), Complex(0.25, 0)) -
                 Complex(0.125, 0)) < 1e-15);

  const SheetSystem negSys = certified("quartic-neg");  // C_* = 2i
  CHECK(std::abs(p_eval(negSys, Complex(1, 0), Complex(0, 2)) -
                 Complex(1, 0)) < 1e-14);

  // On sheet 1 of zbar^4 the polynomial is |z|^2: real and nonnegative.
  const SheetSystem quarticSys = certified("quartic");
  std::mt19937 gen(3);
  for (int i = 0; i < 20; ++i) {
    const Complex z = std::polar(unit(gen), kTwoPi * unit(gen));
    const Complex p = p_eval(quarticSys, z, quarticSys.sheet(1, z));
    CHECK(std::abs(p - Complex(std::norm(z), 0)) < 1e-12);
  }
}

TEST_CASE("containment margins of the pure quartic equal C") {
  const SheetSystem sys = certified("quartic");
  const std::vector<SheetMargins> margins =
      containment_margins(sys, 0.25, 1.0);
  REQUIRE(margins.size() == 4);
  for (const SheetMargins& m : margins) {
    CHECK(m.re == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(m.im == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("good and bad wedge constants on the perturbed quartics") {
  const SheetSystem mild = certified("quartic03");
  for (const SheetMargins& m : containment_margins(mild, 0.4, 1.0)) {
    CHECK(m.re > 0.0);
    CHECK(m.im > 0.0);
  }

  // A = 0.9 pushes Im (1 + u)^{1/4} up to about 0.2246, so C = 0.2 fails.
  const CRSurface wild(4, {{0, 0}, {0, 0}, {0, 0}, {0.9, 0}, {1, 0}});
  const SheetSystem wildSys = build_sheets_at(wild, 4);
  bool negative = false;
  for (const SheetMargins& m : containment_margins(wildSys, 0.2, 1.0))
    negative = negative || m.im < 0.0 || m.re < 0.0;
  CHECK(negative);
}

TEST_CASE("margins do not shrink when the radius shrinks") {
  const SheetSystem sys = certified("cubic-g");
  const double delta = sys.validity_radius();
  const auto at = [&](double eps) {
    return containment_margins(sys, choose_c(0.05, 3), eps);
  };
  const std::vector<SheetMargins> coarse = at(0.9 * delta);
  const std::vector<SheetMargins> fine = at(0.45 * delta);
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    CHECK(fine[j].re >= coarse[j].re - 1e-12);
    CHECK(fine[j].im >= coarse[j].im - 1e-12);
  }
}

TEST_CASE("the working radius of scale-invariant demos is the full disc") {
  const SheetSystem cubicSys = certified("cubic");
  const Certificate cubicCert =
      certify(demo_surface("cubic"), CircleGrid(2048));
  const EpsilonSearch cubicSearch =
      epsilon_search(cubicSys, cubicCert, choose_c(cubicCert.A, 3));
  CHECK(cubicSearch.found);
  CHECK(cubicSearch.epsilon == 1.0);

  const SheetSystem quarticSys = certified("quartic03");
  const Certificate quarticCert =
      certify(demo_surface("quartic03"), CircleGrid(2048));
  const EpsilonSearch quarticSearch =
      epsilon_search(quarticSys, quarticCert, 0.4);
  CHECK(quarticSearch.found);
  CHECK(quarticSearch.epsilon > 0.0);
}

TEST_CASE("epsilon search rejects bad inputs") {
  const SheetSystem sys = certified("quartic03");
  const Certificate cert = certify(demo_surface("quartic03"), CircleGrid(2048));
  CHECK_THROWS_AS(epsilon_search(sys, cert, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_search(sys, cert, 0.7), std::invalid_argument);

  Certificate failing = cert;
  failing.pass = false;
  CHECK_THROWS_AS(epsilon_search(sys, failing, 0.4), std::invalid_argument);
}

TEST_CASE("symmetrization kills the non-divisible powers") {
  Poly2 g;
  g.add_term(0, 2, Complex(1, 0));  // w^2
  g.add_term(1, 1, Complex(1, 0));  // z w
  g.add_term(1, 0, Complex(1, 0));  // z
  const Poly2 P = symmetrize(g, 2);
  REQUIRE(P.terms.size() == 2);
  CHECK(P.terms.at({0, 1}) == Complex(1, 0));  // u
  CHECK(P.terms.at({1, 0}) == Complex(1, 0));  // z

  Poly2 cube;
  cube.add_term(0, 3, Complex(1, 0));
  CHECK(symmetrize(cube, 2).terms.empty());
}

TEST_CASE("symmetrization is the identity on invariants and idempotent") {
  std::mt19937 gen(5);
  for (const int delta : {2, 3, 4}) {
    const Poly2 h = random_poly(gen, 3);
    Poly2 lifted;  // h(z, w^delta)
    for (const auto& [key, c] : h.terms)
      lifted.add_term(key.first, key.second * delta, c);
    const Poly2 back = symmetrize(lifted, delta);
    REQUIRE(back.terms.size() == h.terms.size());
    for (const auto& [key, c] : h.terms)
      CHECK(std::abs(back.terms.at(key) - c) == 0.0);
  }
}

TEST_CASE("symmetrization is linear") {
  std::mt19937 gen(7);
  const Poly2 g = random_poly(gen, 4);
  const Poly2 h = random_poly(gen, 4);
  Poly2 sum;
  for (const auto& [key, c] : g.terms) sum.add_term(key.first, key.second, c);
  for (const auto& [key, c] : h.terms) sum.add_term(key.first, key.second, c);
  Poly2 expected;
  for (const auto& [key, c] : symmetrize(g, 3).terms)
    expected.add_term(key.first, key.second, c);
  for (const auto& [key, c] : symmetrize(h, 3).terms)
    expected.add_term(key.first, key.second, c);
  const Poly2 got = symmetrize(sum, 3);
  REQUIRE(got.terms.size() == expected.terms.size());
  for (const auto& [key, c] : expected.terms)
    CHECK(std::abs(got.terms.at(key) - c) < 1e-15);
}

TEST_CASE("the averaging identity holds at random points") {
  std::mt19937 gen(9);
  for (const int delta : {2, 3, 4}) {
    const Poly2 g = random_poly(gen, 5);
    const Poly2 P = symmetrize(g, delta);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = std::polar(unit(gen), kTwoPi * unit(gen));
      const Complex w = std::polar(unit(gen), kTwoPi * unit(gen));
      Complex avg(0, 0);
      for (int j = 0; j < delta; ++j)
        avg += g.eval(z, std::polar(1.0, kTwoPi * j / delta) * w);
      avg /= double(delta);
      Complex wd(1, 0);
      for (int j = 0; j < delta; ++j) wd *= w;
      CHECK(std::abs(P.eval(z, wd) - avg) <=
            1e-12 * std::max(1.0, std::abs(avg)));
    }
  }
}

TEST_CASE("admissible constants keep the wedges disjoint") {
  for (int delta = 2; delta <= 8; ++delta) {
    const double rhs = size_rhs(delta);
    for (int i = 1; i <= 20; ++i) {
      const double C = rhs * double(i) / 21.0;
      const double vertexAngle = 2.0 * std::atan(C / (1.0 - C));
      CHECK(vertexAngle < kTwoPi / delta);
      // Disjointness needs the half-width below pi/delta.
      CHECK(0.5 * vertexAngle < kPi / delta);
    }
  }
}

TEST_CASE("the full report ties the pieces together") {
  const SheetSystem sys = certified("quartic03");
  const Certificate cert = certify(demo_surface("quartic03"), CircleGrid(2048));
  const KallinReport report = kallin_report(sys, cert, 0.4);
  CHECK(report.C == 0.4);
  CHECK(report.epsilonFound);
  CHECK(report.vertexAngle ==
        doctest::Approx(2.0 * std::atan(2.0 / 3.0)).epsilon(1e-12));
  CHECK(report.wedgeDisjoint);
  REQUIRE(report.margins.size() == 4);
  for (const SheetMargins& m : report.margins) {
    CHECK(m.re > 0.0);
    CHECK(m.im > 0.0);
  }
}

}  // TEST_SUITE
