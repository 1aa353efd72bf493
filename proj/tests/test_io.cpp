#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "crsing/json_io.hpp"

using namespace crsing;

TEST_SUITE("io") {

TEST_CASE("surface round trip through the schema") {
  BihomPoly g;
  g.add_term(2, 2, Complex(0.5, -0.25));
  const CRSurface s(3, {{1, 1}, {0, 0}, {0.1, 0}, {1, 0}}, g, 0.75);
  const CRSurface back = surface_from_json(surface_to_json(s));
  CHECK(back.k() == 3);
  CHECK(back.radius() == 0.75);
  CHECK(back.coeff(0) == Complex(1, 1));
  CHECK(back.coeff(2) == Complex(0.1, 0));
  CHECK(back.coeff(3) == Complex(1, 0));
  CHECK(back.residual().terms().at({2, 2}) == Complex(0.5, -0.25));
}

TEST_CASE("schema violations are rejected") {
  const auto base = R"({"k": 3, "coefficients": [{"j": 3, "re": 1, "im": 0}], "radius": 1.0})";
  CHECK_NOTHROW(surface_from_json(Json::parse(base)));

  CHECK_THROWS_AS(surface_from_json(Json::parse(
                      R"({"k": 3, "coefficients": [], "radius": 1, "bogus": 2})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(Json::parse(
                      R"({"k": 3, "coefficients": [{"j": 4, "re": 1, "im": 0}], "radius": 1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(Json::parse(
                      R"({"k": 3, "coefficients": [{"j": -1, "re": 1, "im": 0}], "radius": 1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      surface_from_json(Json::parse(
          R"({"k": 3, "coefficients": [{"j": 3, "re": 1, "im": 0}, {"j": 3, "re": 2, "im": 0}], "radius": 1})")),
      std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(Json::parse(
                      R"({"k": 3, "coefficients": [{"j": 3, "re": 1, "im": 0, "extra": 0}], "radius": 1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      surface_from_json(Json::parse(
          R"({"k": 3, "coefficients": [{"j": 3, "re": 1, "im": 0}], "residual": [{"a": 1, "b": 2, "re": 1, "im": 0}], "radius": 1})")),
      std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(Json::parse(
                      R"({"k": 2, "coefficients": [{"j": 2, "re": 1, "im": 0}], "radius": 1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(Json::parse(
                      R"({"k": 3, "coefficients": [{"j": 3, "re": 1, "im": 0}], "radius": "one"})")),
                  std::invalid_argument);
}

TEST_CASE("parse errors carry the line number") {
  const std::string path = "/tmp/crsing_bad_input.json";
  {
    std::ofstream out(path);
    out << "{\n  \"k\": 3,\n  \"coefficients\": [,]\n}\n";
  }
  try {
    parse_json_file(path);
    FAIL("expected a parse failure");
  } catch (const std::runtime_error& err) {
    CHECK(std::string(err.what()).find(":3:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("atomic writes leave no temp file behind") {
  const std::string path = "/tmp/crsing_atomic_test.json";
  write_file_atomic(path, "{}\n");
  CHECK(read_file(path) == "{}\n");
  std::ifstream tmp(path + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path.c_str());
}

TEST_CASE("every demo surface is constructible") {
  for (const std::string& name : demo_names()) {
    const CRSurface s = demo_surface(name);
    CHECK(s.k() > 2);
  }
  CHECK_THROWS_AS(demo_surface("no-such-demo"), std::invalid_argument);
}

TEST_CASE("reports serialize with stable shapes") {
  const Certificate cert =
      certify(demo_surface("cubic"), CircleGrid(256));
  const Json j = to_json(cert);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("perM").size() == 1);
  const std::string once = j.dump(2);
  CHECK(once == to_json(cert).dump(2));
}

}  // TEST_SUITE
