#include "crsing/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crsing {

namespace {

Json cjson(Complex z) { return Json::array({z.real(), z.imag()}); }

void require_keys(const Json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required,
                  const std::string& where) {
  if (!obj.is_object())
    throw std::invalid_argument(where + ": expected a JSON object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw std::invalid_argument(where + ": unknown field \"" + item.key() +
                                  "\"");
  for (const std::string& key : required)
    if (!obj.contains(key))
      throw std::invalid_argument(where + ": missing field \"" + key + "\"");
}

int get_int(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = obj.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw std::invalid_argument(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

double get_num(const Json& obj, const std::string& key,
               const std::string& where) {
  const Json& v = obj.at(key);
  if (!v.is_number())
    throw std::invalid_argument(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

CRSurface surface_from_json(const Json& j) {
  require_keys(j, {"k", "coefficients", "residual", "radius"},
               {"k", "coefficients", "radius"}, "surface");
  const int k = get_int(j, "k", "surface");
  if (k <= 2) throw std::invalid_argument("surface: requires k > 2");
  const double radius = get_num(j, "radius", "surface");

  if (!j.at("coefficients").is_array())
    throw std::invalid_argument("surface: \"coefficients\" must be an array");
  std::vector<Complex> coeffs(static_cast<std::size_t>(k) + 1,
                              Complex(0.0, 0.0));
  std::set<int> seen;
  for (const Json& item : j.at("coefficients")) {
    require_keys(item, {"j", "re", "im"}, {"j", "re", "im"}, "coefficient");
    const int jj = get_int(item, "j", "coefficient");
    if (jj < 0 || jj > k)
      throw std::invalid_argument("surface: coefficient index outside 0..k");
    if (!seen.insert(jj).second)
      throw std::invalid_argument("surface: duplicate coefficient index");
    coeffs[static_cast<std::size_t>(jj)] =
        Complex(get_num(item, "re", "coefficient"),
                get_num(item, "im", "coefficient"));
  }

  BihomPoly residual;
  if (j.contains("residual")) {
    if (!j.at("residual").is_array())
      throw std::invalid_argument("surface: \"residual\" must be an array");
    for (const Json& item : j.at("residual")) {
      require_keys(item, {"a", "b", "re", "im"}, {"a", "b", "re", "im"},
                   "residual term");
      const int a = get_int(item, "a", "residual term");
      const int b = get_int(item, "b", "residual term");
      if (a < 0 || b < 0)
        throw std::invalid_argument("surface: residual exponents must be >= 0");
      if (a + b <= k)
        throw std::invalid_argument(
            "surface: residual terms must have total degree >= k+1");
      residual.add_term(a, b,
                        Complex(get_num(item, "re", "residual term"),
                                get_num(item, "im", "residual term")));
    }
  }
  return CRSurface(k, std::move(coeffs), std::move(residual), radius);
}

Json surface_to_json(const CRSurface& s) {
  Json j;
  j["k"] = s.k();
  Json coeffs = Json::array();
  for (int jj = 0; jj <= s.k(); ++jj) {
    const Complex c = s.coeff(jj);
    if (c == Complex(0.0, 0.0)) continue;
    coeffs.push_back({{"j", jj}, {"re", c.real()}, {"im", c.imag()}});
  }
  j["coefficients"] = std::move(coeffs);
  Json residual = Json::array();
  for (const auto& [key, c] : s.residual().terms())
    residual.push_back({{"a", key.first},
                        {"b", key.second},
                        {"re", c.real()},
                        {"im", c.imag()}});
  j["residual"] = std::move(residual);
  j["radius"] = s.radius();
  return j;
}

namespace {

Json candidate_json(const MCandidate& c) {
  Json j;
  j["M"] = c.M;
  j["delta"] = c.delta;
  j["A"] = c.A;
  j["gradSup"] = c.gradSup;
  j["B"] = c.B;
  j["sizeRhs"] = c.sizeRhs;
  j["derivLhs"] = c.derivLhs;
  j["sizeOk"] = c.sizeOk;
  j["derivOk"] = c.derivOk;
  j["sizeMargin"] = c.sizeMargin;
  j["derivMarginRel"] = c.derivMarginRel;
  j["vacuousBound"] = c.vacuousBound;
  j["boundary"] = c.boundary;
  j["pass"] = c.pass();
  return j;
}

}  // namespace

Json to_json(const Certificate& cert) {
  Json j;
  j["pass"] = cert.pass;
  if (!cert.pass) j["reason"] = cert.reason;
  j["M"] = cert.M;
  j["delta"] = cert.delta;
  j["A"] = cert.A;
  j["B"] = cert.B;
  j["gradSup"] = cert.gradSup;
  j["sizeRhs"] = cert.sizeRhs;
  j["derivLhs"] = cert.derivLhs;
  j["sizeOk"] = cert.sizeOk;
  j["derivOk"] = cert.derivOk;
  j["sizeMargin"] = cert.sizeMargin;
  j["derivMarginRel"] = cert.derivMarginRel;
  j["cRange"] = Json::array({cert.cRange.first, cert.cRange.second});
  Json per = Json::array();
  for (const MCandidate& c : cert.perM) per.push_back(candidate_json(c));
  j["perM"] = std::move(per);
  return j;
}

Json to_json(const ScanReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["maxSpread"] = report.maxSpread;
  j["basePoints"] = report.perZeta.size();
  j["fiberThreshold"] = report.fiberThreshold;
  Json viol = Json::array();
  for (const Complex& z : report.violatingZeta) viol.push_back(cjson(z));
  j["violatingZeta"] = std::move(viol);
  Json fib = Json::array();
  for (const Complex& z : report.fiberFlagged) fib.push_back(cjson(z));
  j["fiberFlagged"] = std::move(fib);
  return j;
}

Json to_json(const ApproxReport& report) {
  Json j;
  Json steps = Json::array();
  for (const ApproxStep& s : report.steps)
    steps.push_back({{"aMax", s.aMax},
                     {"bMax", s.bMax},
                     {"supError", s.supError},
                     {"converged", s.converged}});
  j["steps"] = std::move(steps);
  Json coeffs = Json::array();
  for (std::size_t q = 0; q < report.finalBasis.size(); ++q)
    coeffs.push_back({{"a", report.finalBasis[q].a},
                      {"b", report.finalBasis[q].b},
                      {"re", report.finalCoeffs[q].real()},
                      {"im", report.finalCoeffs[q].imag()}});
  j["coefficients"] = std::move(coeffs);
  return j;
}

Json to_json(const HullProbeResult& result) {
  Json j;
  j["probe"] = Json::array({result.probe.z.real(), result.probe.z.imag(),
                            result.probe.w.real(), result.probe.w.imag()});
  j["degrees"] = result.degrees;
  j["mValues"] = result.mValues;
  j["verdict"] =
      result.verdict == HullVerdict::Outside ? "OUTSIDE" : "UNRESOLVED";
  j["allConverged"] = result.allConverged;
  return j;
}

Json to_json(const ConvexityScan& scan) {
  Json j;
  j["outside"] = scan.outsideCount;
  j["unresolved"] = scan.unresolvedCount;
  Json probes = Json::array();
  for (const HullProbeResult& p : scan.probes) probes.push_back(to_json(p));
  j["probes"] = std::move(probes);
  return j;
}

Json sheets_to_json(const SheetSystem& sys, double productResidual) {
  Json j;
  j["M"] = sys.M();
  j["delta"] = sys.delta();
  j["cStar"] = cjson(sys.c_star());
  Json omegas = Json::array();
  for (const Complex& w : sys.omegas()) omegas.push_back(cjson(w));
  j["omegas"] = std::move(omegas);
  j["validityRadius"] = sys.validity_radius();
  j["productResidual"] = productResidual;
  return j;
}

Json to_json(const PipelineReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["haltedAt"] = report.haltedAt;
  j["certificate"] = to_json(report.cert);
  if (report.haveSheets) {
    Json stepI;
    stepI["delta"] = report.delta;
    stepI["cStar"] = cjson(report.cStar);
    Json omegas = Json::array();
    for (const Complex& w : report.omegas) omegas.push_back(cjson(w));
    stepI["omegas"] = std::move(omegas);
    stepI["validityRadius"] = report.validityRadius;
    stepI["productResidual"] = report.productResidual;
    stepI["jacobianMin"] = report.jacobianMin;
    stepI["pass"] = report.stepIPass;
    j["stepI"] = std::move(stepI);
  }
  if (report.stepIPass) {
    Json stepII;
    stepII["sectorScan"] = to_json(report.scan);
    stepII["density"] = to_json(report.density);
    stepII["densityDecreasing"] = report.densityDecreasing;
    stepII["pass"] = report.stepIIPass;
    j["stepII"] = std::move(stepII);
  }
  if (report.stepIIPass) {
    Json stepIII;
    stepIII["C"] = report.kallin.C;
    stepIII["epsilon"] = report.kallin.epsilon;
    stepIII["epsilonFound"] = report.kallin.epsilonFound;
    if (!report.kallin.failedCheck.empty())
      stepIII["failedCheck"] = report.kallin.failedCheck;
    stepIII["vertexAngle"] = report.kallin.vertexAngle;
    stepIII["wedgeDisjoint"] = report.kallin.wedgeDisjoint;
    Json margins = Json::array();
    for (const SheetMargins& m : report.kallin.margins)
      margins.push_back({{"re", m.re}, {"im", m.im}});
    stepIII["containmentMargins"] = std::move(margins);
    stepIII["symmetrizeResidual"] = report.symmetrizeResidual;
    stepIII["pass"] = report.stepIIIPass;
    j["stepIII"] = std::move(stepIII);
  }
  return j;
}

std::vector<std::string> demo_names() {
  return {"cubic",     "quartic03", "cubic-fail", "cubic-c0",
          "cubic-g",   "quartic",   "cubic-5i",   "quartic-neg",
          "cubic-02",  "cubic-02i", "cubic-011i"};
}

CRSurface demo_surface(const std::string& name) {
  const auto cubic_with = [](Complex c0, Complex c2) {
    return CRSurface(3, {c0, Complex(0, 0), c2, Complex(1, 0)});
  };
  if (name == "cubic") return cubic_with({0, 0}, {0, 0});
  if (name == "cubic-fail") return cubic_with({0, 0}, {0.9, 0});
  if (name == "cubic-c0") return cubic_with({1, 1}, {0.1, 0});
  if (name == "cubic-02") return cubic_with({0, 0}, {0.2, 0});
  if (name == "cubic-02i") return cubic_with({0, 0}, {0, 0.2});
  if (name == "cubic-011i") return cubic_with({0, 0}, {0.1, 0.1});
  if (name == "cubic-5i")
    return CRSurface(3, {{0, 0}, {0, 0}, {0, 0}, {0, 5}});
  if (name == "cubic-g") {
    BihomPoly g;
    g.add_term(2, 2, Complex(1, 0));
    return CRSurface(3, {{0, 0}, {0, 0}, {0, 0}, {1, 0}}, g);
  }
  if (name == "quartic03")
    return CRSurface(4, {{0, 0}, {0, 0}, {0, 0}, {0.3, 0}, {1, 0}});
  if (name == "quartic")
    return CRSurface(4, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}});
  if (name == "quartic-neg")
    return CRSurface(4, {{0, 0}, {0, 0}, {0, 0}, {-4, 0}, {0, 0}});
  throw std::invalid_argument("unknown demo surface \"" + name + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

Json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    std::size_t line = 1;
    const std::size_t upto = std::min(err.byte, text.size());
    for (std::size_t i = 0; i < upto; ++i)
      if (text[i] == '\n') ++line;
    std::ostringstream msg;
    msg << path << ":" << line << ": " << err.what();
    throw std::runtime_error(msg.str());
  }
}

}  // namespace crsing
