#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "crsing/json_io.hpp"
#include "crsing/parallel.hpp"
#include "crsing/pipeline.hpp"

namespace {

using crsing::Complex;
using crsing::Json;

struct ToolConfig {
  std::string input;
  std::string out;
  std::string demo;
  std::string csv;  // error-curve export for approximate
  int samples = 0;  // 0 keeps the per-command default
  int forceM = -1;
  double forceC = -1.0;
  int maxDegree = -1;
};

void add_common(CLI::App* cmd, ToolConfig& cfg) {
  cmd->add_option("input", cfg.input, "input JSON file");
  cmd->add_option("--samples", cfg.samples, "sample count (circle grid size, or scan density)");
  cmd->add_option("--out", cfg.out, "write the JSON report to this path");
  cmd->add_option("--force-M", cfg.forceM, "certify against this index M");
  cmd->add_option("--force-C", cfg.forceC, "override the Kallin constant C");
  cmd->add_option("--max-degree", cfg.maxDegree, "degree cutoff for fits and hull probes");
  cmd->add_option("--demo", cfg.demo, "use a built-in demo surface instead of a file")
      ->check(CLI::IsMember(crsing::demo_names()));
}

int checked_grid_n(int samples, int fallback) {
  if (samples == 0) return fallback;
  if (samples < 64 || samples > 1000000)
    throw std::invalid_argument("--samples must lie in [64, 1000000]");
  return samples;
}

void emit(const Json& j, const std::string& outPath) {
  const std::string text = j.dump(2) + "\n";
  if (outPath.empty()) {
    std::cout << text;
  } else {
    crsing::write_file_atomic(outPath, text);
  }
}

crsing::CRSurface load_surface(const ToolConfig& cfg) {
  if (!cfg.demo.empty()) return crsing::demo_surface(cfg.demo);
  if (cfg.input.empty())
    throw std::invalid_argument("no input file and no --demo surface given");
  return crsing::surface_from_json(crsing::parse_json_file(cfg.input));
}

std::optional<Json> load_input(const ToolConfig& cfg) {
  if (cfg.input.empty()) return std::nullopt;
  return crsing::parse_json_file(cfg.input);
}

crsing::ComplexFn named_function(const std::string& name) {
  if (name == "conj") return [](Complex z) { return std::conj(z); };
  if (name == "abs2")
    return [](Complex z) { return Complex(std::norm(z), 0.0); };
  if (name == "conj3") {
    return [](Complex z) {
      const Complex c = std::conj(z);
      return c * c * c;
    };
  }
  if (name == "conj-plus-half-z")
    return [](Complex z) { return std::conj(z) + 0.5 * z; };
  throw std::invalid_argument("unknown function \"" + name + "\"");
}

crsing::SheetSystem certified_sheets(const crsing::CRSurface& s, int gridN,
                                     int forceM) {
  crsing::CertifyOptions co;
  co.forceM = forceM;
  const crsing::Certificate cert =
      crsing::certify(s, crsing::CircleGrid(gridN), co);
  if (!cert.pass)
    throw std::invalid_argument("surface does not certify; no sheet system");
  return crsing::build_sheets(s, cert);
}

int run_certify(const ToolConfig& cfg) {
  const crsing::CRSurface s = load_surface(cfg);
  const int n = checked_grid_n(cfg.samples, 4096);
  crsing::CertifyOptions co;
  co.forceM = cfg.forceM;
  const crsing::Certificate cert = crsing::certify(s, crsing::CircleGrid(n), co);
  Json j;
  j["surface"] = crsing::surface_to_json(s);
  j["gridN"] = n;
  j["certificate"] = crsing::to_json(cert);
  emit(j, cfg.out);
  return cert.pass ? 0 : 1;
}

int run_pipeline_cmd(const ToolConfig& cfg) {
  const crsing::CRSurface s = load_surface(cfg);
  crsing::PipelineOptions opts;
  opts.gridN = checked_grid_n(cfg.samples, opts.gridN);
  opts.certify.forceM = cfg.forceM;
  opts.cOverride = cfg.forceC;
  const crsing::PipelineReport report = crsing::run_pipeline(s, opts);
  Json j;
  j["surface"] = crsing::surface_to_json(s);
  j["gridN"] = opts.gridN;
  j["report"] = crsing::to_json(report);
  emit(j, cfg.out);
  return report.pass ? 0 : 1;
}

int run_sector_scan(const ToolConfig& cfg) {
  const std::optional<Json> input = load_input(cfg);
  std::string function = "conj";
  double radius = 0.0;
  std::vector<Complex> excluded;
  std::optional<crsing::CRSurface> surface;
  if (!cfg.demo.empty()) {
    function = "f0";
    surface = crsing::demo_surface(cfg.demo);
  }
  if (input) {
    const Json& in = *input;
    if (in.contains("function")) function = in.at("function").get<std::string>();
    if (in.contains("radius")) radius = in.at("radius").get<double>();
    if (in.contains("surface"))
      surface = crsing::surface_from_json(in.at("surface"));
    if (in.contains("exclude"))
      for (const Json& e : in.at("exclude"))
        excluded.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }

  crsing::ScanOptions opts;
  if (cfg.samples > 0) {
    opts.angularSamples = cfg.samples;
    opts.radialSamples = std::max(8, cfg.samples / 4);
  }

  crsing::ComplexFn fn;
  if (function == "f0") {
    if (!surface)
      throw std::invalid_argument("sector-scan: \"f0\" needs a surface");
    const auto sys = certified_sheets(*surface, 4096, cfg.forceM);
    if (radius <= 0.0) radius = sys.validity_radius();
    radius = std::min(radius, sys.validity_radius());
    fn = [sys](Complex z) { return sys.f0(z); };
    if (excluded.empty()) excluded.push_back(Complex(0.0, 0.0));
  } else {
    fn = named_function(function);
    if (radius <= 0.0) radius = 1.0;
  }

  const crsing::ScanReport report =
      crsing::sector_scan(fn, crsing::Disc(Complex(0.0, 0.0), radius), opts,
                          excluded);
  Json j;
  j["function"] = function;
  j["radius"] = radius;
  j["scan"] = crsing::to_json(report);
  emit(j, cfg.out);
  return report.pass ? 0 : 1;
}

int run_approximate(const ToolConfig& cfg) {
  const std::optional<Json> input = load_input(cfg);
  std::string function = "conj3", target = "conj";
  double radius = 1.0;
  std::optional<crsing::CRSurface> surface;
  std::vector<std::pair<int, int>> schedule;
  if (!cfg.demo.empty()) {
    function = "f0";
    surface = crsing::demo_surface(cfg.demo);
  }
  if (input) {
    const Json& in = *input;
    if (in.contains("function")) function = in.at("function").get<std::string>();
    if (in.contains("target")) target = in.at("target").get<std::string>();
    if (in.contains("radius")) radius = in.at("radius").get<double>();
    if (in.contains("surface"))
      surface = crsing::surface_from_json(in.at("surface"));
    if (in.contains("schedule"))
      for (const Json& step : in.at("schedule"))
        schedule.emplace_back(step.at(0).get<int>(), step.at(1).get<int>());
  }
  if (cfg.maxDegree >= 0) {
    schedule.clear();
    for (int d = 0; d <= cfg.maxDegree; ++d) schedule.emplace_back(d, d);
  }
  if (schedule.empty())
    for (int d = 0; d <= 6; ++d) schedule.emplace_back(d, d);

  crsing::ComplexFn fn;
  if (function == "f0") {
    if (!surface)
      throw std::invalid_argument("approximate: \"f0\" needs a surface");
    const auto sys = certified_sheets(*surface, 4096, cfg.forceM);
    radius = std::min(radius, sys.validity_radius());
    fn = [sys](Complex z) { return sys.f0(z); };
  } else {
    fn = named_function(function);
  }

  const int nAngles = cfg.samples > 0 ? cfg.samples : 256;
  const int nRadii = std::max(8, nAngles / 4);
  const crsing::ApproxReport report =
      crsing::approx_report(fn, named_function(target), schedule,
                            crsing::polar_grid(radius, nRadii, nAngles));
  if (!cfg.csv.empty()) {
    std::string lines = "aMax,bMax,supError,converged\n";
    for (const crsing::ApproxStep& s : report.steps) {
      std::ostringstream row;
      row << s.aMax << "," << s.bMax << "," << std::setprecision(17)
          << s.supError << "," << (s.converged ? 1 : 0) << "\n";
      lines += row.str();
    }
    crsing::write_file_atomic(cfg.csv, lines);
  }
  Json j;
  j["function"] = function;
  j["target"] = target;
  j["radius"] = radius;
  j["grid"] = Json::array({nRadii, nAngles});
  j["approx"] = crsing::to_json(report);
  emit(j, cfg.out);
  return 0;
}

int run_hull_probe(const ToolConfig& cfg) {
  const std::optional<Json> input = load_input(cfg);
  Json j;
  if (!cfg.demo.empty() || (input && input->contains("surface"))) {
    const crsing::CRSurface s = !cfg.demo.empty()
                                    ? crsing::demo_surface(cfg.demo)
                                    : crsing::surface_from_json(input->at("surface"));
    double eps = s.radius() / 2.0;
    if (input && input->contains("eps")) eps = input->at("eps").get<double>();
    crsing::ConvexityScanOptions opts;
    if (cfg.maxDegree > 0) opts.dMax = cfg.maxDegree;
    if (cfg.samples > 0) {
      opts.nAngles = cfg.samples;
      opts.nRadii = std::max(8, cfg.samples / 4);
    }
    const crsing::ConvexityScan scan = crsing::convexity_scan(s, eps, opts);
    j["eps"] = eps;
    j["hull"] = crsing::to_json(scan);
    emit(j, cfg.out);
    return 0;
  }

  if (!input)
    throw std::invalid_argument("hull-probe: need an input file or --demo");
  const Json& in = *input;
  const std::string graph = in.at("graph").get<std::string>();
  const crsing::ComplexFn fn = named_function(graph);
  const double radius = in.contains("radius") ? in.at("radius").get<double>() : 1.0;
  const Json& pr = in.at("probe");
  crsing::Point2 probe{Complex(pr.at(0).get<double>(), pr.at(1).get<double>()),
                       Complex(pr.at(2).get<double>(), pr.at(3).get<double>())};
  const int nAngles = cfg.samples > 0 ? cfg.samples : 192;
  const int nRadii = std::max(8, nAngles / 4);
  std::vector<crsing::Point2> samples;
  for (const Complex& z : crsing::polar_grid(radius, nRadii, nAngles))
    samples.push_back({z, fn(z)});
  const int dMax = cfg.maxDegree > 0 ? cfg.maxDegree : 8;
  const crsing::HullProbeResult result = crsing::hull_probe(samples, probe, dMax);
  j["graph"] = graph;
  j["radius"] = radius;
  j["probeResult"] = crsing::to_json(result);
  emit(j, cfg.out);
  return 0;
}

int run_sheets(const ToolConfig& cfg) {
  const crsing::CRSurface s = load_surface(cfg);
  const int n = checked_grid_n(cfg.samples, 4096);
  crsing::CertifyOptions co;
  co.forceM = cfg.forceM;
  const crsing::Certificate cert = crsing::certify(s, crsing::CircleGrid(n), co);
  if (!cert.pass) {
    Json j;
    j["certificate"] = crsing::to_json(cert);
    emit(j, cfg.out);
    return 1;
  }
  const crsing::SheetSystem sys = crsing::build_sheets(s, cert);
  std::vector<Complex> zs, ws;
  crsing::sample_pairs(sys, 1000, 0x5eedu, zs, ws);
  Json j;
  j["surface"] = crsing::surface_to_json(s);
  j["sheets"] = crsing::sheets_to_json(sys, crsing::verify_product(sys, zs, ws));
  emit(j, cfg.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify local polynomial convexity of CR-singular surface "
               "germs and verify the covering-sheet, wedge, density, and "
               "hull constructions behind the certificate"};
  app.require_subcommand(1);

  ToolConfig cfg;
  CLI::App* certify = app.add_subcommand("certify", "check the certificate conditions");
  CLI::App* pipeline = app.add_subcommand("pipeline", "run the full verification chain");
  CLI::App* scan = app.add_subcommand("sector-scan", "scan the value-distribution condition");
  CLI::App* approx = app.add_subcommand("approximate", "minimax density experiment");
  CLI::App* hull = app.add_subcommand("hull-probe", "polynomial-hull membership probe");
  CLI::App* sheets = app.add_subcommand("sheets", "build and verify the covering sheets");
  for (CLI::App* cmd : {certify, pipeline, scan, approx, hull, sheets})
    add_common(cmd, cfg);
  approx->add_option("--csv", cfg.csv, "also export the error curve as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(certify)) return run_certify(cfg);
    if (app.got_subcommand(pipeline)) return run_pipeline_cmd(cfg);
    if (app.got_subcommand(scan)) return run_sector_scan(cfg);
    if (app.got_subcommand(approx)) return run_approximate(cfg);
    if (app.got_subcommand(hull)) return run_hull_probe(cfg);
    if (app.got_subcommand(sheets)) return run_sheets(cfg);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
