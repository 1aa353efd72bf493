// Serial-vs-parallel comparison for the grid kernels: every workload runs
// once with the thread cap at 1 and once at the full cap, checks that the
// results agree bitwise, and reports the wall-clock ratio.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "crsing/approx.hpp"
#include "crsing/hull.hpp"
#include "crsing/json_io.hpp"
#include "crsing/parallel.hpp"
#include "crsing/sheets.hpp"
#include "crsing/surface.hpp"

namespace {

using crsing::Complex;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

struct Row {
  std::string name;
  double serialMs = 0.0;
  double parallelMs = 0.0;
  bool match = true;
};

Row run_case(const std::string& name, const std::function<double()>& work) {
  Row row;
  row.name = name;
  const int full = crsing::par::thread_cap();

  crsing::par::set_thread_cap(1);
  double t0 = now_ms();
  const double serialValue = work();
  row.serialMs = now_ms() - t0;

  crsing::par::set_thread_cap(full);
  t0 = now_ms();
  const double parallelValue = work();
  row.parallelMs = now_ms() - t0;

  row.match = std::memcmp(&serialValue, &parallelValue, sizeof(double)) == 0;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  const int scale = quick ? 1 : 4;

  const crsing::CRSurface quartic = crsing::demo_surface("quartic03");
  std::vector<Row> rows;

  {
    const crsing::CircleGrid grid(quick ? 65536 : 1 << 20);
    rows.push_back(run_case("circle-sup tau_M", [&] {
      return crsing::tau_sup(quartic, 4, grid);
    }));
  }

  {
    const crsing::Certificate cert =
        crsing::certify(quartic, crsing::CircleGrid(1024));
    const crsing::SheetSystem sys = crsing::build_sheets(quartic, cert);
    crsing::ScanOptions opts;
    opts.radialSamples = 24 * scale;
    opts.angularSamples = 96 * scale;
    rows.push_back(run_case("sector-scan F_0", [&] {
      const crsing::ScanReport r = crsing::sector_scan(
          [&](Complex z) { return sys.f0(z); },
          crsing::Disc(Complex(0.0, 0.0), sys.validity_radius()), opts,
          {Complex(0.0, 0.0)});
      return r.maxSpread;
    }));
  }

  {
    const std::vector<Complex> grid =
        crsing::polar_grid(1.0, 16 * scale, 64 * scale);
    const int d = quick ? 3 : 4;
    std::vector<std::pair<int, int>> schedule;
    for (int i = 0; i <= d; ++i) schedule.emplace_back(i, i);
    rows.push_back(run_case("minimax fit (z, conj^3)", [&] {
      const crsing::ApproxReport r = crsing::approx_report(
          [](Complex z) {
            const Complex c = std::conj(z);
            return c * c * c;
          },
          [](Complex z) { return std::conj(z); }, schedule, grid);
      return r.steps.back().supError;
    }));
  }

  {
    std::vector<crsing::Point2> samples;
    for (const Complex& z : crsing::polar_grid(1.0, 12 * scale, 48 * scale))
      samples.push_back({z, Complex(std::norm(z), 0.0)});
    const int dMax = quick ? 4 : 6;
    rows.push_back(run_case("hull probe |z|^2 graph", [&] {
      const crsing::HullProbeResult r = crsing::hull_probe(
          samples, {Complex(0.0, 0.0), Complex(0.25, 0.0)}, dMax);
      return r.mValues.back();
    }));
  }

  std::printf("%-28s %12s %12s %9s %7s\n", "kernel", "serial ms", "parallel ms",
              "speedup", "match");
  bool allMatch = true;
  for (const Row& row : rows) {
    std::printf("%-28s %12.2f %12.2f %8.2fx %7s\n", row.name.c_str(),
                row.serialMs, row.parallelMs,
                row.serialMs / std::max(row.parallelMs, 1e-9),
                row.match ? "yes" : "NO");
    allMatch = allMatch && row.match;
  }
  std::printf("threads: %d\n", crsing::par::thread_cap());
  return allMatch ? 0 : 1;
}
