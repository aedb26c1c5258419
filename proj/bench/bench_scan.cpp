#include <benchmark/benchmark.h>

#include "bext/extend.hpp"
#include "bext/verify.hpp"

namespace {

using namespace bext;

struct Setup {
  PlanarDomain domain;
  LiftedCircleMap map;
  DomainExtension ext;
  PlanarMap fn;

  Setup()
      : domain(PlanarDomain::polygon({{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}})),
        map(make_circle_map(parse_lift("t + 0.5*sin(t)"))),
        ext(extend_domain(domain, map, Strategy::kRotation)),
        fn([this](const PlanarPoint& q) { return ext(q); }) {}
};

Setup& setup() {
  static Setup s;
  return s;
}

void BM_ScanParallel(benchmark::State& state) {
  Setup& s = setup();
  int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ScanResult r = scan_fixed_points(s.fn, s.domain, grid, 1e-6);
    benchmark::DoNotOptimize(r.candidate_cells);
  }
}

void BM_ScanSerial(benchmark::State& state) {
  Setup& s = setup();
  int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ScanResult r = scan_fixed_points_serial(s.fn, s.domain, grid, 1e-6);
    benchmark::DoNotOptimize(r.candidate_cells);
  }
}

void BM_BoundaryParallel(benchmark::State& state) {
  Setup& s = setup();
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double worst = boundary_error(s.fn, s.domain, s.map, n);
    benchmark::DoNotOptimize(worst);
  }
}

void BM_BoundarySerial(benchmark::State& state) {
  Setup& s = setup();
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double worst = boundary_error_serial(s.fn, s.domain, s.map, n);
    benchmark::DoNotOptimize(worst);
  }
}

BENCHMARK(BM_ScanParallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundaryParallel)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundarySerial)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
