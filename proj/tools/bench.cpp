// Times the OpenMP kernels against their serial reference implementations
// and checks that both sides agree.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "cornerkit/census.hpp"
#include "cornerkit/corners.hpp"
#include "cornerkit/extremal.hpp"
#include "cornerkit/supersat.hpp"

namespace ck = cornerkit;

namespace {

using clk = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
  const auto t0 = clk::now();
  f();
  const auto t1 = clk::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-34s %10.1f ms %10.1f ms %7.2fx  %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "match" : "MISMATCH");
}

ck::GridSet random_set(const ck::GridParams& g, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  ck::GridSet a(g);
  for (std::size_t i = 0; i < g.cells; ++i)
    if (coin(rng)) a.add(i);
  return a;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    const ck::GridParams g(40, 4);
    std::uint64_t a = 0, b = 0;
    const double ts = time_ms([&] { a = ck::enumerated_corner_count_serial(g); });
    const double tp = time_ms([&] { b = ck::enumerated_corner_count(g); });
    report("corner stream length (40^4)", ts, tp, a == b);
  }
  {
    const ck::GridParams g(600, 2);
    const ck::GridSet a = random_set(g, 0.4, 1);
    std::uint64_t x = 0, y = 0;
    const double ts = time_ms([&] { x = ck::count_corners_serial(a); });
    const double tp = time_ms([&] { y = ck::count_corners(a); });
    report("corner count (600^2, 40%)", ts, tp, x == y);
  }
  {
    const ck::GridParams g(5, 2);
    std::uint64_t x = 0, y = 0;
    const double ts = time_ms([&] { x = ck::census_oracle_kernel_serial(g); });
    const double tp = time_ms([&] { y = ck::census_oracle_kernel(g); });
    report("census subset scan (5^2)", ts, tp, x == y);
  }
  {
    const ck::GridParams g(5, 2);
    ck::BigInt x, y;
    const double ts =
        time_ms([&] { x = ck::count_corner_free_serial(g, {}).count; });
    const double tp = time_ms([&] { y = ck::count_corner_free(g, {}).count; });
    report("pruned census (5^2)", ts, tp, x == y);
  }
  {
    const ck::GridParams g(4, 2);
    long long x = 0, y = 0;
    const double ts = time_ms([&] { x = ck::exact_c_exhaustive_serial(g).lower; });
    const double tp = time_ms([&] { y = ck::exact_c_exhaustive(g).lower; });
    report("extremal subset scan (4^2)", ts, tp, x == y);
  }
  {
    const ck::GridParams g(60, 2);
    const ck::GridSet a = random_set(g, 0.5, 2);
    ck::ExtremalTable table;
    table.merge(ck::exact_c(ck::GridParams(3, 2)));
    const ck::GridFamily fam =
        ck::build_grid_family(a, ck::SupersatConfig{3, 13.0, 2.0}, table);
    std::uint64_t x = 0, y = 0;
    const double ts = time_ms([&] { x = ck::family_corner_sum_serial(a, fam); });
    const double tp = time_ms([&] { y = ck::family_corner_sum(a, fam); });
    report("subgrid corner sums (60^2)", ts, tp, x == y);
  }
  return 0;
}
