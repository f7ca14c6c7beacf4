// Serial reference vs OpenMP kernels on the perturbed torus map.
// Usage: bench_kernels [N] [S] [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "maxent/maps.hpp"
#include "maxent/parallel.hpp"
#include "maxent/reference.hpp"
#include "maxent/ulam.hpp"

using namespace maxent;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-16s %12.4f %12.4f %9.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 128;
  const int s = argc > 2 ? std::atoi(argv[2]) : 32;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;
  configure_workers_from_env();
  const MapSpec map = perturbed_torus_map(3, 0.05);
  std::printf("perturbed_torus a=3 eps=0.05 N=%d S=%d workers=%d (best of %d, seconds)\n", n, s,
              worker_count(), repeats);
  std::printf("%-16s %12s %12s %10s\n", "kernel", "serial", "parallel", "speedup");

  std::vector<UlamOperator> ops;
  const double t_build_s = best_of(repeats, [&] { ops.push_back(serial::build_ulam(map, n, s, 0)); });
  const double t_build_p = best_of(repeats, [&] { ops.push_back(build_ulam(map, n, s, 0)); });
  report("build_ulam", t_build_s, t_build_p);
  const UlamOperator& op = ops.back();

  const auto init = GridMeasure::uniform(2, n);
  std::vector<double> out(op.size());
  const int applies = 50;
  const double t_apply_s = best_of(repeats, [&] {
    for (int k = 0; k < applies; ++k) serial::apply(op, init.masses, out);
  });
  const double t_apply_p = best_of(repeats, [&] {
    for (int k = 0; k < applies; ++k) op.apply(init.masses, out);
  });
  report("apply x50", t_apply_s, t_apply_p);

  const double t_power_s = best_of(repeats, [&] { serial::power_iterate(op, init); });
  const double t_power_p = best_of(repeats, [&] { power_iterate(op, init); });
  report("power_iterate", t_power_s, t_power_p);

  const double t_push_s = best_of(repeats, [&] { serial::pushforward(map, init, s); });
  const double t_push_p = best_of(repeats, [&] { pushforward(map, init, s); });
  report("pushforward", t_push_s, t_push_p);
  return 0;
}
