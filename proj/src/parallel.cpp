#include "maxent/parallel.hpp"

#include "maxent/errors.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxent {

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int configure_workers_from_env() {
  if (const char* v = std::getenv(kWorkerEnv)) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1 || n > 4096)
      throw ConfigError(std::string(kWorkerEnv) + " must be a positive integer, got '" + v + "'");
    set_worker_count(static_cast<int>(n));
  }
  return worker_count();
}

}  // namespace maxent
