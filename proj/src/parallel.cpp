#include "osg/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace osg {

void configure_threads_from_env() {
  const char* env = std::getenv("OSG_THREADS");
  if (env == nullptr) return;
  try {
    const int n = std::stoi(env);
    if (n > 0) omp_set_num_threads(n);
  } catch (const std::exception&) {
    // ignore malformed values; OpenMP keeps its default
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace osg
