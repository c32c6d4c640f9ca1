#include "ramsey0/parallel.hpp"

#include <omp.h>

namespace ramsey0 {

namespace {
int default_threads = 0;
}

void set_num_threads(int threads) {
  if (default_threads == 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : default_threads);
}

int num_threads() { return omp_get_max_threads(); }

}  // namespace ramsey0
