#include "ndform/common.hpp"

#include <cstdlib>

namespace ndform {

int thread_cap() {
  const char* env = std::getenv("NDFORM_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

void configure_threading() { Eigen::setNbThreads(thread_cap()); }

} // namespace ndform
