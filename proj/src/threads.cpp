#include "recsys/threads.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace recsys {

namespace {

int resolve_threads() {
  const char* env = std::getenv("RECSYS_LENS_THREADS");
  if (env != nullptr) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      // fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

}  // namespace

int configured_threads() {
  static const int n = resolve_threads();
  return n;
}

}  // namespace recsys
