#pragma once

namespace recsys {

// Worker count for the OpenMP kernels. RECSYS_LENS_THREADS, when set to a
// positive integer, overrides the OpenMP default; 1 forces fully sequential
// execution. Read once per process.
int configured_threads();

}  // namespace recsys
