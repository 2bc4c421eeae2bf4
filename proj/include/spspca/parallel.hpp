#pragma once

namespace spspca {

// Worker cap for the component- and replication-level parallel loops:
// min(omp_get_max_threads(), SPSPCA_THREADS when set). Returns 1 in builds
// without OpenMP. Results are merged by index, so outputs are identical for
// every thread count.
int max_threads();

}  // namespace spspca
