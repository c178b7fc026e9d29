// Small shared helpers: worker-count control and numeric text formatting.
#pragma once

#include <functional>
#include <string>

namespace biflab {

// Worker cap: BIFLAB_THREADS when set (>= 1), otherwise machine parallelism.
int worker_count();

// Runs fn(i) for i in [0, n), chunked over worker_count() threads.  fn must
// be safe to call concurrently for distinct i.
void parallel_for(int n, const std::function<void(int)>& fn);

// Shortest round-trip decimal with 17 significant digits.
std::string format_g17(double v);

}  // namespace biflab
