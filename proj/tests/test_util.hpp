#pragma once

#include <cmath>
#include <vector>

#include "zcq/process.hpp"
#include "zcq/waveforms.hpp"

namespace zcq::test {

// Reduced evaluation cost for unit tests; signs and low-precision values are
// insensitive to the tail depth.
inline TraceOptions fast_trace() {
  TraceOptions t;
  t.trace_points_per_interval = 128;
  t.quad_panels_per_subinterval = 32;
  t.product_depth = 2000;
  return t;
}

inline WaveformSet small_set(PatternKind kind, int n, int kappa,
                             const WindowSpec& w = {}) {
  return build_full_set(make_pattern(kind, n), kappa, 1.0, w, fast_trace());
}

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace zcq::test
