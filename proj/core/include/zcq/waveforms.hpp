#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zcq/process.hpp"

namespace zcq {

struct WindowSpec {
  enum class Kind { hard, raised_cosine };
  Kind kind = Kind::hard;
  double alpha = 0.0;  // raised-cosine roll-off in [0,1]; 0 degenerates to hard
};

// Window value at t in (0, duration]; 0 outside.
double window_value(const WindowSpec& w, double t, double duration);

struct TraceOptions {
  int trace_points_per_interval = 256;   // midpoint grid used for spectra
  int quad_panels_per_subinterval = 64;  // Simpson panels per sample integral
  int product_depth = kDefaultProductDepth;
};

struct Waveform {
  int id = -1;
  std::vector<int> crossing_index;         // l per interval (pattern labels)
  double phi = 1.0;
  std::vector<double> samples;             // kappa*n sub-interval integrals of g
  std::vector<std::int8_t> sign_seq;       // sgn of samples, +1/-1
  std::vector<double> trace;               // g at midpoints, kappa*trace_ppi points
  double energy = 0.0;
  bool starts_negative = true;             // sign of g(0+)
};

struct WaveformSet {
  ZeroCrossingPattern pattern;
  int kappa = 1;
  double t_nyq = 1.0;
  WindowSpec window;
  TraceOptions trace_opts;
  double energy_target = 0.0;  // per-member energy after normalization, 0 = raw
  bool paired = false;         // negation-closed with partner u <-> u +- m/2
  std::vector<Waveform> members;

  int m() const { return static_cast<int>(members.size()); }
  int n() const { return pattern.n; }
  double duration() const { return kappa * t_nyq; }
  double w_nyq() const { return 1.0 / (2.0 * t_nyq); }
  bool normalized() const { return energy_target > 0.0; }
  double power() const;  // mean member energy / duration
};

// Windows, integrates and signs one realization. The realization's crossings
// need not lie on a pattern; crossing_index is left empty here.
Waveform truncate_realization(const ProcessRealization& r, int n, double t_nyq,
                              const WindowSpec& window, double phi,
                              const TraceOptions& opts = {});

// Full admissible set: the g(0+)<0 half in lexicographic crossing-index order
// (ids 0..m/2-1), then the antipodal partners in the same order. For the
// nonuniform pattern the duplicate constant-sign pairs are removed (the
// lex-smaller member of each negation pair is kept). Certifies sign-sequence
// recovery and uniqueness; throws on failure.
WaveformSet build_full_set(const ZeroCrossingPattern& pattern, int kappa, double t_nyq,
                           const WindowSpec& window, const TraceOptions& opts = {});

// Every crossing-index vector as an antipodal pair, duplicate-sign collisions
// kept (uniqueness is not certified). Coincides with build_full_set on the
// uniform pattern.
WaveformSet build_paired_pool(const ZeroCrossingPattern& pattern, int kappa, double t_nyq,
                              const WindowSpec& window, const TraceOptions& opts = {});

// Membership in the admissible sign-sequence family: every length-n row k must
// read, in one common polarity, as j leading signs (-1)^k followed by n-j
// signs (-1)^(k-1) for some j in 1..n, or (nonuniform only) the constant row
// (-1)^(k-1). Rows are 1-based and interval-major.
bool is_admissible(std::span<const std::int8_t> sign_seq, int kappa, int n,
                   PatternKind kind = PatternKind::nonuniform);

// True when all member sign sequences are distinct.
bool certify_uniqueness(const WaveformSet& set);

// Rescales every member to energy epsilon (> 0).
void normalize_energy(WaveformSet& set, double epsilon);

}  // namespace zcq
