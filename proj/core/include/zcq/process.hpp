#pragma once

#include <span>
#include <vector>

namespace zcq {

// Factors kept on each side of the zero-crossing product.
inline constexpr int kDefaultProductDepth = 10000;

enum class PatternKind { uniform, nonuniform };

// Admissible crossing offsets within one unit interval, ascending, each in
// (0, 1]. Uniform: l/n for l = 1..n. Nonuniform: lambda/n followed by l/n.
struct ZeroCrossingPattern {
  PatternKind kind = PatternKind::uniform;
  int n = 1;             // one-bit samples per unit interval
  double lambda = 0.25;  // offset of the extra early crossing, nonuniform only
  std::vector<double> offsets;

  int positions() const { return static_cast<int>(offsets.size()); }
  // Crossing-index labels: uniform l = 1..n, nonuniform l = 0..n (0 is the
  // extra early slot at lambda/n).
  int min_index() const { return kind == PatternKind::uniform ? 1 : 0; }
  double offset_for(int l) const;
};

ZeroCrossingPattern make_pattern(PatternKind kind, int n, double lambda = 0.25);

// tau_k for k = 0..kappa-1 with tau_k in (k - 1/2, k + 1/2]; outside the
// stored range the crossings sit on the integer grid.
struct CrossingSequence {
  std::vector<double> tau;

  int kappa() const { return static_cast<int>(tau.size()); }
  void validate() const;  // throws std::invalid_argument on out-of-range tau
};

struct ProcessRealization {
  CrossingSequence crossings;
  int product_depth = kDefaultProductDepth;
};

// s(t) = (t - tau_0) prod_{k=1..K} (1 - t/tau_k)(1 - t/tau_{-k}).
// With every tau_k = k this converges to sin(pi t)/pi as K grows.
double eval_s(const ProcessRealization& r, double t);

// Shared evaluator: tau[j] overrides the integer grid at index lo + j.
// Entries must satisfy tau[j] in (lo+j - 1/2, lo+j + 1/2].
double eval_s_window(std::span<const double> tau, long lo, int product_depth, double t);

struct ShiftEquivalenceResult {
  double c = 0;            // fitted proportionality constant
  double max_rel_err = 0;  // max over grid of |ratio - c| / |c|
  int points_used = 0;
};

// Verifies s(delta_(i), t - i) = (-1)^i c_i s(delta, t) on the given grid.
// Grid points where |s| is numerically zero are skipped; throws if every
// point is skipped or the grid is empty.
ShiftEquivalenceResult shift_equivalence_check(const ProcessRealization& r, int i,
                                               std::span<const double> grid);

// True when the slowest nonuniform realization (tau_1 = 1/2 + lambda/n, all
// other crossings on the integer grid) gives the first sample integral of
// interval 1 the post-crossing (negative) sign. Uniform patterns always pass.
bool verify_lambda(const ZeroCrossingPattern& pattern, int kappa,
                   int product_depth = kDefaultProductDepth);

}  // namespace zcq
