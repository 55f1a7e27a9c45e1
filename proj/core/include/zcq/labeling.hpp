#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zcq/waveforms.hpp"

namespace zcq {

// Bijection between the m = 2^q members of a paired set and the q-bit
// tuples. Bit j (1-based, as transmitted) of member u's tuple is
// (member_to_label[u] >> (q - j)) & 1.
struct Labeling {
  int q = 0;
  std::string kind;                             // "designed" or "random"
  std::vector<std::uint32_t> member_to_label;   // size 2^q
  std::vector<int> label_to_member;             // size 2^q
  long long d_sum = 0;  // sum of label distances over sign-adjacent pairs
  int n_free = 0;       // tuples placed by the search step (designed only)

  int bit_of(int member, int j) const {  // j in 1..q
    return static_cast<int>((member_to_label[member] >> (q - j)) & 1u);
  }
};

struct LabelingOptions {
  bool allow_greedy = false;  // permit local search when n_free > exhaustive_cap
  int exhaustive_cap = 10;
  int greedy_starts = 100;
  std::uint64_t seed = 1;
};

// Structured labeling for a paired set of 2^q members with q = 2*kappa and
// four crossing positions per interval (uniform n = 4 or nonuniform n = 3).
// Tuple complements go to antipodal partners, tuples with leading bit 0 to
// the g(0+) > 0 half, and each interval's bit pair Gray-encodes the crossing
// position when the first crossing is at one of the first two positions.
// Leftover tuples are matched to leftover members by minimizing d_sum.
Labeling design_labeling(const WaveformSet& set, const LabelingOptions& opt = {});

// Unconstrained uniformly random bijection (comparison baseline).
Labeling random_labeling(const WaveformSet& set, std::uint64_t seed);

// Objective: sum over ordered member pairs at sign-sequence Hamming distance
// one of the Hamming distance between their labels.
long long labeling_d_sum(const WaveformSet& set,
                         std::span<const std::uint32_t> member_to_label);

}  // namespace zcq
