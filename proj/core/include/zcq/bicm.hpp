#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zcq/dmc.hpp"
#include "zcq/interleaver.hpp"
#include "zcq/labeling.hpp"
#include "zcq/ldpc.hpp"

namespace zcq {

// All LLRs are log(p0/p1); a positive value favors bit 0.

struct BicmOptions {
  int demod_iters = 5;
  int ldpc_iters = 50;
  double llr_clip = 30.0;
  bool use_interleaver = true;
  std::uint64_t seed = 1;
  int block_frames = 256;            // accounting granularity; fixes stopping
  long long max_frames = 100000;
  int target_frame_errors = 100;
  unsigned max_threads = 0;          // 0 = hardware concurrency
};

// Channel LLRs for one symbol: observed output b and per-bit prior
// log-probabilities (lp0/lp1, size q). Bit j's own prior is excluded from
// its LLR. Outputs may be +-inf when priors pin bits.
void demod_symbol_llr(const DmcModel& dmc, const Labeling& lab, std::uint32_t b,
                      std::span<const double> lp0, std::span<const double> lp1,
                      std::span<double> out_llr);

struct FrameResult {
  int bit_errors = 0;       // over the k message bits
  bool frame_error = false;
  int demod_rounds = 0;     // demodulator-decoder rounds actually run
  bool decoded = false;     // decoder syndrome cleared
};

// One coded frame end to end: random message, LDPC encoding, zero padding to
// a whole number of symbols, (optional) interleaving, exact channel draw,
// and the iterative demodulator-decoder loop. Message and noise depend only
// on (opt.seed, frame_index).
FrameResult run_coded_frame(const DmcModel& dmc, const Labeling& lab,
                            const LdpcCode& code, const BicmOptions& opt,
                            std::uint64_t frame_index);

struct BerPoint {
  double snr_db = 0;
  long long frames = 0, bit_errors = 0, frame_errors = 0;
  double ber = 0, fer = 0;
};

// Monte Carlo at the model's SNR. Frames run in fixed-size blocks and the
// stopping rule is evaluated per block, so the result does not depend on the
// thread count.
BerPoint run_ber_point(const DmcModel& dmc, const Labeling& lab, const LdpcCode& code,
                       const BicmOptions& opt);

}  // namespace zcq
