#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zcq {

// Regular LDPC code: n-k checks, column weight col_weight, row weights kept
// uniform, 4-cycles avoided where the growth allows. H is full rank (the
// seed is varied internally until it is; the result is still a pure function
// of the arguments). Encoding is systematic on msg_cols.
struct LdpcCode {
  int n = 0, k = 0, col_weight = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> rows;  // per check: sorted column indices
  std::vector<std::vector<int>> cols;  // per column: check indices
  std::vector<int> msg_cols;           // size k
  std::vector<int> parity_cols;        // size n-k
  std::vector<std::vector<std::uint64_t>> parity_eq;  // per parity: packed msg mask

  std::vector<std::uint8_t> encode(std::span<const std::uint8_t> msg) const;
  bool check(std::span<const std::uint8_t> codeword) const;  // H c == 0
};

LdpcCode ldpc_construct(int n, int k, int col_weight, std::uint64_t seed);

// Rebuilds cols, the systematic split and the encoder tables from rows;
// throws if H is rank deficient. Used by the constructor and the loader.
void ldpc_finalize(LdpcCode& code);

struct LdpcDecodeResult {
  std::vector<double> llr_app;     // posterior LLRs, log(p0/p1)
  std::vector<std::uint8_t> hard;  // 1 = bit one
  int iterations = 0;
  bool syndrome_ok = false;
};

// Flooding sum-product decoding; llr_in uses log(p0/p1). Inputs and messages
// are clipped to +-llr_clip. Stops early once the syndrome clears.
LdpcDecodeResult ldpc_decode(const LdpcCode& code, std::span<const double> llr_in,
                             int max_iter, double llr_clip = 30.0);

}  // namespace zcq
