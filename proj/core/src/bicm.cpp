#include "zcq/bicm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "zcq/math_util.hpp"
#include "zcq/parallel.hpp"
#include "zcq/rng.hpp"

namespace zcq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact channel draw: per-position sign of sample + noise, packed with
// position 0 at the top bit.
std::uint32_t transmit_symbol(const DmcModel& dmc, const CounterRng& rng,
                              std::uint64_t noise_stream, std::uint64_t sym_index, int u) {
  const int kn = dmc.kn();
  std::uint32_t b = 0;
  for (int i = 0; i < kn; ++i) {
    const double z = rng.normal(noise_stream, sym_index * static_cast<std::uint64_t>(kn) + i);
    const double val = dmc.samples[static_cast<std::size_t>(u) * kn + i] + dmc.sigma * z;
    b = (b << 1) | (val > 0.0 ? 1u : 0u);
  }
  return b;
}

// L = log(p0/p1) -> (log p0, log p1).
void llr_to_logprobs(double llr, double& lp0, double& lp1) {
  if (std::isinf(llr)) {
    lp0 = llr > 0 ? 0.0 : -kInf;
    lp1 = llr > 0 ? -kInf : 0.0;
    return;
  }
  if (llr >= 0) {
    lp0 = -std::log1p(std::exp(-llr));
    lp1 = lp0 - llr;
  } else {
    lp1 = -std::log1p(std::exp(llr));
    lp0 = lp1 + llr;
  }
}

Interleaver identity_interleaver(int n_groups, int q) {
  Interleaver pi;
  pi.n_groups = n_groups;
  pi.q = q;
  pi.perm.resize(static_cast<std::size_t>(n_groups) * q);
  std::iota(pi.perm.begin(), pi.perm.end(), 0);
  return pi;
}

}  // namespace

void demod_symbol_llr(const DmcModel& dmc, const Labeling& lab, std::uint32_t b,
                      std::span<const double> lp0, std::span<const double> lp1,
                      std::span<double> out_llr) {
  const int q = lab.q;
  const int m = dmc.m;
  if (m != static_cast<int>(lab.member_to_label.size())) {
    throw std::invalid_argument("demod_symbol_llr: labeling does not match the model");
  }
  if (static_cast<int>(lp0.size()) != q || static_cast<int>(lp1.size()) != q ||
      static_cast<int>(out_llr.size()) != q) {
    throw std::invalid_argument("demod_symbol_llr: bad span size");
  }

  // Prefix/suffix prior sums per member keep a bit's own prior out of its
  // LLR without subtracting (priors may be -inf for pinned bits).
  static thread_local std::vector<double> row, pre, suf, side0, side1;
  row.resize(m);
  pre.resize(static_cast<std::size_t>(m) * (q + 1));
  suf.resize(static_cast<std::size_t>(m) * (q + 1));
  for (int u = 0; u < m; ++u) {
    row[u] = dmc.row_log_prob(u, b);
    double* pu = &pre[static_cast<std::size_t>(u) * (q + 1)];
    double* su = &suf[static_cast<std::size_t>(u) * (q + 1)];
    pu[0] = 0.0;
    su[q] = 0.0;
    for (int j = 1; j <= q; ++j) {
      pu[j] = pu[j - 1] + (lab.bit_of(u, j) ? lp1[j - 1] : lp0[j - 1]);
    }
    for (int j = q - 1; j >= 0; --j) {
      su[j] = su[j + 1] + (lab.bit_of(u, j + 1) ? lp1[j] : lp0[j]);
    }
  }
  for (int j = 1; j <= q; ++j) {
    side0.clear();
    side1.clear();
    for (int u = 0; u < m; ++u) {
      const double w = row[u] + pre[static_cast<std::size_t>(u) * (q + 1) + j - 1] +
                       suf[static_cast<std::size_t>(u) * (q + 1) + j];
      (lab.bit_of(u, j) ? side1 : side0).push_back(w);
    }
    out_llr[j - 1] = logsumexp(side0) - logsumexp(side1);
  }
}

FrameResult run_coded_frame(const DmcModel& dmc, const Labeling& lab,
                            const LdpcCode& code, const BicmOptions& opt,
                            std::uint64_t frame_index) {
  const int q = lab.q;
  if (dmc.m != (1 << q) || dmc.m != static_cast<int>(lab.member_to_label.size())) {
    throw std::invalid_argument("run_coded_frame: model/labeling size mismatch");
  }
  if (dmc.kn() > 31) throw std::invalid_argument("run_coded_frame: symbol too wide");
  const int n_pads = (q - code.n % q) % q;
  const int frame_bits = code.n + n_pads;
  const int n_sym = frame_bits / q;
  const Interleaver pi = opt.use_interleaver ? make_interleaver(n_sym, q)
                                             : identity_interleaver(n_sym, q);
  const Interleaver inv = inverse(pi);
  const double clip = opt.llr_clip;

  const CounterRng rng{opt.seed};
  const std::uint64_t msg_stream = 2 * frame_index;
  const std::uint64_t noise_stream = 2 * frame_index + 1;

  std::vector<std::uint8_t> msg(code.k);
  for (int i = 0; i < code.k; ++i) {
    msg[i] = static_cast<std::uint8_t>((rng.bits(msg_stream, i / 64) >> (i % 64)) & 1u);
  }
  const std::vector<std::uint8_t> cw = code.encode(msg);
  std::vector<std::uint8_t> coded(frame_bits, 0);
  std::copy(cw.begin(), cw.end(), coded.begin());

  std::vector<std::uint32_t> obs(n_sym);
  for (int t = 0; t < n_sym; ++t) {
    std::uint32_t tuple = 0;
    for (int j = 0; j < q; ++j) tuple = (tuple << 1) | coded[pi.perm[t * q + j]];
    obs[t] = transmit_symbol(dmc, rng, noise_stream, t, lab.label_to_member[tuple]);
  }

  // Priors live in the interleaved (symbol) domain; pads are pinned to zero.
  std::vector<double> lp0(frame_bits, -std::numbers::ln2), lp1(frame_bits, -std::numbers::ln2);
  for (int p = code.n; p < frame_bits; ++p) {
    lp0[inv.perm[p]] = 0.0;
    lp1[inv.perm[p]] = -kInf;
  }

  std::vector<double> llr_sym(frame_bits), llr_in(code.n);
  FrameResult res;
  LdpcDecodeResult dec;
  for (int round = 1; round <= opt.demod_iters; ++round) {
    res.demod_rounds = round;
    for (int t = 0; t < n_sym; ++t) {
      demod_symbol_llr(dmc, lab, obs[t],
                       std::span<const double>(lp0).subspan(t * q, q),
                       std::span<const double>(lp1).subspan(t * q, q),
                       std::span<double>(llr_sym).subspan(t * q, q));
    }
    for (int i = 0; i < frame_bits; ++i) {
      const int cpos = pi.perm[i];
      if (cpos < code.n) llr_in[cpos] = std::clamp(llr_sym[i], -clip, clip);
    }
    dec = ldpc_decode(code, llr_in, opt.ldpc_iters, clip);
    if (dec.syndrome_ok) {
      res.decoded = true;
      break;
    }
    if (round == opt.demod_iters) break;
    for (int c = 0; c < code.n; ++c) {
      const double ext = std::clamp(dec.llr_app[c] - llr_in[c], -clip, clip);
      llr_to_logprobs(ext, lp0[inv.perm[c]], lp1[inv.perm[c]]);
    }
  }

  for (int i = 0; i < code.k; ++i) res.bit_errors += dec.hard[code.msg_cols[i]] != msg[i];
  res.frame_error = res.bit_errors > 0;
  return res;
}

BerPoint run_ber_point(const DmcModel& dmc, const Labeling& lab, const LdpcCode& code,
                       const BicmOptions& opt) {
  if (opt.block_frames < 1 || opt.max_frames < 1 || opt.target_frame_errors < 1) {
    throw std::invalid_argument("run_ber_point: bad stopping parameters");
  }
  BerPoint pt;
  pt.snr_db = dmc.snr_db;
  std::vector<FrameResult> block;
  while (pt.frames < opt.max_frames && pt.frame_errors < opt.target_frame_errors) {
    const std::uint64_t base = static_cast<std::uint64_t>(pt.frames);
    const int nb = static_cast<int>(std::min<long long>(opt.block_frames,
                                                        opt.max_frames - pt.frames));
    block.assign(nb, FrameResult{});
    parallel_for(static_cast<std::size_t>(nb),
                 [&](std::size_t s) {
                   block[s] = run_coded_frame(dmc, lab, code, opt, base + s);
                 },
                 opt.max_threads);
    for (const FrameResult& fr : block) {
      ++pt.frames;
      pt.bit_errors += fr.bit_errors;
      pt.frame_errors += fr.frame_error ? 1 : 0;
    }
  }
  pt.ber = pt.frames ? static_cast<double>(pt.bit_errors) /
                           (static_cast<double>(pt.frames) * code.k)
                     : 0.0;
  pt.fer = pt.frames ? static_cast<double>(pt.frame_errors) / static_cast<double>(pt.frames)
                     : 0.0;
  return pt;
}

}  // namespace zcq
