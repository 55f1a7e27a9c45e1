#pragma once

#include <span>
#include <vector>

#include "zcq/bicm.hpp"
#include "zcq/config.hpp"
#include "zcq/dmc.hpp"
#include "zcq/labeling.hpp"
#include "zcq/ldpc.hpp"
#include "zcq/waveforms.hpp"

namespace zcq {

// Full admissible set for the configured pattern, energy normalized.
WaveformSet build_configured_set(const SimConfig& c);

struct RatePoint {
  double alpha = 0;
  int m = 0;
  double snr_db = 0, w_eta = 0, eta = 0;
  double mi_bits = 0, rate = 0, se = 0, se_per_dim = 0;
};

// Spectral efficiency across set sizes (and window roll-offs) at one SNR.
std::vector<RatePoint> sweep_rate(const SimConfig& c, std::span<const double> alphas,
                                  std::span<const int> m_values);

struct SnrPoint {
  double snr_db = 0;
  double mi_bits = 0, capacity_bits = 0;
  double rate = 0, se = 0, se_per_dim = 0;
};

struct SnrSweep {
  std::vector<int> pair_ids;
  double w_eta = 0, eta = 0;
  std::vector<SnrPoint> points;
};

// Subset selected once (selection is SNR independent), then exact rate and
// capacity per SNR over [snr_start, snr_stop] in snr_step increments.
SnrSweep sweep_snr(const SimConfig& c);

// Everything SNR independent about the coded link.
struct CodedSystem {
  WaveformSet subset;
  std::vector<int> pair_ids;
  double w_eta = 0, eta = 0;
  Labeling labeling;
  LdpcCode code;
};

CodedSystem make_coded_system(const SimConfig& c);

BerPoint coded_ber_at(const CodedSystem& sys, const SimConfig& c, double snr_db);

// BER across the configured SNR range.
std::vector<BerPoint> sweep_ber(const SimConfig& c);

struct AsymptotePoint {
  int n = 0, m_best = 0;
  double w_eta = 0, eta = 0, n_eff = 0;
  double se_inf = 0, se_inf_per_dim = 0;
};

// High-SNR spectral efficiency per oversampling factor: for each n the set
// size is optimized over an exhaustive scan of even subset sizes using the
// saturated rate log2(m) / (kappa T_N), no channel model needed.
std::vector<AsymptotePoint> asymptote_table(const SimConfig& c);

}  // namespace zcq
