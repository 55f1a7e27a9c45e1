#pragma once

#include <cstdint>
#include <vector>

#include "zcq/spectral.hpp"
#include "zcq/waveforms.hpp"

namespace zcq {

// Full transition matrices are materialized only below this entry count;
// larger models keep the per-position tables and stream rows on demand.
inline constexpr long long kTransEntryCap = 1LL << 26;

struct DmcModel {
  int m = 0, kappa = 0, n = 0, n_out = 0;
  double snr_db = 0, n0 = 0, sigma = 0, t_nyq = 1.0;
  std::vector<double> input_dist;         // p(u), size m
  std::vector<double> samples;            // m x kappa*n sub-interval integrals
  std::vector<std::int8_t> sign_seq;      // m x kappa*n
  std::vector<double> log_p_plus;         // log Pr(sign +1 | u, position)
  std::vector<double> log_p_minus;
  std::vector<double> trans;              // m x n_out, empty when above the cap

  int kn() const { return kappa * n; }
  bool has_trans() const { return !trans.empty(); }
  double duration() const { return kappa * t_nyq; }
  // Outputs are integers with the sign of position i = (k-1)n + (l-1)
  // (interval-major) at bit kn-1-i; bit 1 encodes sign +1.
  double row_log_prob(int u, std::uint32_t b) const;
};

// Exact one-bit DMC of a normalized set at the given SNR (dB): noise level
// N0 = P / (snr * W_nyq), per-sample sigma^2 = N0 T_N / (2n). Empty
// input_dist means uniform. Requires kappa*n <= 20.
DmcModel build_dmc(const WaveformSet& set, double snr_db,
                   std::vector<double> input_dist = {});

// Synthetic model from an explicit row-stochastic matrix (tests, studies).
DmcModel dmc_from_rows(const std::vector<std::vector<double>>& rows,
                       std::vector<double> input_dist = {});

// Exact I(U; B) in bits per channel use by direct summation over outputs.
double mutual_information(const DmcModel& model);

struct BlahutArimotoResult {
  double capacity_bits = 0;
  std::vector<double> input_dist;
  int iterations = 0;
};

// Capacity of the model's transition matrix to within tol bits; throws with
// the residual gap if max_iter is exhausted.
BlahutArimotoResult blahut_arimoto(const DmcModel& model, double tol = 1e-8,
                                   int max_iter = 10000);

long long max_set_size(int kappa, int n);                  // 2(n+1)^kappa - 2^kappa
double r_max(int kappa, int n, double t_nyq);              // log2(max_set_size)/(kappa T_N)
double r_unif(int kappa, int n, double t_nyq);             // (log2 n + 1/kappa)/T_N
double stationary_sign_upper_bound(int n);                 // log2 n + (n-1)log2(n/(n-1))

struct SelectionOptions {
  double eta = 0.95;
  double eta_slack = 0.002;   // accept containment in [eta, eta + slack]
  int max_bisect = 40;
  double w_hi_factor = 4.0;   // bandwidth search range [W_nyq, factor * W_nyq]
  SpectralOptions spectral;
};

struct SubsetBandwidth {
  double w_eta = 0, eta = 0;
  std::vector<int> pair_ids;  // selected pairs, indices into the phi>0 half
};

// In-band-energy ranking with bandwidth bisection: returns the tightest W in
// the search range whose top-ranked admissible subset reaches the containment
// target. Pairs are re-ranked at every bandwidth update; ties break toward
// the lower pair id; duplicate sign sequences (up to negation) are skipped.
SubsetBandwidth select_bandwidth(const WaveformSet& set, const PairSpectra& ps,
                                 int pairs_wanted, const SelectionOptions& opts = {});

// Paired sub-set of the given pairs (indices into the phi>0 half), partners
// appended, ids renumbered.
WaveformSet subset_by_pairs(const WaveformSet& set, std::span<const int> pair_ids);

struct SelectionResult {
  WaveformSet subset;
  std::vector<int> pair_ids;
  double w_eta = 0, eta = 0;
  double mi_bits = 0, rate = 0, se = 0, se_per_dim = 0;
  double snr_db = 0;
};

// Full heuristic: bandwidth-constrained subset selection, then the exact DMC
// rate and spectral efficiency of the chosen subset at snr_db.
SelectionResult heuristic_select(const WaveformSet& set, double snr_db, int m_target,
                                 const SelectionOptions& opts = {});

}  // namespace zcq
