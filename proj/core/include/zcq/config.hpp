#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zcq/bicm.hpp"
#include "zcq/dmc.hpp"
#include "zcq/labeling.hpp"
#include "zcq/process.hpp"
#include "zcq/waveforms.hpp"

namespace zcq {

// One flat bag of knobs shared by the CLI subcommands. JSON round-trips are
// strict: unknown keys and wrong types are errors, and the canonical dump
// (sorted keys) is what gets hashed into run sidecars.
struct SimConfig {
  // signal construction
  std::string pattern = "uniform";  // "uniform" | "nonuniform"
  int n = 4;
  double lambda = 0.25;
  int kappa = 3;
  double t_nyq = 1.0;
  std::string window = "hard";  // "hard" | "raised_cosine"
  double alpha = 0.0;
  double energy = 0.0;  // per-member energy; 0 = unit mean power
  int trace_ppi = 256;
  int quad_panels = 64;
  int product_depth = kDefaultProductDepth;
  // spectra
  int zero_pad_factor = 16;
  double eta = 0.95;
  int periodogram_symbols = 0;  // 0 = analytic spectrum only
  std::uint64_t noise_seed = 99;
  // subset selection
  int m_target = 64;
  double eta_slack = 0.002;
  double w_hi_factor = 4.0;
  int max_bisect = 40;
  // operating point / sweeps
  double snr_db = 10.0;
  double snr_start = 0.0;
  double snr_stop = 20.0;
  double snr_step = 1.0;
  std::vector<int> m_list;  // rate sweep; empty = {m_target}
  std::vector<int> n_list;  // asymptote study; empty = {2,4,8,16}
  // capacity iteration
  double ba_tol = 1e-8;
  int ba_max_iter = 10000;
  // labeling
  std::string labeling = "designed";  // "designed" | "random"
  bool allow_greedy = false;
  std::uint64_t label_seed = 1;
  // code
  int ldpc_n = 1024;
  int ldpc_k = 832;
  int ldpc_col_weight = 3;
  std::uint64_t ldpc_seed = 7;
  // coded simulation
  int demod_iters = 5;
  int ldpc_iters = 50;
  double llr_clip = 30.0;
  bool use_interleaver = true;
  std::uint64_t sim_seed = 1;
  int block_frames = 256;
  long long max_frames = 100000;
  int target_frame_errors = 100;
  int max_threads = 0;
};

SimConfig parse_config_json(const std::string& text);
SimConfig load_config_file(const std::string& path);
std::string canonical_config_json(const SimConfig& c);
std::uint64_t config_hash(const SimConfig& c);

// Translations into the core parameter structs.
ZeroCrossingPattern config_pattern(const SimConfig& c);
WindowSpec config_window(const SimConfig& c);
TraceOptions config_trace(const SimConfig& c);
SelectionOptions config_selection(const SimConfig& c);
LabelingOptions config_labeling(const SimConfig& c);
BicmOptions config_bicm(const SimConfig& c);
double config_energy(const SimConfig& c);  // resolves 0 to kappa * t_nyq

}  // namespace zcq
