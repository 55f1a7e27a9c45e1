#include "zcq/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zcq/spectral.hpp"

namespace zcq {

WaveformSet build_configured_set(const SimConfig& c) {
  WaveformSet set = build_full_set(config_pattern(c), c.kappa, c.t_nyq, config_window(c),
                                   config_trace(c));
  normalize_energy(set, config_energy(c));
  return set;
}

std::vector<RatePoint> sweep_rate(const SimConfig& c, std::span<const double> alphas,
                                  std::span<const int> m_values) {
  std::vector<RatePoint> out;
  const SelectionOptions sel = config_selection(c);
  for (double a : alphas) {
    SimConfig cc = c;
    cc.alpha = a;
    cc.window = a > 0.0 ? "raised_cosine" : c.window;
    const WaveformSet set = build_configured_set(cc);
    for (int m : m_values) {
      if (m > set.m()) continue;
      const SelectionResult r = heuristic_select(set, c.snr_db, m, sel);
      RatePoint pt;
      pt.alpha = a;
      pt.m = m;
      pt.snr_db = c.snr_db;
      pt.w_eta = r.w_eta;
      pt.eta = r.eta;
      pt.mi_bits = r.mi_bits;
      pt.rate = r.rate;
      pt.se = r.se;
      pt.se_per_dim = r.se_per_dim;
      out.push_back(pt);
    }
  }
  return out;
}

SnrSweep sweep_snr(const SimConfig& c) {
  if (c.snr_step <= 0 || c.snr_stop < c.snr_start) {
    throw std::invalid_argument("sweep_snr: bad SNR range");
  }
  const WaveformSet set = build_configured_set(c);
  const SelectionOptions sel = config_selection(c);
  const PairSpectra ps = compute_pair_spectra(set, sel.spectral);
  const SubsetBandwidth sb = select_bandwidth(set, ps, c.m_target / 2, sel);
  const WaveformSet sub = subset_by_pairs(set, sb.pair_ids);

  SnrSweep sweep;
  sweep.pair_ids = sb.pair_ids;
  sweep.w_eta = sb.w_eta;
  sweep.eta = sb.eta;
  for (double snr = c.snr_start; snr <= c.snr_stop + 1e-9; snr += c.snr_step) {
    const DmcModel dmc = build_dmc(sub, snr);
    SnrPoint pt;
    pt.snr_db = snr;
    pt.mi_bits = mutual_information(dmc);
    pt.capacity_bits = blahut_arimoto(dmc, c.ba_tol, c.ba_max_iter).capacity_bits;
    pt.rate = pt.mi_bits / sub.duration();
    pt.se = spectral_efficiency(pt.rate, sb.w_eta);
    pt.se_per_dim = 0.5 * pt.se;
    sweep.points.push_back(pt);
  }
  return sweep;
}

CodedSystem make_coded_system(const SimConfig& c) {
  const WaveformSet set = build_configured_set(c);
  const SelectionOptions sel = config_selection(c);
  const PairSpectra ps = compute_pair_spectra(set, sel.spectral);
  const SubsetBandwidth sb = select_bandwidth(set, ps, c.m_target / 2, sel);

  CodedSystem sys;
  sys.subset = subset_by_pairs(set, sb.pair_ids);
  sys.pair_ids = sb.pair_ids;
  sys.w_eta = sb.w_eta;
  sys.eta = sb.eta;
  sys.labeling = c.labeling == "designed" ? design_labeling(sys.subset, config_labeling(c))
                                          : random_labeling(sys.subset, c.label_seed);
  sys.code = ldpc_construct(c.ldpc_n, c.ldpc_k, c.ldpc_col_weight, c.ldpc_seed);
  return sys;
}

BerPoint coded_ber_at(const CodedSystem& sys, const SimConfig& c, double snr_db) {
  const DmcModel dmc = build_dmc(sys.subset, snr_db);
  return run_ber_point(dmc, sys.labeling, sys.code, config_bicm(c));
}

std::vector<BerPoint> sweep_ber(const SimConfig& c) {
  if (c.snr_step <= 0 || c.snr_stop < c.snr_start) {
    throw std::invalid_argument("sweep_ber: bad SNR range");
  }
  const CodedSystem sys = make_coded_system(c);
  std::vector<BerPoint> out;
  for (double snr = c.snr_start; snr <= c.snr_stop + 1e-9; snr += c.snr_step) {
    out.push_back(coded_ber_at(sys, c, snr));
  }
  return out;
}

std::vector<AsymptotePoint> asymptote_table(const SimConfig& c) {
  std::vector<int> n_values = c.n_list;
  if (n_values.empty()) n_values = {2, 4, 8, 16};
  const SelectionOptions sel = config_selection(c);

  std::vector<AsymptotePoint> out;
  for (int n : n_values) {
    SimConfig cc = c;
    cc.n = n;
    const WaveformSet set = build_configured_set(cc);
    const PairSpectra ps = compute_pair_spectra(set, sel.spectral);
    const double w_nyq = set.w_nyq();

    AsymptotePoint best;
    best.n = n;
    for (int p = 2; p <= set.m() / 2; ++p) {
      SubsetBandwidth sb;
      try {
        sb = select_bandwidth(set, ps, p, sel);
      } catch (const std::runtime_error&) {
        continue;  // containment target unreachable at this size
      }
      const double se_inf = std::log2(2.0 * p) / (set.duration() * sb.w_eta);
      if (se_inf > best.se_inf) {
        best.m_best = 2 * p;
        best.w_eta = sb.w_eta;
        best.eta = sb.eta;
        best.n_eff = n * w_nyq / sb.w_eta;
        best.se_inf = se_inf;
        best.se_inf_per_dim = 0.5 * se_inf;
      }
    }
    if (best.m_best == 0) {
      throw std::runtime_error("asymptote_table: no feasible subset at n = " +
                               std::to_string(n));
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace zcq
