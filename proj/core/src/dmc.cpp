#include "zcq/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "zcq/math_util.hpp"
#include "zcq/parallel.hpp"

namespace zcq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> checked_input_dist(std::vector<double> dist, int m) {
  if (dist.empty()) return std::vector<double>(m, 1.0 / m);
  if (static_cast<int>(dist.size()) != m)
    throw std::invalid_argument("input distribution size mismatch");
  double sum = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw std::invalid_argument("input distribution must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("input distribution must sum to 1");
  for (double& p : dist) p /= sum;
  return dist;
}

}  // namespace

double DmcModel::row_log_prob(int u, std::uint32_t b) const {
  const int bits = kn();
  if (!log_p_plus.empty()) {
    double acc = 0.0;
    const double* lp = log_p_plus.data() + static_cast<size_t>(u) * bits;
    const double* lm = log_p_minus.data() + static_cast<size_t>(u) * bits;
    for (int i = 0; i < bits; ++i)
      acc += ((b >> (bits - 1 - i)) & 1u) ? lp[i] : lm[i];
    return acc;
  }
  double v = trans[static_cast<size_t>(u) * n_out + b];
  return v > 0.0 ? std::log(v) : kNegInf;
}

DmcModel build_dmc(const WaveformSet& set, double snr_db, std::vector<double> input_dist) {
  if (set.members.empty()) throw std::invalid_argument("dmc of an empty set");
  if (!set.normalized())
    throw std::invalid_argument("dmc requires a normalized set (power undefined otherwise)");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("snr must be finite");
  const int kn = set.kappa * set.n();
  if (kn > 20) throw std::invalid_argument("kappa*n must not exceed 20");

  DmcModel model;
  model.m = set.m();
  model.kappa = set.kappa;
  model.n = set.n();
  model.n_out = 1 << kn;
  model.snr_db = snr_db;
  model.t_nyq = set.t_nyq;
  model.input_dist = checked_input_dist(std::move(input_dist), model.m);

  const double p_sig = set.power();
  const double snr_lin = std::pow(10.0, snr_db / 10.0);
  model.n0 = p_sig / (snr_lin * set.w_nyq());
  model.sigma = std::sqrt(model.n0 * set.t_nyq / (2.0 * set.n()));

  model.samples.resize(static_cast<size_t>(model.m) * kn);
  model.sign_seq.resize(model.samples.size());
  model.log_p_plus.resize(model.samples.size());
  model.log_p_minus.resize(model.samples.size());
  for (int u = 0; u < model.m; ++u) {
    const auto& wf = set.members[u];
    for (int i = 0; i < kn; ++i) {
      size_t idx = static_cast<size_t>(u) * kn + i;
      model.samples[idx] = wf.samples[i];
      model.sign_seq[idx] = wf.sign_seq[i];
      model.log_p_plus[idx] = log_q(-wf.samples[i] / model.sigma);
      model.log_p_minus[idx] = log_q(wf.samples[i] / model.sigma);
    }
  }

  if (static_cast<long long>(model.m) * model.n_out <= kTransEntryCap) {
    model.trans.resize(static_cast<size_t>(model.m) * model.n_out);
    parallel_for(model.m, [&](std::size_t u) {
      double* row = model.trans.data() + u * model.n_out;
      for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(model.n_out); ++b) {
        double lp = model.row_log_prob(static_cast<int>(u), b);
        double p = lp == kNegInf ? 0.0 : std::exp(lp);
        row[b] = p < 1e-300 ? 0.0 : p;
      }
    });
  }
  return model;
}

DmcModel dmc_from_rows(const std::vector<std::vector<double>>& rows,
                       std::vector<double> input_dist) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("transition matrix must be nonempty");
  DmcModel model;
  model.m = static_cast<int>(rows.size());
  model.n_out = static_cast<int>(rows.front().size());
  model.input_dist = checked_input_dist(std::move(input_dist), model.m);
  model.trans.resize(static_cast<size_t>(model.m) * model.n_out);
  for (int u = 0; u < model.m; ++u) {
    if (static_cast<int>(rows[u].size()) != model.n_out)
      throw std::invalid_argument("transition matrix rows must have equal length");
    double sum = 0.0;
    for (double p : rows[u]) {
      if (!(p >= 0.0)) throw std::invalid_argument("transition probabilities must be >= 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("transition matrix rows must sum to 1");
    for (int b = 0; b < model.n_out; ++b)
      model.trans[static_cast<size_t>(u) * model.n_out + b] = rows[u][b] / sum;
  }
  return model;
}

double mutual_information(const DmcModel& model) {
  if (model.m <= 0 || model.n_out <= 0) throw std::invalid_argument("empty model");
  const auto& p_u = model.input_dist;
  const int m = model.m;
  const long long n_out = model.n_out;

  // I = sum_b sum_u p(u) p(b|u) log2 p(b|u)  -  sum_b p(b) log2 p(b),
  // accumulated over fixed output chunks so the fold order is deterministic.
  const long long chunk = 1 << 12;
  const long long n_chunks = (n_out + chunk - 1) / chunk;
  std::vector<double> cond_part(n_chunks, 0.0), out_part(n_chunks, 0.0);

  parallel_for(static_cast<std::size_t>(n_chunks), [&](std::size_t c) {
    const long long b0 = static_cast<long long>(c) * chunk;
    const long long b1 = std::min(b0 + chunk, n_out);
    double cond = 0.0, out = 0.0;
    std::vector<double> col(m);
    for (long long b = b0; b < b1; ++b) {
      double pb = 0.0;
      for (int u = 0; u < m; ++u) {
        double p;
        if (model.has_trans()) {
          p = model.trans[static_cast<size_t>(u) * n_out + b];
        } else {
          double lp = model.row_log_prob(u, static_cast<std::uint32_t>(b));
          p = lp == kNegInf ? 0.0 : std::exp(lp);
          if (p < 1e-300) p = 0.0;
        }
        col[u] = p;
        pb += p_u[u] * p;
      }
      if (pb <= 0.0) continue;
      for (int u = 0; u < m; ++u)
        if (col[u] > 0.0 && p_u[u] > 0.0) cond += p_u[u] * col[u] * std::log2(col[u]);
      out += pb * std::log2(pb);
    }
    cond_part[c] = cond;
    out_part[c] = out;
  });

  double cond = 0.0, out = 0.0;
  for (long long c = 0; c < n_chunks; ++c) {
    cond += cond_part[c];
    out += out_part[c];
  }
  return cond - out;
}

BlahutArimotoResult blahut_arimoto(const DmcModel& model, double tol, int max_iter) {
  if (!model.has_trans())
    throw std::invalid_argument("capacity iteration requires a materialized matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int m = model.m;
  const long long n_out = model.n_out;
  const double ln2 = std::log(2.0);

  std::vector<double> p(m, 1.0 / m), q(n_out, 0.0), d(m, 0.0);
  for (int it = 1; it <= max_iter; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (int u = 0; u < m; ++u) {
      if (p[u] <= 0.0) continue;
      const double* row = model.trans.data() + static_cast<size_t>(u) * n_out;
      for (long long b = 0; b < n_out; ++b) q[b] += p[u] * row[b];
    }
    parallel_for(m, [&](std::size_t u) {
      const double* row = model.trans.data() + u * n_out;
      double acc = 0.0;
      for (long long b = 0; b < n_out; ++b)
        if (row[b] > 0.0) acc += row[b] * std::log(row[b] / q[b]);
      d[u] = acc;
    });
    // Arimoto bounds: up = max_u D(u), low = ln sum_u p_u exp(D(u)).
    double dmax = *std::max_element(d.begin(), d.end());
    double s = 0.0;
    for (int u = 0; u < m; ++u) s += p[u] * std::exp(d[u] - dmax);
    double low = dmax + std::log(s);
    if (dmax - low <= tol * ln2) {
      BlahutArimotoResult res;
      res.capacity_bits = low / ln2;
      res.input_dist = p;
      res.iterations = it;
      return res;
    }
    double norm = 0.0;
    for (int u = 0; u < m; ++u) {
      p[u] *= std::exp(d[u] - dmax);
      norm += p[u];
    }
    for (double& v : p) v /= norm;
  }
  // Report the residual gap so callers can judge how far the run got.
  std::fill(q.begin(), q.end(), 0.0);
  for (int u = 0; u < m; ++u) {
    const double* row = model.trans.data() + static_cast<size_t>(u) * n_out;
    for (long long b = 0; b < n_out; ++b) q[b] += p[u] * row[b];
  }
  double up = -std::numeric_limits<double>::infinity();
  for (int u = 0; u < m; ++u) {
    const double* row = model.trans.data() + static_cast<size_t>(u) * n_out;
    double acc = 0.0;
    for (long long b = 0; b < n_out; ++b)
      if (row[b] > 0.0) acc += row[b] * std::log(row[b] / q[b]);
    up = std::max(up, acc);
  }
  throw std::runtime_error("capacity iteration did not converge; upper bound " +
                           std::to_string(up / ln2) + " bits after " +
                           std::to_string(max_iter) + " iterations");
}

long long max_set_size(int kappa, int n) {
  if (kappa < 1 || n < 1) throw std::invalid_argument("max_set_size requires kappa,n >= 1");
  long long a = 1, b = 1;
  for (int i = 0; i < kappa; ++i) {
    if (a > (1LL << 62) / (n + 1)) throw std::overflow_error("set size overflows");
    a *= n + 1;
    b *= 2;
  }
  return 2 * a - b;
}

double r_max(int kappa, int n, double t_nyq) {
  if (!(t_nyq > 0.0)) throw std::invalid_argument("t_nyq must be positive");
  return std::log2(static_cast<double>(max_set_size(kappa, n))) / (kappa * t_nyq);
}

double r_unif(int kappa, int n, double t_nyq) {
  if (kappa < 1 || n < 1 || !(t_nyq > 0.0)) throw std::invalid_argument("bad r_unif args");
  return (std::log2(static_cast<double>(n)) + 1.0 / kappa) / t_nyq;
}

double stationary_sign_upper_bound(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n == 1) return 0.0;
  return std::log2(static_cast<double>(n)) +
         (n - 1) * std::log2(static_cast<double>(n) / (n - 1));
}

namespace {

struct RankedSelection {
  std::vector<int> pairs;
  double eta = 0.0;
};

// Top pairs_wanted pairs by in-band energy at bandwidth w, skipping sign
// sequences already taken up to negation.
RankedSelection rank_and_take(const WaveformSet& set, const PairSpectra& ps,
                              int pairs_wanted, double w) {
  const int half = static_cast<int>(ps.cum.size());
  std::vector<std::pair<double, int>> order(half);
  for (int p = 0; p < half; ++p) order[p] = {pair_in_band(ps, p, w), p};
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<std::vector<std::int8_t>> taken_keys;
  RankedSelection sel;
  double in_band = 0.0, total = 0.0;
  for (const auto& [e, p] : order) {
    if (static_cast<int>(sel.pairs.size()) == pairs_wanted) break;
    // Canonical key: the lexicographically smaller of the sequence and its negation.
    std::vector<std::int8_t> key = set.members[p].sign_seq;
    std::vector<std::int8_t> neg(key.size());
    for (size_t i = 0; i < key.size(); ++i) neg[i] = -key[i];
    if (neg < key) key = neg;
    if (std::find(taken_keys.begin(), taken_keys.end(), key) != taken_keys.end()) continue;
    taken_keys.push_back(std::move(key));
    sel.pairs.push_back(p);
    in_band += e;
    total += ps.energy[p];
  }
  if (static_cast<int>(sel.pairs.size()) < pairs_wanted)
    throw std::invalid_argument("not enough distinct pairs to select from");
  sel.eta = total > 0.0 ? in_band / total : 0.0;
  return sel;
}

}  // namespace

SubsetBandwidth select_bandwidth(const WaveformSet& set, const PairSpectra& ps,
                                 int pairs_wanted, const SelectionOptions& opts) {
  if (pairs_wanted < 1) throw std::invalid_argument("must select at least one pair");
  if (!(opts.eta > 0.0 && opts.eta < 1.0)) throw std::invalid_argument("eta must be in (0,1)");
  double lo = set.w_nyq();
  double hi = opts.w_hi_factor * set.w_nyq();

  RankedSelection at_hi = rank_and_take(set, ps, pairs_wanted, hi);
  if (at_hi.eta < opts.eta)
    throw std::runtime_error("containment target unreachable within the bandwidth range");
  RankedSelection at_lo = rank_and_take(set, ps, pairs_wanted, lo);
  SubsetBandwidth out;
  if (at_lo.eta >= opts.eta) {  // already contained at the Nyquist edge of the range
    out.w_eta = lo;
    out.eta = at_lo.eta;
    out.pair_ids = std::move(at_lo.pairs);
    return out;
  }

  RankedSelection best = std::move(at_hi);
  for (int it = 0; it < opts.max_bisect; ++it) {
    if (best.eta <= opts.eta + opts.eta_slack) break;
    double mid = 0.5 * (lo + hi);
    RankedSelection at_mid = rank_and_take(set, ps, pairs_wanted, mid);
    if (at_mid.eta < opts.eta) {
      lo = mid;
    } else {
      hi = mid;
      best = std::move(at_mid);
    }
  }
  out.w_eta = hi;
  out.eta = best.eta;
  out.pair_ids = std::move(best.pairs);
  return out;
}

WaveformSet subset_by_pairs(const WaveformSet& set, std::span<const int> pair_ids) {
  if (!set.paired) throw std::invalid_argument("subset_by_pairs requires a paired set");
  const int half = set.m() / 2;
  WaveformSet sub;
  sub.pattern = set.pattern;
  sub.kappa = set.kappa;
  sub.t_nyq = set.t_nyq;
  sub.window = set.window;
  sub.trace_opts = set.trace_opts;
  sub.energy_target = set.energy_target;
  sub.paired = true;
  sub.members.reserve(2 * pair_ids.size());
  for (int p : pair_ids) {
    if (p < 0 || p >= half) throw std::invalid_argument("subset_by_pairs: pair id out of range");
    sub.members.push_back(set.members[p]);
  }
  for (int p : pair_ids) sub.members.push_back(set.members[p + half]);
  for (int i = 0; i < sub.m(); ++i) sub.members[i].id = i;
  return sub;
}

SelectionResult heuristic_select(const WaveformSet& set, double snr_db, int m_target,
                                 const SelectionOptions& opts) {
  if (!set.paired) throw std::invalid_argument("selection requires a paired set");
  if (!set.normalized()) throw std::invalid_argument("selection requires a normalized set");
  if (m_target < 2 || m_target % 2) throw std::invalid_argument("m_target must be even and >= 2");
  if (m_target > set.m()) throw std::invalid_argument("m_target exceeds the set size");

  PairSpectra ps = compute_pair_spectra(set, opts.spectral);
  SubsetBandwidth sb = select_bandwidth(set, ps, m_target / 2, opts);

  SelectionResult res;
  res.pair_ids = sb.pair_ids;
  res.w_eta = sb.w_eta;
  res.eta = sb.eta;
  res.snr_db = snr_db;
  res.subset = subset_by_pairs(set, res.pair_ids);

  DmcModel dmc = build_dmc(res.subset, snr_db);
  res.mi_bits = mutual_information(dmc);
  res.rate = res.mi_bits / res.subset.duration();
  res.se = spectral_efficiency(res.rate, res.w_eta);
  res.se_per_dim = 0.5 * res.se;
  return res;
}

}  // namespace zcq
