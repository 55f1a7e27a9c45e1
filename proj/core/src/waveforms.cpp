#include "zcq/waveforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zcq/parallel.hpp"

namespace zcq {

double window_value(const WindowSpec& w, double t, double duration) {
  if (t <= 0.0 || t > duration) return 0.0;
  if (w.kind == WindowSpec::Kind::hard || w.alpha <= 0.0) return 1.0;
  // Raised-cosine taper inside the support: flat middle, sin^2 ramps of width
  // alpha/2 * duration on each side, zero at the truncation edges.
  double d = std::min(t, duration - t) / duration;
  double half = 0.5 * w.alpha;
  if (d >= half) return 1.0;
  double z = std::sin(std::numbers::pi * d / w.alpha);
  return z * z;
}

namespace {

void validate_window(const WindowSpec& w) {
  if (!(w.alpha >= 0.0 && w.alpha <= 1.0))
    throw std::invalid_argument("window alpha must lie in [0,1]");
}

void validate_pattern(const ZeroCrossingPattern& p) {
  if (p.n < 1) throw std::invalid_argument("pattern requires n >= 1");
  int expect = p.kind == PatternKind::uniform ? p.n : p.n + 1;
  if (p.positions() != expect)
    throw std::invalid_argument("pattern offsets inconsistent with kind and n");
  double prev = 0.0;
  for (double o : p.offsets) {
    if (!(o > prev && o <= 1.0))
      throw std::invalid_argument("pattern offsets must ascend within (0,1]");
    prev = o;
  }
  if (p.kind == PatternKind::nonuniform && !(p.lambda > 0.0 && p.lambda < 1.0))
    throw std::invalid_argument("nonuniform pattern requires lambda in (0,1)");
}

}  // namespace

Waveform truncate_realization(const ProcessRealization& r, int n, double t_nyq,
                              const WindowSpec& window, double phi,
                              const TraceOptions& opts) {
  if (n < 1) throw std::invalid_argument("truncate requires n >= 1");
  if (!(t_nyq > 0.0)) throw std::invalid_argument("truncate requires t_nyq > 0");
  if (opts.trace_points_per_interval < 2)
    throw std::invalid_argument("trace resolution too small");
  if (opts.quad_panels_per_subinterval < 2 || opts.quad_panels_per_subinterval % 2)
    throw std::invalid_argument("quadrature panel count must be even and >= 2");
  validate_window(window);
  r.crossings.validate();
  const int kappa = r.crossings.kappa();
  if (kappa < 1) throw std::invalid_argument("realization needs at least one crossing");

  const double duration = kappa * t_nyq;
  auto g = [&](double t) {
    return phi * eval_s(r, t / t_nyq - 0.5) * window_value(window, t, duration);
  };

  Waveform wf;
  wf.phi = phi;
  wf.samples.resize(static_cast<size_t>(kappa) * n);
  wf.sign_seq.resize(wf.samples.size());

  // Composite Simpson per sub-interval, sharing nodes between the sample
  // integral and the energy integral.
  const int panels = opts.quad_panels_per_subinterval;
  const double sub = t_nyq / n;
  const double h = sub / panels;
  double energy = 0.0;
  for (int k = 0; k < kappa; ++k) {
    for (int l = 0; l < n; ++l) {
      double a = (static_cast<double>(k) * n + l) * sub;
      double s1 = 0.0, s2 = 0.0;
      for (int i = 0; i <= panels; ++i) {
        double v = g(a + i * h);
        double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s1 += w * v;
        s2 += w * v * v;
      }
      wf.samples[static_cast<size_t>(k) * n + l] = s1 * h / 3.0;
      energy += s2 * h / 3.0;
    }
  }
  wf.energy = energy;

  double max_abs = 0.0;
  for (double s : wf.samples) max_abs = std::max(max_abs, std::abs(s));
  if (max_abs == 0.0) throw std::runtime_error("all sample integrals vanish");
  for (size_t i = 0; i < wf.samples.size(); ++i) {
    if (std::abs(wf.samples[i]) < 1e-9 * max_abs)
      throw std::runtime_error("sample integral numerically zero at interval " +
                               std::to_string(i / n + 1) + ", slot " +
                               std::to_string(i % n + 1) + "; sign undetermined");
    wf.sign_seq[i] = wf.samples[i] > 0.0 ? 1 : -1;
  }

  const int ppi = opts.trace_points_per_interval;
  wf.trace.resize(static_cast<size_t>(kappa) * ppi);
  const double dt = t_nyq / ppi;
  for (size_t i = 0; i < wf.trace.size(); ++i) wf.trace[i] = g((i + 0.5) * dt);

  // Raw s(t) is negative just right of t = 0 (between tau_{-1} and tau_0).
  wf.starts_negative = phi > 0.0;
  return wf;
}

namespace {

// Crossing-index recovery from the sign sequence: for the phi>0 half,
// l_k = (n + (-1)^k sum_l b_k[l]) / 2 with k 1-based; negated for phi<0.
bool recover_indices(const Waveform& wf, int kappa, int n, std::vector<int>& out) {
  out.assign(kappa, 0);
  int half_sign = wf.starts_negative ? 1 : -1;
  for (int k = 1; k <= kappa; ++k) {
    int sum = 0;
    for (int l = 0; l < n; ++l) sum += wf.sign_seq[static_cast<size_t>(k - 1) * n + l];
    int signed_sum = (k % 2 ? -1 : 1) * half_sign * sum;
    int num = n + signed_sum;
    if (num % 2) return false;
    out[k - 1] = num / 2;
  }
  return true;
}

WaveformSet build_set_impl(const ZeroCrossingPattern& pattern, int kappa, double t_nyq,
                           const WindowSpec& window, const TraceOptions& opts,
                           bool drop_collisions, bool certify) {
  validate_pattern(pattern);
  validate_window(window);
  if (kappa < 1) throw std::invalid_argument("set requires kappa >= 1");
  if (!(t_nyq > 0.0)) throw std::invalid_argument("set requires t_nyq > 0");
  if (pattern.kind == PatternKind::nonuniform &&
      !verify_lambda(pattern, kappa, opts.product_depth))
    throw std::invalid_argument(
        "lambda fails the first-sample sign condition for this pattern");

  const int n = pattern.n;
  const int lmin = pattern.min_index();

  std::vector<std::vector<int>> lvecs;
  std::vector<int> l(kappa, lmin);
  for (;;) {
    bool drop = false;
    if (drop_collisions && pattern.kind == PatternKind::nonuniform) {
      bool constant_rows = std::all_of(l.begin(), l.end(),
                                       [&](int v) { return v == 0 || v == n; });
      if (constant_rows) {
        std::vector<int> partner(kappa);
        for (int k = 0; k < kappa; ++k) partner[k] = l[k] == 0 ? n : 0;
        drop = l > partner;  // keep the lex-smaller member of each negation pair
      }
    }
    if (!drop) lvecs.push_back(l);
    int k = kappa - 1;
    while (k >= 0 && l[k] == n) l[k--] = lmin;
    if (k < 0) break;
    ++l[k];
  }

  WaveformSet set;
  set.pattern = pattern;
  set.kappa = kappa;
  set.t_nyq = t_nyq;
  set.window = window;
  set.trace_opts = opts;
  set.paired = true;
  const int half = static_cast<int>(lvecs.size());
  set.members.resize(static_cast<size_t>(2) * half);

  parallel_for(half, [&](std::size_t idx) {
    const std::vector<int>& lv = lvecs[idx];
    CrossingSequence cs;
    cs.tau.resize(kappa);
    for (int k = 0; k < kappa; ++k) cs.tau[k] = (k - 0.5) + pattern.offset_for(lv[k]);
    ProcessRealization r{cs, opts.product_depth};
    Waveform wf = truncate_realization(r, n, t_nyq, window, 1.0, opts);
    wf.id = static_cast<int>(idx);
    wf.crossing_index = lv;

    std::vector<int> rec;
    if (!recover_indices(wf, kappa, n, rec) || rec != lv)
      throw std::runtime_error("sign-sequence recovery failed for a base member");
    if (!is_admissible(wf.sign_seq, kappa, n, pattern.kind))
      throw std::runtime_error("constructed sign sequence is not admissible");

    Waveform opp = wf;
    opp.id = static_cast<int>(idx) + half;
    opp.phi = -wf.phi;
    opp.starts_negative = !wf.starts_negative;
    for (auto& v : opp.samples) v = -v;
    for (auto& v : opp.sign_seq) v = -v;
    for (auto& v : opp.trace) v = -v;
    set.members[idx] = std::move(wf);
    set.members[static_cast<size_t>(idx) + half] = std::move(opp);
  });

  if (certify && !certify_uniqueness(set))
    throw std::runtime_error("sign sequences are not unique across the set");
  return set;
}

}  // namespace

WaveformSet build_full_set(const ZeroCrossingPattern& pattern, int kappa, double t_nyq,
                           const WindowSpec& window, const TraceOptions& opts) {
  return build_set_impl(pattern, kappa, t_nyq, window, opts, true, true);
}

WaveformSet build_paired_pool(const ZeroCrossingPattern& pattern, int kappa, double t_nyq,
                              const WindowSpec& window, const TraceOptions& opts) {
  return build_set_impl(pattern, kappa, t_nyq, window, opts, false, false);
}

bool is_admissible(std::span<const std::int8_t> sign_seq, int kappa, int n,
                   PatternKind kind) {
  if (kappa < 1 || n < 1) throw std::invalid_argument("is_admissible requires kappa,n >= 1");
  if (sign_seq.size() != static_cast<size_t>(kappa) * n)
    throw std::invalid_argument("sign sequence length must be kappa*n");
  for (auto v : sign_seq)
    if (v != 1 && v != -1) throw std::invalid_argument("sign entries must be +-1");

  auto valid_half = [&](int polarity) {
    for (int k = 1; k <= kappa; ++k) {
      const std::int8_t* row = sign_seq.data() + static_cast<size_t>(k - 1) * n;
      int start = polarity * (k % 2 ? -1 : 1);  // (-1)^k in this polarity
      int j = 0;
      while (j < n && row[j] == start) ++j;
      for (int i = j; i < n; ++i)
        if (row[i] == start) return false;  // second run of the start sign
      if (j == 0 && kind == PatternKind::uniform) return false;  // l=0 row
    }
    return true;
  };
  return valid_half(1) || valid_half(-1);
}

bool certify_uniqueness(const WaveformSet& set) {
  std::vector<const std::vector<std::int8_t>*> seqs;
  seqs.reserve(set.members.size());
  for (const auto& m : set.members) seqs.push_back(&m.sign_seq);
  std::sort(seqs.begin(), seqs.end(),
            [](const auto* a, const auto* b) { return *a < *b; });
  for (size_t i = 1; i < seqs.size(); ++i)
    if (*seqs[i] == *seqs[i - 1]) return false;
  return true;
}

void normalize_energy(WaveformSet& set, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("energy target must be positive");
  for (auto& m : set.members) {
    if (!(m.energy > 0.0)) throw std::runtime_error("cannot normalize a zero-energy member");
    double scale = std::sqrt(epsilon / m.energy);
    m.phi *= scale;
    for (auto& v : m.samples) v *= scale;
    for (auto& v : m.trace) v *= scale;
    m.energy = epsilon;
  }
  set.energy_target = epsilon;
}

double WaveformSet::power() const {
  if (members.empty()) throw std::invalid_argument("power of an empty set");
  double e = 0.0;
  for (const auto& m : members) e += m.energy;
  return e / (static_cast<double>(members.size()) * duration());
}

}  // namespace zcq
