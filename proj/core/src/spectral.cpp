#include "zcq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "zcq/parallel.hpp"
#include "zcq/rng.hpp"

namespace zcq {

namespace {

void validate_set_for_spectrum(const WaveformSet& set) {
  if (set.members.empty()) throw std::invalid_argument("spectrum of an empty set");
  if (!set.paired)
    throw std::invalid_argument("spectrum requires a paired (negation-closed) set");
  size_t tlen = set.members.front().trace.size();
  for (const auto& m : set.members)
    if (m.trace.size() != tlen || tlen == 0)
      throw std::invalid_argument("set members carry inconsistent traces");
}

}  // namespace

SpectrumResult psd(const WaveformSet& set, const SpectralOptions& opts) {
  validate_set_for_spectrum(set);
  if (opts.zero_pad_factor < 1) throw std::invalid_argument("zero_pad_factor must be >= 1");
  const size_t n0 = set.members.front().trace.size();
  const double dt = set.t_nyq / set.trace_opts.trace_points_per_interval;
  const size_t n_fft = n0 * static_cast<size_t>(opts.zero_pad_factor);

  std::vector<std::vector<double>> mags(set.members.size());
  parallel_for(set.members.size(), [&](std::size_t u) {
    mags[u] = detail::fft_mag2(set.members[u].trace, n_fft);
  });

  SpectrumResult res;
  res.df = 1.0 / (static_cast<double>(n_fft) * dt);
  res.w_nyq = set.w_nyq();
  res.power = set.power();
  res.psd.assign(n_fft / 2 + 1, 0.0);
  for (const auto& mag : mags)
    for (size_t j = 0; j < res.psd.size(); ++j) res.psd[j] += mag[j];
  const double scale = dt * dt / (set.members.size() * set.duration());
  res.freq.resize(res.psd.size());
  for (size_t j = 0; j < res.psd.size(); ++j) {
    res.psd[j] *= scale;
    res.freq[j] = j * res.df;
  }
  return res;
}

double power_containment_bandwidth(const SpectrumResult& spec, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
  if (spec.psd.size() < 2) throw std::invalid_argument("spectrum grid too small");
  const double target = eta * spec.power;
  // Two-sided trapezoid cumulative: C(f_j) = int_{-f_j}^{f_j} S df.
  double c_prev = 0.0;
  for (size_t j = 1; j < spec.psd.size(); ++j) {
    double c = c_prev + spec.df * (spec.psd[j - 1] + spec.psd[j]);
    if (c >= target) {
      double frac = (target - c_prev) / (c - c_prev);
      return spec.freq[j - 1] + frac * spec.df;
    }
    c_prev = c;
  }
  throw std::invalid_argument("eta not contained within the computed spectrum grid");
}

SpectrumResult analyze_spectrum(const WaveformSet& set, double eta,
                                const SpectralOptions& opts) {
  SpectrumResult res = psd(set, opts);
  res.eta = eta;
  res.w_eta = power_containment_bandwidth(res, eta);
  res.n_eff = set.n() * res.w_nyq / res.w_eta;
  return res;
}

double spectral_efficiency(double rate_bits_per_s, double w_eta) {
  if (!(w_eta > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  if (rate_bits_per_s < 0.0) throw std::invalid_argument("rate must be nonnegative");
  return rate_bits_per_s / w_eta;
}

SpectrumResult periodogram_estimate(const WaveformSet& set, int num_symbols,
                                    std::uint64_t seed, const SpectralOptions& opts) {
  validate_set_for_spectrum(set);
  constexpr int kSymbolsPerSegment = 64;
  if (num_symbols < kSymbolsPerSegment)
    throw std::invalid_argument("periodogram needs at least 64 symbols");
  if (opts.zero_pad_factor < 1 || kSymbolsPerSegment % opts.zero_pad_factor)
    throw std::invalid_argument("zero_pad_factor must divide 64 for grid alignment");

  const size_t n0 = set.members.front().trace.size();
  const double dt = set.t_nyq / set.trace_opts.trace_points_per_interval;
  const size_t seg_len = static_cast<size_t>(kSymbolsPerSegment) * n0;
  const int n_seg = num_symbols / kSymbolsPerSegment;
  const int ratio = kSymbolsPerSegment / opts.zero_pad_factor;  // fine bins per coarse bin

  CounterRng rng{seed};
  const int m = set.m();

  std::vector<std::vector<double>> partial(n_seg);
  std::vector<double> powers(n_seg, 0.0);
  parallel_for(n_seg, [&](std::size_t s) {
    std::vector<double> x(seg_len);
    double p2 = 0.0;
    for (int j = 0; j < kSymbolsPerSegment; ++j) {
      std::uint64_t sym = static_cast<std::uint64_t>(s) * kSymbolsPerSegment + j;
      int u = static_cast<int>(rng.below(m, 0, sym));
      const auto& tr = set.members[u].trace;
      std::copy(tr.begin(), tr.end(), x.begin() + static_cast<size_t>(j) * n0);
    }
    for (double v : x) p2 += v * v;
    powers[s] = p2 / static_cast<double>(seg_len);
    auto mag = detail::fft_mag2(x, seg_len);
    for (double& v : mag) v *= dt / static_cast<double>(seg_len);
    partial[s] = std::move(mag);
  });

  std::vector<double> fine(seg_len / 2 + 1, 0.0);
  for (const auto& p : partial)
    for (size_t j = 0; j < fine.size(); ++j) fine[j] += p[j];
  for (double& v : fine) v /= n_seg;

  SpectrumResult res;
  const size_t n_fft = n0 * static_cast<size_t>(opts.zero_pad_factor);
  res.df = 1.0 / (static_cast<double>(n_fft) * dt);
  res.w_nyq = set.w_nyq();
  res.psd.assign(n_fft / 2 + 1, 0.0);
  res.freq.resize(res.psd.size());
  const long last = static_cast<long>(fine.size()) - 1;
  for (size_t j = 0; j < res.psd.size(); ++j) {
    double acc = 0.0;
    for (int o = -2; o <= 2; ++o) {
      long idx = static_cast<long>(j) * ratio + o;
      if (idx < 0) idx = -idx;          // spectrum of a real signal is even
      if (idx > last) idx = last;
      acc += fine[idx];
    }
    res.psd[j] = acc / 5.0;
    res.freq[j] = j * res.df;
  }
  double pw = 0.0;
  for (double v : powers) pw += v;
  res.power = pw / n_seg;
  return res;
}

PairSpectra compute_pair_spectra(const WaveformSet& set, const SpectralOptions& opts) {
  validate_set_for_spectrum(set);
  if (set.m() % 2) throw std::invalid_argument("paired set must have even size");
  const int half = set.m() / 2;
  const size_t n0 = set.members.front().trace.size();
  const double dt = set.t_nyq / set.trace_opts.trace_points_per_interval;
  const size_t n_fft = n0 * static_cast<size_t>(opts.zero_pad_factor);

  PairSpectra ps;
  ps.df = 1.0 / (static_cast<double>(n_fft) * dt);
  ps.cum.resize(half);
  ps.energy.resize(half);
  ps.freq.resize(n_fft / 2 + 1);
  for (size_t j = 0; j < ps.freq.size(); ++j) ps.freq[j] = j * ps.df;

  parallel_for(half, [&](std::size_t p) {
    auto mag = detail::fft_mag2(set.members[p].trace, n_fft);
    std::vector<double> cum(mag.size(), 0.0);
    double acc = 0.0;
    for (size_t j = 1; j < mag.size(); ++j) {
      acc += ps.df * (mag[j - 1] + mag[j]) * dt * dt;  // two-sided trapezoid
      cum[j] = acc;
    }
    ps.cum[p] = std::move(cum);
    ps.energy[p] = set.members[p].energy;
  });
  return ps;
}

double pair_in_band(const PairSpectra& ps, int pair, double w) {
  const auto& cum = ps.cum.at(pair);
  if (w <= 0.0) return 0.0;
  double pos = w / ps.df;
  if (pos >= static_cast<double>(cum.size() - 1)) return cum.back();
  size_t j = static_cast<size_t>(pos);
  double frac = pos - static_cast<double>(j);
  return cum[j] + frac * (cum[j + 1] - cum[j]);
}

}  // namespace zcq
