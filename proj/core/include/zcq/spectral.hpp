#pragma once

#include <cstdint>
#include <vector>

#include "zcq/waveforms.hpp"

namespace zcq {

struct SpectralOptions {
  int zero_pad_factor = 16;  // analytic grid spacing df = 1/(factor * duration)
};

struct SpectrumResult {
  std::vector<double> freq;  // nonnegative frequencies, spacing df
  std::vector<double> psd;   // two-sided S(f) sampled on freq
  double df = 0;
  double power = 0;          // total power (exact, from member energies)
  double w_nyq = 0;
  double eta = 0;            // containment target; filled by analyze_spectrum
  double w_eta = 0;
  double n_eff = 0;          // n * w_nyq / w_eta
};

// Mixture PSD S(f) = (1/(m kappa T_N)) sum_u |ghat_u(f)|^2 of IID uniform
// symbols. Requires a paired set (zero-mean stream, no line spectrum).
SpectrumResult psd(const WaveformSet& set, const SpectralOptions& opts = {});

// Smallest W with int_{-W}^{W} S df >= eta * power, interpolating linearly
// between grid points.
double power_containment_bandwidth(const SpectrumResult& spec, double eta);

SpectrumResult analyze_spectrum(const WaveformSet& set, double eta,
                                const SpectralOptions& opts = {});

// rate / w_eta, bits/s/Hz over the two-sided band.
double spectral_efficiency(double rate_bits_per_s, double w_eta);

// Welch estimate from num_symbols IID uniform draws: 64-symbol rectangular
// segments averaged, then 5-bin Daniell smoothing onto the psd() grid.
// power is the empirical mean power of the realization.
SpectrumResult periodogram_estimate(const WaveformSet& set, int num_symbols,
                                    std::uint64_t seed, const SpectralOptions& opts = {});

// Per-pair cumulative in-band energies on the analytic grid (selection input).
struct PairSpectra {
  double df = 0;
  std::vector<double> freq;
  std::vector<std::vector<double>> cum;  // [pair][j]: int_{-f_j}^{f_j} |ghat|^2 df
  std::vector<double> energy;            // per-pair member energy (time domain)
};

PairSpectra compute_pair_spectra(const WaveformSet& set, const SpectralOptions& opts = {});

// int_{-w}^{w} |ghat_pair|^2 df, linear interpolation, clamped to the total.
double pair_in_band(const PairSpectra& ps, int pair, double w);

}  // namespace zcq
