// zcqsim: batch driver for waveform-set construction, spectra, rates,
// capacity, subset selection, labeling and coded BER sweeps. Every
// subcommand reads one shared config (JSON file + flag overrides), writes
// CSV results plus a JSON sidecar, and prints a one-line summary.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "zcq/config.hpp"
#include "zcq/io.hpp"
#include "zcq/spectral.hpp"
#include "zcq/sweeps.hpp"

namespace {

using zcq::SimConfig;

struct RunContext {
  SimConfig cfg;
  std::string out = "zcq_run";
  std::string command;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::vector<std::string> outputs;

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  void sidecar() const {
    zcq::write_run_sidecar(out + ".run.json", cfg, command, elapsed(), outputs);
  }
};

std::vector<std::string> cols(std::initializer_list<const char*> names) {
  return {names.begin(), names.end()};
}

void cmd_build_set(RunContext& ctx) {
  const zcq::WaveformSet set = zcq::build_configured_set(ctx.cfg);
  const std::string path = ctx.out + "_set.json";
  zcq::save_waveform_set(set, path);
  ctx.outputs.push_back(path);
  ctx.sidecar();
  std::printf("built %d waveforms (kappa=%d n=%d %s), power %.6g, wrote %s\n", set.m(),
              set.kappa, set.n(), ctx.cfg.pattern.c_str(), set.power(), path.c_str());
}

void cmd_spectrum(RunContext& ctx) {
  const zcq::WaveformSet set = zcq::build_configured_set(ctx.cfg);
  zcq::SpectralOptions so;
  so.zero_pad_factor = ctx.cfg.zero_pad_factor;
  const zcq::SpectrumResult spec = zcq::analyze_spectrum(set, ctx.cfg.eta, so);
  const std::string path = ctx.out + "_psd.csv";
  {
    const auto names = cols({"freq", "psd"});
    zcq::CsvWriter w(path, names);
    for (std::size_t i = 0; i < spec.freq.size(); ++i) {
      w.row(std::vector<double>{spec.freq[i], spec.psd[i]});
    }
  }
  ctx.outputs.push_back(path);
  if (ctx.cfg.periodogram_symbols > 0) {
    const zcq::SpectrumResult est = zcq::periodogram_estimate(
        set, ctx.cfg.periodogram_symbols, ctx.cfg.noise_seed, so);
    const std::string epath = ctx.out + "_periodogram.csv";
    const auto names = cols({"freq", "psd_est"});
    zcq::CsvWriter w(epath, names);
    for (std::size_t i = 0; i < est.freq.size(); ++i) {
      w.row(std::vector<double>{est.freq[i], est.psd[i]});
    }
    ctx.outputs.push_back(epath);
  }
  ctx.sidecar();
  std::printf("power %.6g, W_eta(%.3g) = %.6g (n_eff %.4g), wrote %s\n", spec.power,
              spec.eta, spec.w_eta, spec.n_eff, path.c_str());
}

void cmd_rate_sweep(RunContext& ctx) {
  std::vector<int> m_values = ctx.cfg.m_list;
  if (m_values.empty()) m_values = {ctx.cfg.m_target};
  const std::vector<double> alphas = {ctx.cfg.alpha};
  const auto points = zcq::sweep_rate(ctx.cfg, alphas, m_values);
  const std::string path = ctx.out + "_rate.csv";
  {
    const auto names =
        cols({"alpha", "m", "snr_db", "w_eta", "eta", "mi_bits", "rate", "se", "se_per_dim"});
    zcq::CsvWriter w(path, names);
    for (const auto& p : points) {
      w.row(std::vector<double>{p.alpha, static_cast<double>(p.m), p.snr_db, p.w_eta, p.eta,
                                p.mi_bits, p.rate, p.se, p.se_per_dim});
    }
  }
  ctx.outputs.push_back(path);
  ctx.sidecar();
  std::printf("%zu rate points at %.3g dB, wrote %s\n", points.size(), ctx.cfg.snr_db,
              path.c_str());
}

void cmd_capacity(RunContext& ctx) {
  const zcq::SnrSweep sweep = zcq::sweep_snr(ctx.cfg);
  const std::string path = ctx.out + "_capacity.csv";
  {
    const auto names =
        cols({"snr_db", "mi_bits", "capacity_bits", "rate", "se", "se_per_dim"});
    zcq::CsvWriter w(path, names);
    for (const auto& p : sweep.points) {
      w.row(std::vector<double>{p.snr_db, p.mi_bits, p.capacity_bits, p.rate, p.se,
                                p.se_per_dim});
    }
  }
  ctx.outputs.push_back(path);
  ctx.sidecar();
  std::printf("%zu SNR points, m=%d, W_eta %.6g, wrote %s\n", sweep.points.size(),
              ctx.cfg.m_target, sweep.w_eta, path.c_str());
}

void cmd_select(RunContext& ctx) {
  const zcq::WaveformSet set = zcq::build_configured_set(ctx.cfg);
  const zcq::SelectionResult sel =
      zcq::heuristic_select(set, ctx.cfg.snr_db, ctx.cfg.m_target,
                            zcq::config_selection(ctx.cfg));
  const std::string path = ctx.out + "_subset.json";
  zcq::save_waveform_set(sel.subset, path);
  ctx.outputs.push_back(path);
  ctx.sidecar();
  std::printf("selected m=%d, W_eta %.6g (eta %.4f), MI %.4f b, SE %.4f b/s/Hz, wrote %s\n",
              sel.subset.m(), sel.w_eta, sel.eta, sel.mi_bits, sel.se, path.c_str());
}

void cmd_label(RunContext& ctx) {
  const zcq::CodedSystem sys = zcq::make_coded_system(ctx.cfg);
  const std::string lpath = ctx.out + "_labeling.json";
  const std::string spath = ctx.out + "_subset.json";
  zcq::save_labeling(sys.labeling, lpath);
  zcq::save_waveform_set(sys.subset, spath);
  ctx.outputs.push_back(lpath);
  ctx.outputs.push_back(spath);
  ctx.sidecar();
  std::printf("%s labeling: q=%d, d_sum=%lld, %d searched tuples, wrote %s\n",
              sys.labeling.kind.c_str(), sys.labeling.q, sys.labeling.d_sum,
              sys.labeling.n_free, lpath.c_str());
}

void cmd_ber_sweep(RunContext& ctx) {
  const auto points = zcq::sweep_ber(ctx.cfg);
  const std::string path = ctx.out + "_ber.csv";
  {
    const auto names = cols({"snr_db", "frames", "bit_errors", "ber", "frame_errors", "fer"});
    zcq::CsvWriter w(path, names);
    for (const auto& p : points) {
      w.row(std::vector<double>{p.snr_db, static_cast<double>(p.frames),
                                static_cast<double>(p.bit_errors), p.ber,
                                static_cast<double>(p.frame_errors), p.fer});
    }
  }
  ctx.outputs.push_back(path);
  ctx.sidecar();
  std::printf("%zu BER points over [%.3g, %.3g] dB, wrote %s\n", points.size(),
              ctx.cfg.snr_start, ctx.cfg.snr_stop, path.c_str());
}

void cmd_asymptote(RunContext& ctx) {
  const auto points = zcq::asymptote_table(ctx.cfg);
  const std::string path = ctx.out + "_asymptote.csv";
  {
    const auto names = cols({"n", "m_best", "w_eta", "eta", "n_eff", "se_inf", "se_inf_per_dim"});
    zcq::CsvWriter w(path, names);
    for (const auto& p : points) {
      w.row(std::vector<double>{static_cast<double>(p.n), static_cast<double>(p.m_best),
                                p.w_eta, p.eta, p.n_eff, p.se_inf, p.se_inf_per_dim});
    }
  }
  ctx.outputs.push_back(path);
  ctx.sidecar();
  std::printf("%zu oversampling points, wrote %s\n", points.size(), path.c_str());
}

void add_config_flags(CLI::App& app, SimConfig& c) {
  app.add_option("--pattern", c.pattern, "uniform | nonuniform");
  app.add_option("--n", c.n, "samples per Nyquist interval");
  app.add_option("--lambda", c.lambda, "early-crossing offset factor (nonuniform)");
  app.add_option("--kappa", c.kappa, "Nyquist intervals per symbol");
  app.add_option("--t-nyq", c.t_nyq, "Nyquist interval duration");
  app.add_option("--window", c.window, "hard | raised_cosine");
  app.add_option("--alpha", c.alpha, "raised-cosine roll-off");
  app.add_option("--energy", c.energy, "per-member energy (0 = unit power)");
  app.add_option("--trace-ppi", c.trace_ppi, "trace points per interval");
  app.add_option("--quad-panels", c.quad_panels, "quadrature panels per sample");
  app.add_option("--product-depth", c.product_depth, "crossing-product factors per side");
  app.add_option("--zero-pad-factor", c.zero_pad_factor, "spectral zero padding");
  app.add_option("--eta", c.eta, "power containment fraction");
  app.add_option("--periodogram-symbols", c.periodogram_symbols,
                 "spectrum: also estimate from this many symbols");
  app.add_option("--noise-seed", c.noise_seed, "periodogram seed");
  app.add_option("--m-target", c.m_target, "subset size");
  app.add_option("--eta-slack", c.eta_slack, "containment acceptance slack");
  app.add_option("--w-hi-factor", c.w_hi_factor, "bandwidth search upper factor");
  app.add_option("--max-bisect", c.max_bisect, "bandwidth bisection iterations");
  app.add_option("--snr-db", c.snr_db, "operating SNR (dB)");
  app.add_option("--snr-start", c.snr_start, "sweep start (dB)");
  app.add_option("--snr-stop", c.snr_stop, "sweep stop (dB)");
  app.add_option("--snr-step", c.snr_step, "sweep step (dB)");
  app.add_option("--m-list", c.m_list, "rate sweep set sizes");
  app.add_option("--n-list", c.n_list, "asymptote oversampling factors");
  app.add_option("--ba-tol", c.ba_tol, "capacity tolerance (bits)");
  app.add_option("--ba-max-iter", c.ba_max_iter, "capacity iteration cap");
  app.add_option("--labeling", c.labeling, "designed | random");
  app.add_flag("--allow-greedy", c.allow_greedy, "permit greedy labeling search");
  app.add_option("--label-seed", c.label_seed, "labeling seed");
  app.add_option("--ldpc-n", c.ldpc_n, "code length");
  app.add_option("--ldpc-k", c.ldpc_k, "message length");
  app.add_option("--ldpc-col-weight", c.ldpc_col_weight, "parity column weight");
  app.add_option("--ldpc-seed", c.ldpc_seed, "code construction seed");
  app.add_option("--demod-iters", c.demod_iters, "demodulator rounds");
  app.add_option("--ldpc-iters", c.ldpc_iters, "decoder iterations per round");
  app.add_option("--llr-clip", c.llr_clip, "LLR clip magnitude");
  app.add_option("--use-interleaver", c.use_interleaver, "enable the interleaver");
  app.add_option("--sim-seed", c.sim_seed, "Monte Carlo seed");
  app.add_option("--block-frames", c.block_frames, "frames per accounting block");
  app.add_option("--max-frames", c.max_frames, "frame cap per point");
  app.add_option("--target-frame-errors", c.target_frame_errors, "stop after this many");
  app.add_option("--max-threads", c.max_threads, "thread cap (0 = all)");
}

}  // namespace

int main(int argc, char** argv) {
  RunContext ctx;
  for (int i = 0; i < argc; ++i) {
    if (i) ctx.command += ' ';
    ctx.command += argv[i];
  }
  // The config file provides the baseline; flags parsed afterwards override.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string_view(argv[i]) == "--config") {
      try {
        ctx.cfg = zcq::load_config_file(argv[i + 1]);
      } catch (const std::exception& e) {
        std::printf("{\"error\": %s}\n", nlohmann::json(std::string(e.what())).dump().c_str());
        return 1;
      }
      break;
    }
  }

  CLI::App app{"zero-crossing one-bit transceiver simulator"};
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", ctx.out, "output path prefix");
  add_config_flags(app, ctx.cfg);

  struct Cmd {
    const char* name;
    const char* help;
    void (*fn)(RunContext&);
  };
  static constexpr Cmd kCmds[] = {
      {"build-set", "construct and store the full admissible waveform set", cmd_build_set},
      {"spectrum", "analytic PSD, containment bandwidth, optional estimate", cmd_spectrum},
      {"rate-sweep", "spectral efficiency across set sizes at one SNR", cmd_rate_sweep},
      {"capacity", "information rate and capacity across SNR", cmd_capacity},
      {"select", "bandwidth-constrained subset selection", cmd_select},
      {"label", "design (or draw) the bit labeling for the selected subset", cmd_label},
      {"ber-sweep", "coded BER across SNR", cmd_ber_sweep},
      {"asymptote", "high-SNR spectral efficiency vs oversampling", cmd_asymptote},
  };
  void (*selected)(RunContext&) = nullptr;
  for (const Cmd& c : kCmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->callback([&selected, fn = c.fn] { selected = fn; });
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    selected(ctx);
  } catch (const std::exception& e) {
    std::printf("{\"error\": %s}\n", nlohmann::json(std::string(e.what())).dump().c_str());
    return 1;
  }
  return 0;
}
