#include <benchmark/benchmark.h>

#include <vector>

#include "zcq/bicm.hpp"
#include "zcq/dmc.hpp"
#include "zcq/labeling.hpp"
#include "zcq/ldpc.hpp"
#include "zcq/process.hpp"
#include "zcq/rng.hpp"
#include "zcq/spectral.hpp"
#include "zcq/waveforms.hpp"

namespace {

using namespace zcq;

const WaveformSet& full_set() {
  static WaveformSet set = [] {
    auto s = build_full_set(make_pattern(PatternKind::uniform, 4), 3, 1.0, WindowSpec{});
    normalize_energy(s, s.duration());
    return s;
  }();
  return set;
}

const DmcModel& model_15db() {
  static DmcModel dmc = build_dmc(full_set(), 15.0);
  return dmc;
}

void bm_eval_s(benchmark::State& state) {
  ProcessRealization r;
  r.crossings.tau = {0.3, 1.2, 2.4};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_s(r, 0.7 + t));
    t = t < 2.0 ? t + 1e-4 : 0.0;
  }
}
BENCHMARK(bm_eval_s);

void bm_truncate_realization(benchmark::State& state) {
  ProcessRealization r;
  r.crossings.tau = {0.25, 1.5, 2.25};
  for (auto _ : state)
    benchmark::DoNotOptimize(truncate_realization(r, 4, 1.0, WindowSpec{}, 1.0));
}
BENCHMARK(bm_truncate_realization)->Unit(benchmark::kMillisecond);

void bm_psd_full_set(benchmark::State& state) {
  const auto& set = full_set();
  for (auto _ : state) benchmark::DoNotOptimize(psd(set));
}
BENCHMARK(bm_psd_full_set)->Unit(benchmark::kMillisecond);

void bm_build_dmc(benchmark::State& state) {
  const auto& set = full_set();
  for (auto _ : state) benchmark::DoNotOptimize(build_dmc(set, 15.0));
}
BENCHMARK(bm_build_dmc)->Unit(benchmark::kMillisecond);

void bm_mutual_information(benchmark::State& state) {
  const auto& dmc = model_15db();
  for (auto _ : state) benchmark::DoNotOptimize(mutual_information(dmc));
}
BENCHMARK(bm_mutual_information)->Unit(benchmark::kMillisecond);

void bm_blahut_arimoto(benchmark::State& state) {
  const auto& dmc = model_15db();
  for (auto _ : state) benchmark::DoNotOptimize(blahut_arimoto(dmc, 1e-4, 2000));
}
BENCHMARK(bm_blahut_arimoto)->Unit(benchmark::kMillisecond);

void bm_ldpc_decode(benchmark::State& state) {
  auto code = ldpc_construct(1024, 832, 3, 7);
  std::vector<std::uint8_t> msg(832, 0);
  CounterRng rng{1};
  for (int i = 0; i < 832; ++i) msg[i] = rng.bits(0, i) & 1u;
  auto cw = code.encode(msg);
  std::vector<double> llr(1024);
  for (int i = 0; i < 1024; ++i) {
    double noise = 0.8 * rng.normal(1, i);
    llr[i] = (cw[i] ? -2.0 : 2.0) + noise;
  }
  for (auto _ : state) benchmark::DoNotOptimize(ldpc_decode(code, llr, 50));
}
BENCHMARK(bm_ldpc_decode)->Unit(benchmark::kMillisecond);

void bm_demod_symbol(benchmark::State& state) {
  // 64-member subset with the designed labeling, flat priors
  static const auto sys = [] {
    auto set = full_set();
    auto ps = compute_pair_spectra(set);
    auto sel = select_bandwidth(set, ps, 32, SelectionOptions{});
    auto sub = subset_by_pairs(set, sel.pair_ids);
    struct Sys {
      DmcModel dmc;
      Labeling lab;
    };
    return Sys{build_dmc(sub, 22.0), design_labeling(sub)};
  }();
  std::vector<double> lp0(6, std::log(0.5)), lp1(6, std::log(0.5)), out(6);
  std::uint32_t b = 0;
  for (auto _ : state) {
    demod_symbol_llr(sys.dmc, sys.lab, b, lp0, lp1, out);
    benchmark::DoNotOptimize(out.data());
    b = (b + 97) & 4095u;
  }
}
BENCHMARK(bm_demod_symbol);

void bm_coded_frame(benchmark::State& state) {
  static const auto sys = [] {
    auto set = full_set();
    auto ps = compute_pair_spectra(set);
    auto sel = select_bandwidth(set, ps, 32, SelectionOptions{});
    auto sub = subset_by_pairs(set, sel.pair_ids);
    struct Sys {
      DmcModel dmc;
      Labeling lab;
      LdpcCode code;
    };
    return Sys{build_dmc(sub, 22.0), design_labeling(sub), ldpc_construct(1024, 832, 3, 7)};
  }();
  BicmOptions opt;
  std::uint64_t frame = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_coded_frame(sys.dmc, sys.lab, sys.code, opt, frame++));
  }
}
BENCHMARK(bm_coded_frame)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
