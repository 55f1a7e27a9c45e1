// Acceptance gate: one self-contained check per release criterion, each
// printing exactly one PASS/FAIL line. Exit status is nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "zcq/bicm.hpp"
#include "zcq/config.hpp"
#include "zcq/dmc.hpp"
#include "zcq/labeling.hpp"
#include "zcq/ldpc.hpp"
#include "zcq/math_util.hpp"
#include "zcq/process.hpp"
#include "zcq/rng.hpp"
#include "zcq/spectral.hpp"
#include "zcq/sweeps.hpp"
#include "zcq/waveforms.hpp"

namespace {

using namespace zcq;

// ---- pinned tolerances and operating constants -----------------------------
constexpr double kSincTol = 1e-3;            // product vs sinc, default depth
constexpr double kShiftResidualTol = 1e-6;   // proportionality residual
constexpr double kShiftCLow = 0.0, kShiftCHigh = 9.0;
constexpr int kPsdSymbols = 10000;
constexpr double kPsdL2Tol = 0.05;           // relative L2, analytic vs Welch
constexpr double kPsdPowerTol = 0.02;        // relative power agreement
constexpr double kSaturationGap = 0.01;      // bits below log2(m) at 60 dB
constexpr double kIdentityTol = 1e-12;       // rate identities, log forms
constexpr double kIdentityPrintTol = 1e-4;   // 4-decimal reference rounding
constexpr double kSePerDimLow = 1.3, kSePerDimHigh = 1.5;
constexpr double kSubsetSpreadTol = 0.10;    // (max-min)/mean at <= 15 dB
constexpr double kMiBruteTol = 1e-10;
constexpr double kLlrBruteTol = 1e-9;
constexpr double kBerTarget = 1e-4;          // at kBerSnr <= 25 dB
// 24 dB sits on the tail of the slower waterfall (single stray frame failures
// flip the measurement), so the floor is checked one dB later with enough
// frames that zero observed failures bounds the rate below target at ~95%.
constexpr double kBerSnr = 25.0;
constexpr int kFloorFrames = 2048;
constexpr double kPinSnr = 22.0;             // waterfall comparison pin
constexpr double kZOneSided95 = 1.645;
constexpr double kSlopeLow = 0.8, kSlopeHigh = 1.2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Criterion = std::function<Outcome()>;

// ---- C1: brute-force count of admissible sign matrices ---------------------
// A matrix is admissible when, in one common polarity, every row k reads as j
// leading signs (-1)^k followed by trailing signs (-1)^(k-1), j in 0..n (j = 0
// only for the nonuniform pattern). Enumerates all 2^(kappa n) candidates.
long long brute_force_count(int kappa, int n) {
  const int bits = kappa * n;
  long long count = 0;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    bool ok = false;
    for (int pol = -1; pol <= 1 && !ok; pol += 2) {
      bool all_rows = true;
      for (int k = 1; k <= kappa && all_rows; ++k) {
        int start = pol * (k % 2 ? -1 : 1);
        int j = 0;
        while (j < n) {
          int bit = (mask >> (bits - 1 - ((k - 1) * n + j))) & 1;
          if ((bit ? 1 : -1) != start) break;
          ++j;
        }
        for (int i = j; i < n; ++i) {
          int bit = (mask >> (bits - 1 - ((k - 1) * n + i))) & 1;
          if ((bit ? 1 : -1) == start) {
            all_rows = false;
            break;
          }
        }
      }
      ok = all_rows;
    }
    count += ok;
  }
  return count;
}

Outcome c1_combinatorics() {
  for (int kappa = 1; kappa <= 3; ++kappa)
    for (int n = 1; n <= 4; ++n) {
      long long brute = brute_force_count(kappa, n);
      long long formula = max_set_size(kappa, n);
      if (brute != formula)
        return {false, "(" + std::to_string(kappa) + "," + std::to_string(n) +
                           "): brute " + std::to_string(brute) + " vs formula " +
                           std::to_string(formula)};
    }
  return {true, "all 12 (kappa,n) pairs match 2(n+1)^kappa - 2^kappa; (3,4) = " +
                    std::to_string(max_set_size(3, 4))};
}

// ---- C2: Euler product against sin(pi t)/pi --------------------------------
Outcome c2_product_oracle() {
  ProcessRealization r;
  r.crossings.tau = {0.0};  // every crossing on the integer grid
  double worst = 0.0;
  for (int i = -1024; i <= 1024; ++i) {
    double t = i / 512.0;
    double err = std::fabs(eval_s(r, t) - std::sin(std::numbers::pi * t) / std::numbers::pi);
    worst = std::max(worst, err);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |s - sinc| = %.3g on [-2,2] (tol %g)", worst,
                kSincTol);
  return {worst < kSincTol, buf};
}

// ---- C3: shift equivalence of the crossing process -------------------------
Outcome c3_shift_equivalence() {
  CounterRng rng{5};
  std::vector<double> grid;
  for (double t = 0.05; t <= 3.95; t += 0.05) grid.push_back(t);
  double worst_res = 0.0, c_min = 1e300, c_max = -1e300;
  for (int rep = 0; rep < 10; ++rep) {
    ProcessRealization r;
    // Deep product: the truncated-tail drift scales as ~2*t/depth and the
    // closed-form tail makes depth free, so 3e7 puts truncation well below
    // the residual bound without amplifying lgamma rounding noise.
    r.product_depth = 30000000;
    for (int k = 0; k < 8; ++k)
      r.crossings.tau.push_back(k - 0.5 + rng.uniform(rep, k));
    auto res = shift_equivalence_check(r, 1, grid);
    worst_res = std::max(worst_res, res.max_rel_err);
    c_min = std::min(c_min, res.c);
    c_max = std::max(c_max, res.c);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "10 realizations: residual <= %.3g, c in [%.4f, %.4f] (req < %g, c in (%g,%g))",
                worst_res, c_min, c_max, kShiftResidualTol, kShiftCLow, kShiftCHigh);
  return {worst_res < kShiftResidualTol && c_min > kShiftCLow && c_max < kShiftCHigh, buf};
}

// ---- C4: analytic spectrum against a Welch periodogram ----------------------
Outcome c4_psd_oracle() {
  auto set = build_full_set(make_pattern(PatternKind::uniform, 4), 3, 1.0, WindowSpec{});
  normalize_energy(set, set.duration());
  auto analytic = psd(set);
  auto est = periodogram_estimate(set, kPsdSymbols, 99);
  double num = 0.0, den = 0.0;
  for (size_t j = 0; j < analytic.psd.size(); ++j) {
    double d = est.psd[j] - analytic.psd[j];
    num += d * d;
    den += analytic.psd[j] * analytic.psd[j];
  }
  double l2 = std::sqrt(num / den);
  double perr = std::fabs(est.power - analytic.power) / analytic.power;
  char buf[96];
  std::snprintf(buf, sizeof buf, "rel L2 = %.4f (tol %.2f), power err = %.4f (tol %.2f)",
                l2, kPsdL2Tol, perr, kPsdPowerTol);
  return {l2 < kPsdL2Tol && perr < kPsdPowerTol, buf};
}

// ---- C5: noiseless information of the certified maximal set ----------------
Outcome c5_saturated_information() {
  auto set = build_full_set(make_pattern(PatternKind::nonuniform, 4), 3, 1.0, WindowSpec{});
  normalize_energy(set, set.duration());
  if (set.m() != 242) return {false, "certified set has m = " + std::to_string(set.m())};
  auto dmc = build_dmc(set, 60.0);
  double mi = mutual_information(dmc);
  double cap = std::log2(242.0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "I = %.6f bits, log2(242) = %.6f (gap tol %g)", mi, cap,
                kSaturationGap);
  return {mi >= cap - kSaturationGap && mi <= cap + 1e-9, buf};
}

// ---- C6: rate identities ----------------------------------------------------
Outcome c6_rate_identities() {
  double rmax = r_max(3, 4, 1.0);
  double runif = r_unif(3, 4, 1.0);
  double rmax_direct = std::log2(2.0 * 125.0 - 8.0) / 3.0;
  double runif_direct = std::log2(2.0 * 64.0) / 3.0;
  bool ok = std::fabs(rmax - rmax_direct) < kIdentityTol &&
            std::fabs(runif - runif_direct) < kIdentityTol &&
            std::fabs(rmax - 2.6396) < kIdentityPrintTol &&
            std::fabs(runif - 2.3333) < kIdentityPrintTol;
  char buf[96];
  std::snprintf(buf, sizeof buf, "r_max = %.10f (2.6396), r_unif = %.10f (2.3333)", rmax,
                runif);
  return {ok, buf};
}

// ---- C7: spectral-efficiency landscape over (alpha, m) ----------------------
Outcome c7_efficiency_landscape() {
  SimConfig c;
  c.snr_db = 25.0;
  std::vector<double> alphas{0.0, 0.1, 0.3};
  std::vector<int> ms{16, 32, 48, 64, 96, 128};
  auto points = sweep_rate(c, alphas, ms);
  const RatePoint* best = nullptr;
  for (const auto& p : points)
    if (!best || p.se > best->se) best = &p;
  if (!best) return {false, "empty sweep"};
  bool interior = best->m == 48 || best->m == 64 || best->m == 96;
  bool in_range = best->se_per_dim >= kSePerDimLow && best->se_per_dim <= kSePerDimHigh;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "optimum at alpha = %.1f, m = %d, SE/2 = %.4f b/dim (req m interior near 64, "
                "SE/2 in [%.1f,%.1f])",
                best->alpha, best->m, best->se_per_dim, kSePerDimLow, kSePerDimHigh);
  return {interior && in_range, buf};
}

// ---- C8: random subsets never beat the full-set capacity --------------------
Outcome c8_subset_capacity() {
  auto set = build_full_set(make_pattern(PatternKind::uniform, 4), 3, 1.0, WindowSpec{});
  normalize_energy(set, set.duration());
  CounterRng rng{77};
  std::string note;
  for (double snr : {5.0, 15.0, 25.0}) {
    auto full = build_dmc(set, snr);
    auto ba = blahut_arimoto(full, 1e-7, 20000);
    double mi_min = 1e300, mi_max = -1e300, mi_sum = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      // draw 32 distinct pairs out of 64
      std::set<int> pairs;
      std::uint64_t ctr = 1000 * static_cast<std::uint64_t>(snr) + 100 * rep;
      while (pairs.size() < 32)
        pairs.insert(static_cast<int>(rng.below(64, 0, ctr++)));
      std::vector<int> ids(pairs.begin(), pairs.end());
      auto sub = subset_by_pairs(set, ids);
      double mi = mutual_information(build_dmc(sub, snr));
      if (mi > ba.capacity_bits + 1e-9)
        return {false, "subset MI exceeds capacity at " + std::to_string(snr) + " dB"};
      mi_min = std::min(mi_min, mi);
      mi_max = std::max(mi_max, mi);
      mi_sum += mi;
    }
    double spread = (mi_max - mi_min) / (mi_sum / 20.0);
    char buf[96];
    std::snprintf(buf, sizeof buf, " %g dB: C = %.4f, spread = %.3f;", snr,
                  ba.capacity_bits, spread);
    note += buf;
    if (snr <= 15.0 && spread >= kSubsetSpreadTol)
      return {false, "subset spread too wide at " + std::to_string(snr) + " dB:" + note};
  }
  return {true, "20 random 32-pair subsets per SNR all below capacity;" + note};
}

// ---- C9: exact models against brute-force references ------------------------
double brute_mi(const DmcModel& dmc) {
  const int m = dmc.m, nb = dmc.n_out;
  std::vector<long double> pb(nb, 0.0L);
  for (int u = 0; u < m; ++u)
    for (int b = 0; b < nb; ++b)
      pb[b] += static_cast<long double>(dmc.input_dist[u]) *
               std::exp(static_cast<long double>(dmc.row_log_prob(u, b)));
  long double mi = 0.0L;
  for (int u = 0; u < m; ++u)
    for (int b = 0; b < nb; ++b) {
      long double q = std::exp(static_cast<long double>(dmc.row_log_prob(u, b)));
      if (q > 0.0L && dmc.input_dist[u] > 0.0)
        mi += dmc.input_dist[u] * q * (std::log(q / pb[b]) / std::numbers::ln2_v<long double>);
    }
  return static_cast<double>(mi);
}

void brute_demod(const DmcModel& dmc, const Labeling& lab, std::uint32_t b,
                 const std::vector<double>& lp0, const std::vector<double>& lp1,
                 std::vector<double>& out) {
  const int q = lab.q;
  out.assign(q, 0.0);
  for (int j = 1; j <= q; ++j) {
    long double s0 = 0.0L, s1 = 0.0L;
    for (int u = 0; u < dmc.m; ++u) {
      long double w = std::exp(static_cast<long double>(dmc.row_log_prob(u, b)));
      for (int i = 1; i <= q; ++i) {
        if (i == j) continue;
        w *= std::exp(
            static_cast<long double>(lab.bit_of(u, i) ? lp1[i - 1] : lp0[i - 1]));
      }
      (lab.bit_of(u, j) ? s1 : s0) += w;
    }
    out[j - 1] = static_cast<double>(std::log(s0) - std::log(s1));
  }
}

Outcome c9_small_instance_oracle() {
  CounterRng rng{404};
  int instances = 0, demod_checks = 0;
  double worst_mi = 0.0, worst_llr = 0.0;
  for (auto kind : {PatternKind::uniform, PatternKind::nonuniform})
    for (int n = 1; n <= 4; ++n)
      for (int kappa = 1; kappa * n <= 8; ++kappa) {
        auto set = build_full_set(make_pattern(kind, n), kappa, 1.0, WindowSpec{});
        normalize_energy(set, set.duration());
        auto dmc = build_dmc(set, 8.0);
        worst_mi = std::max(worst_mi, std::fabs(mutual_information(dmc) - brute_mi(dmc)));
        ++instances;

        int q = 0;
        while ((1 << (q + 1)) <= set.m()) ++q;
        if ((1 << q) != set.m()) continue;  // labelings need a power of two
        auto lab = random_labeling(set, 17 + instances);
        std::vector<double> lp0(q), lp1(q), got(q), want(q);
        for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(dmc.n_out);
             b += 1 + dmc.n_out / 16) {
          for (int j = 0; j < q; ++j) {
            double p0 = rng.uniform(instances, 16 * b + j);
            lp0[j] = std::log(p0);
            lp1[j] = std::log1p(-p0);
          }
          demod_symbol_llr(dmc, lab, b, lp0, lp1, got);
          brute_demod(dmc, lab, b, lp0, lp1, want);
          for (int j = 0; j < q; ++j)
            worst_llr = std::max(worst_llr, std::fabs(got[j] - want[j]));
          ++demod_checks;
        }
      }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%d instances: max MI err = %.2g (tol %g); %d demods: max LLR err = %.2g "
                "(tol %g)",
                instances, worst_mi, kMiBruteTol, demod_checks, worst_llr, kLlrBruteTol);
  return {worst_mi < kMiBruteTol && worst_llr < kLlrBruteTol, buf};
}

// ---- C10: coded link at the design operating point --------------------------
BerPoint measured_ber(const CodedSystem& sys, SimConfig c, double snr, int frames) {
  c.snr_db = snr;
  c.block_frames = 128;
  c.max_frames = frames;
  c.target_frame_errors = 1 << 30;
  return coded_ber_at(sys, c, snr);
}

Outcome c10_coded_ber() {
  SimConfig uni;
  SimConfig non;
  non.pattern = "nonuniform";
  non.n = 3;
  auto sys_u = make_coded_system(uni);
  auto sys_n = make_coded_system(non);

  auto floor_u = measured_ber(sys_u, uni, kBerSnr, kFloorFrames);
  auto floor_n = measured_ber(sys_n, non, kBerSnr, kFloorFrames);
  if (!(floor_u.ber < kBerTarget && floor_n.ber < kBerTarget)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "BER at %g dB: uniform %.3g, nonuniform %.3g (req < %g)",
                  kBerSnr, floor_u.ber, floor_n.ber, kBerTarget);
    return {false, buf};
  }

  auto designed = measured_ber(sys_u, uni, kPinSnr, 512);
  SimConfig rnd = uni;
  rnd.labeling = "random";
  auto sys_r = make_coded_system(rnd);
  auto random_lab = measured_ber(sys_r, rnd, kPinSnr, 256);
  double p_d = designed.fer, p_r = random_lab.fer;
  double pool = static_cast<double>(designed.frame_errors + random_lab.frame_errors) /
                (designed.frames + random_lab.frames);
  double z = (p_r - p_d) / std::sqrt(pool * (1.0 - pool) *
                                     (1.0 / designed.frames + 1.0 / random_lab.frames));
  SimConfig noint = uni;
  noint.use_interleaver = false;
  auto plain = measured_ber(sys_u, noint, kPinSnr, 512);

  bool ok = z >= kZOneSided95 && designed.ber < random_lab.ber && designed.ber <= plain.ber;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "floor(%g dB): uni %.2g, non %.2g < %g; pin %g dB: designed BER %.3g vs "
                "random %.3g (FER z = %.1f >= %.3f), interleaved %.3g <= plain %.3g",
                kBerSnr, floor_u.ber, floor_n.ber, kBerTarget, kPinSnr, designed.ber,
                random_lab.ber, z, kZOneSided95, designed.ber, plain.ber);
  return {ok, buf};
}

// ---- C11: logarithmic growth of the saturated efficiency --------------------
Outcome c11_log_growth() {
  SimConfig c;
  c.pattern = "nonuniform";
  c.n_list = {2, 3, 4, 5, 6};
  auto table = asymptote_table(c);
  if (table.size() != 5) return {false, "expected 5 rows"};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : table) {
    if (p.se_inf_per_dim > std::log2(p.n_eff + 1.0) + 1e-9) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "n = %d: %.4f b/dim exceeds log2(n_o+1) = %.4f", p.n,
                    p.se_inf_per_dim, std::log2(p.n_eff + 1.0));
      return {false, buf};
    }
    double x = std::log2(p.n_eff), y = p.se_inf;
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double n = static_cast<double>(table.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "slope of SE vs log2(n_o) = %.4f (req [%g, %g]); all points below benchmark",
                slope, kSlopeLow, kSlopeHigh);
  return {slope >= kSlopeLow && slope <= kSlopeHigh, buf};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion run;
  };
  const std::vector<Entry> entries{
      {"combinatorics oracle", c1_combinatorics},
      {"euler product oracle", c2_product_oracle},
      {"shift equivalence", c3_shift_equivalence},
      {"analytic psd vs periodogram", c4_psd_oracle},
      {"saturated information of maximal set", c5_saturated_information},
      {"rate identities", c6_rate_identities},
      {"efficiency landscape optimum", c7_efficiency_landscape},
      {"random subsets vs capacity", c8_subset_capacity},
      {"small-instance model oracle", c9_small_instance_oracle},
      {"coded link at operating point", c10_coded_ber},
      {"logarithmic efficiency growth", c11_log_growth},
  };

  int failures = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entries[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  C%02zu %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", i + 1,
                entries[i].name, out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.pass;
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, entries.size());
  else std::printf("all %zu criteria passed\n", entries.size());
  return failures ? 1 : 0;
}
