#include "zcq/dmc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "zcq/math_util.hpp"
#include "zcq/rng.hpp"

namespace zcq {
namespace {

using test::h2;
using test::small_set;

TEST(Dmc, NoiseLevelFollowsSnrDefinition) {
  auto set = small_set(PatternKind::uniform, 2, 2);
  normalize_energy(set, set.duration());
  double snr_db = 7.0;
  auto dmc = build_dmc(set, snr_db);
  double n0 = set.power() / (std::pow(10.0, snr_db / 10.0) * set.w_nyq());
  EXPECT_NEAR(dmc.n0, n0, 1e-12 * n0);
  EXPECT_NEAR(dmc.sigma, std::sqrt(n0 * set.t_nyq / (2.0 * set.n())), 1e-12);
  EXPECT_EQ(dmc.n_out, 1 << (set.kappa * set.n()));
  EXPECT_EQ(dmc.m, set.m());
}

TEST(Dmc, RowsAreDistributions) {
  auto set = small_set(PatternKind::nonuniform, 2, 2);
  normalize_energy(set, set.duration());
  auto dmc = build_dmc(set, 4.0);
  ASSERT_TRUE(dmc.has_trans());
  for (int u = 0; u < dmc.m; ++u) {
    std::vector<double> logs(dmc.n_out);
    double sum = 0.0;
    for (int b = 0; b < dmc.n_out; ++b) {
      logs[b] = dmc.row_log_prob(u, static_cast<std::uint32_t>(b));
      sum += dmc.trans[static_cast<size_t>(u) * dmc.n_out + b];
    }
    EXPECT_NEAR(logsumexp(logs), 0.0, 1e-10);
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
}

// The observation integer packs position i = (k-1)n + (l-1) at bit kn-1-i
// with bit value 1 for sign +1. In the noise-free limit each row must put
// almost all mass on its own sign sequence.
TEST(Dmc, HighSnrConcentratesOnSignSequence) {
  auto set = small_set(PatternKind::uniform, 2, 2);
  normalize_energy(set, set.duration());
  auto dmc = build_dmc(set, 60.0);
  const int kn = dmc.kn();
  for (int u = 0; u < dmc.m; ++u) {
    std::uint32_t b = 0;
    for (int i = 0; i < kn; ++i)
      if (set.members[u].sign_seq[i] > 0) b |= 1u << (kn - 1 - i);
    EXPECT_GT(dmc.row_log_prob(u, b), std::log(0.999)) << "member " << u;
  }
}

TEST(MutualInformation, BinarySymmetricChannelClosedForm) {
  for (double p : {0.05, 0.11, 0.3}) {
    auto dmc = dmc_from_rows({{1 - p, p}, {p, 1 - p}});
    EXPECT_NEAR(mutual_information(dmc), 1.0 - h2(p), 1e-12);
  }
}

TEST(MutualInformation, MatchesDirectSumOnRealInstance) {
  auto set = small_set(PatternKind::uniform, 2, 2);
  normalize_energy(set, set.duration());
  auto dmc = build_dmc(set, 10.0);
  // independent plug-in evaluation from the transition matrix
  const int m = dmc.m, nb = dmc.n_out;
  std::vector<double> pb(nb, 0.0);
  for (int u = 0; u < m; ++u)
    for (int b = 0; b < nb; ++b) pb[b] += dmc.trans[static_cast<size_t>(u) * nb + b] / m;
  long double mi = 0.0L;
  for (int u = 0; u < m; ++u)
    for (int b = 0; b < nb; ++b) {
      double q = dmc.trans[static_cast<size_t>(u) * nb + b];
      if (q > 0.0) mi += q / m * std::log2(q / pb[b]);
    }
  EXPECT_NEAR(mutual_information(dmc), static_cast<double>(mi), 1e-10);
}

TEST(BlahutArimoto, KnownCapacities) {
  auto bsc = dmc_from_rows({{0.9, 0.1}, {0.1, 0.9}});
  auto r1 = blahut_arimoto(bsc, 1e-10);
  EXPECT_NEAR(r1.capacity_bits, 1.0 - h2(0.1), 1e-8);
  EXPECT_NEAR(r1.input_dist[0], 0.5, 1e-6);

  double e = 0.25;  // erasure channel: capacity 1 - e
  auto bec = dmc_from_rows({{1 - e, e, 0.0}, {0.0, e, 1 - e}});
  auto r2 = blahut_arimoto(bec, 1e-10);
  EXPECT_NEAR(r2.capacity_bits, 1.0 - e, 1e-8);
}

TEST(BlahutArimoto, DominatesUniformInputRate) {
  CounterRng rng{11};
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<std::vector<double>> rows(3, std::vector<double>(5));
    for (int u = 0; u < 3; ++u) {
      double s = 0.0;
      for (int b = 0; b < 5; ++b) s += rows[u][b] = rng.uniform(rep, 5 * u + b) + 0.02;
      for (int b = 0; b < 5; ++b) rows[u][b] /= s;
    }
    auto dmc = dmc_from_rows(rows);
    auto ba = blahut_arimoto(dmc, 1e-9);
    EXPECT_GE(ba.capacity_bits + 1e-9, mutual_information(dmc));
    double mass = 0.0;
    for (double p : ba.input_dist) mass += p;
    EXPECT_NEAR(mass, 1.0, 1e-9);
  }
}

TEST(RateIdentities, ClosedForms) {
  EXPECT_NEAR(r_max(3, 4, 1.0), std::log2(242.0) / 3.0, 1e-12);
  EXPECT_NEAR(r_max(3, 4, 1.0), 2.6396, 1e-4);
  EXPECT_NEAR(r_unif(3, 4, 1.0), 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(r_unif(3, 4, 1.0), 2.3333, 1e-4);
  EXPECT_NEAR(r_unif(2, 3, 0.5), (std::log2(3.0) + 0.5) / 0.5, 1e-12);
  double b4 = std::log2(4.0) + 3.0 * std::log2(4.0 / 3.0);
  EXPECT_NEAR(stationary_sign_upper_bound(4), b4, 1e-12);
}

TEST(Selection, BandwidthHitsContainment) {
  auto set = build_full_set(make_pattern(PatternKind::uniform, 4), 3, 1.0, WindowSpec{});
  normalize_energy(set, set.duration());
  auto ps = compute_pair_spectra(set);
  SelectionOptions opts;
  auto sel = select_bandwidth(set, ps, 16, opts);
  ASSERT_EQ(sel.pair_ids.size(), 16u);
  EXPECT_GE(sel.eta, opts.eta - 1e-9);
  EXPECT_LE(sel.eta, opts.eta + opts.eta_slack + 1e-6);
  // containment recomputed independently from the pair spectra
  double inband = 0.0, energy = 0.0;
  for (int p : sel.pair_ids) {
    inband += pair_in_band(ps, p, sel.w_eta);
    energy += ps.energy[p];
  }
  EXPECT_NEAR(inband / energy, sel.eta, 1e-9);

  auto sub = subset_by_pairs(set, sel.pair_ids);
  EXPECT_EQ(sub.m(), 32);
  EXPECT_TRUE(sub.paired);
  for (int i = 0; i < 16; ++i) {
    const auto& a = sub.members[i];
    const auto& b = sub.members[i + 16];
    EXPECT_EQ(a.id, i);
    EXPECT_EQ(b.id, i + 16);
    for (size_t j = 0; j < a.samples.size(); ++j)
      EXPECT_DOUBLE_EQ(b.samples[j], -a.samples[j]);
  }
}

TEST(Selection, HeuristicReportsConsistentRates) {
  auto set = build_full_set(make_pattern(PatternKind::uniform, 4), 3, 1.0, WindowSpec{});
  normalize_energy(set, set.duration());
  auto res = heuristic_select(set, 15.0, 16);
  EXPECT_EQ(res.subset.m(), 16);
  EXPECT_NEAR(res.rate, res.mi_bits / set.duration(), 1e-12);
  EXPECT_NEAR(res.se, res.rate / res.w_eta, 1e-12);
  EXPECT_NEAR(res.se_per_dim, 0.5 * res.se, 1e-12);
  EXPECT_GT(res.mi_bits, 0.0);
  EXPECT_LE(res.mi_bits, std::log2(16.0) + 1e-9);
}

}  // namespace
}  // namespace zcq
