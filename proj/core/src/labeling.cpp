#include "zcq/labeling.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "zcq/rng.hpp"

namespace zcq {
namespace {

// Ordered pairs at sign-sequence Hamming distance one.
std::vector<std::pair<int, int>> sign_adjacency(const WaveformSet& set) {
  std::vector<std::pair<int, int>> edges;
  const int m = set.m();
  for (int u = 0; u < m; ++u) {
    for (int v = u + 1; v < m; ++v) {
      int d = 0;
      const auto& a = set.members[u].sign_seq;
      const auto& b = set.members[v].sign_seq;
      for (std::size_t i = 0; i < a.size() && d < 2; ++i) d += a[i] != b[i];
      if (d == 1) {
        edges.emplace_back(u, v);
        edges.emplace_back(v, u);
      }
    }
  }
  return edges;
}

void fill_inverse(Labeling& lab) {
  lab.label_to_member.assign(lab.member_to_label.size(), -1);
  for (std::size_t u = 0; u < lab.member_to_label.size(); ++u) {
    int& slot = lab.label_to_member[lab.member_to_label[u]];
    if (slot != -1) throw std::logic_error("labeling: duplicate label");
    slot = static_cast<int>(u);
  }
}

}  // namespace

long long labeling_d_sum(const WaveformSet& set,
                         std::span<const std::uint32_t> member_to_label) {
  if (static_cast<int>(member_to_label.size()) != set.m()) {
    throw std::invalid_argument("labeling_d_sum: size mismatch");
  }
  long long d = 0;
  for (const auto& [u, v] : sign_adjacency(set)) {
    d += std::popcount(member_to_label[u] ^ member_to_label[v]);
  }
  return d;
}

Labeling design_labeling(const WaveformSet& set, const LabelingOptions& opt) {
  const int m = set.m();
  if (m < 2 || !std::has_single_bit(static_cast<unsigned>(m))) {
    throw std::invalid_argument("design_labeling: set size must be a power of two");
  }
  const int q = std::countr_zero(static_cast<unsigned>(m));
  if (q != 2 * set.kappa) {
    throw std::invalid_argument("design_labeling: needs log2(m) == 2*kappa");
  }
  const bool uniform = set.pattern.kind == PatternKind::uniform;
  if ((uniform && set.n() != 4) || (!uniform && set.n() != 3)) {
    throw std::invalid_argument("design_labeling: needs four crossing positions per interval");
  }
  if (!set.paired) throw std::invalid_argument("design_labeling: set must be paired");
  const int half = m / 2;
  for (int u = 0; u < half; ++u) {
    if (set.members[u].crossing_index != set.members[u + half].crossing_index ||
        set.members[u].starts_negative == set.members[u + half].starts_negative) {
      throw std::invalid_argument("design_labeling: members are not antipodal pairs");
    }
  }

  const std::uint32_t mask = (m > 1) ? static_cast<std::uint32_t>(m - 1) : 0u;
  // Gray code on crossing-position ranks; the table is its own inverse.
  static constexpr int kGray[4] = {0, 1, 3, 2};
  const int min_l = set.pattern.min_index();

  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::vector<std::uint32_t> labels(m, kUnset);
  std::vector<int> free_members;  // g(0+) > 0 members without structured labels
  std::vector<char> tuple_used(half, 0);
  for (int u = 0; u < m; ++u) {
    const Waveform& w = set.members[u];
    if (w.starts_negative) continue;  // handled via the partner's complement
    const int partner = u < half ? u + half : u - half;
    const int first_rank = w.crossing_index[0] - min_l;
    if (first_rank >= 2) {
      free_members.push_back(u);
      continue;
    }
    std::uint32_t lab = 0;
    for (int k = 0; k < set.kappa; ++k) {
      lab = (lab << 2) | static_cast<std::uint32_t>(kGray[w.crossing_index[k] - min_l]);
    }
    labels[u] = lab;
    labels[partner] = ~lab & mask;
    tuple_used[lab] = 1;  // structured labels have leading bit 0, lab < m/2
  }
  std::vector<std::uint32_t> free_tuples;
  for (int t = 0; t < half; ++t) {
    if (!tuple_used[t]) free_tuples.push_back(static_cast<std::uint32_t>(t));
  }
  if (free_tuples.size() != free_members.size()) {
    throw std::logic_error("design_labeling: free tuple/member count mismatch");
  }
  const int n_free = static_cast<int>(free_members.size());

  // Split the adjacency into edges with both labels fixed (constant cost)
  // and edges touching a free member or its partner.
  std::vector<char> is_dyn(m, 0);
  for (int u : free_members) {
    is_dyn[u] = 1;
    is_dyn[u < half ? u + half : u - half] = 1;
  }
  long long base = 0;
  std::vector<std::pair<int, int>> dyn_edges;
  for (const auto& e : sign_adjacency(set)) {
    if (is_dyn[e.first] || is_dyn[e.second]) {
      dyn_edges.push_back(e);
    } else {
      base += std::popcount(labels[e.first] ^ labels[e.second]);
    }
  }

  auto place = [&](std::span<const std::uint32_t> perm) {
    for (int i = 0; i < n_free; ++i) {
      const int u = free_members[i];
      labels[u] = perm[i];
      labels[u < half ? u + half : u - half] = ~perm[i] & mask;
    }
  };
  auto dyn_cost = [&]() {
    long long d = 0;
    for (const auto& [u, v] : dyn_edges) d += std::popcount(labels[u] ^ labels[v]);
    return d;
  };

  std::vector<std::uint32_t> best_perm = free_tuples;
  long long best_dyn = 0;
  if (n_free > 0) {
    if (n_free <= opt.exhaustive_cap) {
      std::vector<std::uint32_t> perm = free_tuples;  // sorted ascending
      best_dyn = -1;
      do {
        place(perm);
        const long long d = dyn_cost();
        if (best_dyn < 0 || d < best_dyn) {
          best_dyn = d;
          best_perm = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else if (!opt.allow_greedy) {
      throw std::runtime_error(
          "design_labeling: " + std::to_string(n_free) +
          " free tuples exceed the exhaustive cap; set allow_greedy to use local search");
    } else {
      CounterRng rng(opt.seed);
      best_dyn = -1;
      for (int start = 0; start < opt.greedy_starts; ++start) {
        std::vector<std::uint32_t> perm = free_tuples;
        std::uint64_t draw = 0;
        for (int i = n_free - 1; i > 0; --i) {
          const auto j = rng.below(static_cast<std::uint64_t>(i) + 1, start, draw++);
          std::swap(perm[i], perm[j]);
        }
        place(perm);
        long long cur = dyn_cost();
        for (bool improved = true; improved;) {
          improved = false;
          for (int i = 0; i < n_free; ++i) {
            for (int j = i + 1; j < n_free; ++j) {
              std::swap(perm[i], perm[j]);
              place(perm);
              const long long d = dyn_cost();
              if (d < cur) {
                cur = d;
                improved = true;
              } else {
                std::swap(perm[i], perm[j]);
              }
            }
          }
          place(perm);
        }
        if (best_dyn < 0 || cur < best_dyn) {
          best_dyn = cur;
          best_perm = perm;
        }
      }
    }
    place(best_perm);
  }

  Labeling lab;
  lab.q = q;
  lab.kind = "designed";
  lab.member_to_label = std::move(labels);
  lab.d_sum = base + best_dyn;
  lab.n_free = n_free;
  fill_inverse(lab);
  return lab;
}

Labeling random_labeling(const WaveformSet& set, std::uint64_t seed) {
  const int m = set.m();
  if (m < 2 || !std::has_single_bit(static_cast<unsigned>(m))) {
    throw std::invalid_argument("random_labeling: set size must be a power of two");
  }
  Labeling lab;
  lab.q = std::countr_zero(static_cast<unsigned>(m));
  lab.kind = "random";
  lab.member_to_label.resize(m);
  std::iota(lab.member_to_label.begin(), lab.member_to_label.end(), 0u);
  CounterRng rng(seed);
  std::uint64_t draw = 0;
  for (int i = m - 1; i > 0; --i) {
    const auto j = rng.below(static_cast<std::uint64_t>(i) + 1, 0, draw++);
    std::swap(lab.member_to_label[i], lab.member_to_label[j]);
  }
  lab.d_sum = labeling_d_sum(set, lab.member_to_label);
  fill_inverse(lab);
  return lab;
}

}  // namespace zcq
