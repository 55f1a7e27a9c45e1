#include "zcq/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "zcq/rng.hpp"

namespace zcq {
namespace {

constexpr int kWordBits = 64;

int words_for(int bits) { return (bits + kWordBits - 1) / kWordBits; }

bool get_bit(std::span<const std::uint64_t> v, int i) {
  return (v[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void set_bit(std::span<std::uint64_t> v, int i) {
  v[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
}

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

// Greedy column-by-column growth. Each column picks col_weight rows of
// minimum current weight whose pairwise combinations have not been used by
// an earlier column (no 4-cycles); if no such row remains the pair
// constraint is dropped for the rest of the column.
std::vector<std::vector<int>> grow_rows(int n, int m, int col_weight,
                                        std::uint64_t seed) {
  CounterRng rng(seed);
  std::uint64_t draw = 0;
  std::vector<std::vector<int>> rows(m);
  std::vector<int> weight(m, 0);
  std::unordered_set<std::uint64_t> used_pairs;
  auto pair_key = [m](int a, int b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(m) + b;
  };

  std::vector<int> order(m);
  std::vector<int> picked;
  for (int col = 0; col < n; ++col) {
    picked.clear();
    // Random tie-break among equal-weight rows: shuffle, then stable sort.
    std::iota(order.begin(), order.end(), 0);
    for (int i = m - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1, 0, draw++));
      std::swap(order[i], order[j]);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight[a] < weight[b]; });

    for (bool relaxed : {false, true}) {
      for (int r : order) {
        if (static_cast<int>(picked.size()) == col_weight) break;
        if (std::find(picked.begin(), picked.end(), r) != picked.end()) continue;
        if (!relaxed) {
          bool clash = false;
          for (int p : picked) {
            if (used_pairs.count(pair_key(p, r))) {
              clash = true;
              break;
            }
          }
          if (clash) continue;
        }
        picked.push_back(r);
      }
      if (static_cast<int>(picked.size()) == col_weight) break;
    }
    if (static_cast<int>(picked.size()) != col_weight) {
      throw std::runtime_error("ldpc_construct: cannot place column");
    }
    for (std::size_t a = 0; a < picked.size(); ++a) {
      for (std::size_t b = a + 1; b < picked.size(); ++b) {
        used_pairs.insert(pair_key(picked[a], picked[b]));
      }
    }
    for (int r : picked) {
      rows[r].push_back(col);
      ++weight[r];
    }
  }
  for (auto& r : rows) std::sort(r.begin(), r.end());
  return rows;
}

}  // namespace

void ldpc_finalize(LdpcCode& code) {
  const int n = code.n;
  const int k = code.k;
  const int m = n - k;
  code.cols.assign(n, {});
  for (int c = 0; c < m; ++c) {
    for (int v : code.rows[c]) code.cols[v].push_back(c);
  }

  // Columns of H as m-bit vectors.
  const int mw = words_for(m);
  std::vector<std::vector<std::uint64_t>> colvec(n, std::vector<std::uint64_t>(mw, 0));
  for (int v = 0; v < n; ++v) {
    for (int c : code.cols[v]) set_bit(colvec[v], c);
  }

  // Scan columns right to left; keep the first m independent ones as the
  // parity set so message bits land at the front of the codeword.
  std::vector<std::vector<std::uint64_t>> basis;      // reduced vectors
  std::vector<int> basis_lead;                        // leading bit of each
  code.parity_cols.clear();
  code.msg_cols.clear();
  std::vector<std::uint64_t> tmp(mw);
  for (int v = n - 1; v >= 0; --v) {
    if (static_cast<int>(code.parity_cols.size()) == m) {
      code.msg_cols.push_back(v);
      continue;
    }
    tmp = colvec[v];
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (get_bit(tmp, basis_lead[i])) xor_into(tmp, basis[i]);
    }
    int lead = -1;
    for (int b = 0; b < m; ++b) {
      if (get_bit(tmp, b)) {
        lead = b;
        break;
      }
    }
    if (lead < 0) {
      code.msg_cols.push_back(v);
    } else {
      basis.push_back(tmp);
      basis_lead.push_back(lead);
      code.parity_cols.push_back(v);
    }
  }
  if (static_cast<int>(code.parity_cols.size()) != m) {
    throw std::runtime_error("ldpc_finalize: parity-check matrix is rank deficient");
  }
  std::sort(code.parity_cols.begin(), code.parity_cols.end());
  std::sort(code.msg_cols.begin(), code.msg_cols.end());

  // Solve H_p p = H_m s by Gauss-Jordan on [H_p | H_m]; afterwards row i
  // gives parity_cols[i] as an XOR mask over the k message bits.
  const int kw = words_for(k);
  std::vector<std::vector<std::uint64_t>> left(m, std::vector<std::uint64_t>(mw, 0));
  std::vector<std::vector<std::uint64_t>> right(m, std::vector<std::uint64_t>(kw, 0));
  for (int j = 0; j < m; ++j) {
    for (int c : code.cols[code.parity_cols[j]]) set_bit(left[c], j);
  }
  for (int j = 0; j < k; ++j) {
    for (int c : code.cols[code.msg_cols[j]]) set_bit(right[c], j);
  }
  for (int piv = 0; piv < m; ++piv) {
    int row = -1;
    for (int r = piv; r < m; ++r) {
      if (get_bit(left[r], piv)) {
        row = r;
        break;
      }
    }
    if (row < 0) throw std::runtime_error("ldpc_finalize: singular parity block");
    std::swap(left[piv], left[row]);
    std::swap(right[piv], right[row]);
    for (int r = 0; r < m; ++r) {
      if (r != piv && get_bit(left[r], piv)) {
        xor_into(left[r], left[piv]);
        xor_into(right[r], right[piv]);
      }
    }
  }
  code.parity_eq = std::move(right);
}

LdpcCode ldpc_construct(int n, int k, int col_weight, std::uint64_t seed) {
  if (n <= 0 || k <= 0 || k >= n) throw std::invalid_argument("ldpc_construct: bad n/k");
  if (col_weight < 2 || col_weight > n - k) {
    throw std::invalid_argument("ldpc_construct: bad column weight");
  }
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    LdpcCode code;
    code.n = n;
    code.k = k;
    code.col_weight = col_weight;
    code.seed = seed;
    code.rows = grow_rows(n, n - k, col_weight, mix64(seed) ^ attempt);
    try {
      ldpc_finalize(code);
      return code;
    } catch (const std::runtime_error&) {
      // rank deficient draw; re-randomize
    }
  }
  throw std::runtime_error("ldpc_construct: no full-rank construction found");
}

std::vector<std::uint8_t> LdpcCode::encode(std::span<const std::uint8_t> msg) const {
  if (static_cast<int>(msg.size()) != k) throw std::invalid_argument("encode: bad message size");
  const int kw = words_for(k);
  std::vector<std::uint64_t> packed(kw, 0);
  for (int i = 0; i < k; ++i) {
    if (msg[i]) set_bit(packed, i);
  }
  std::vector<std::uint8_t> cw(n, 0);
  for (int i = 0; i < k; ++i) cw[msg_cols[i]] = msg[i];
  for (int j = 0; j < n - k; ++j) {
    std::uint64_t acc = 0;
    for (int w = 0; w < kw; ++w) acc ^= parity_eq[j][w] & packed[w];
    cw[parity_cols[j]] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
  }
  return cw;
}

bool LdpcCode::check(std::span<const std::uint8_t> codeword) const {
  if (static_cast<int>(codeword.size()) != n) return false;
  for (const auto& row : rows) {
    int s = 0;
    for (int v : row) s ^= codeword[v];
    if (s) return false;
  }
  return true;
}

LdpcDecodeResult ldpc_decode(const LdpcCode& code, std::span<const double> llr_in,
                             int max_iter, double llr_clip) {
  const int n = code.n;
  const int m = n - code.k;
  if (static_cast<int>(llr_in.size()) != n) {
    throw std::invalid_argument("ldpc_decode: bad LLR size");
  }
  if (max_iter < 1) throw std::invalid_argument("ldpc_decode: max_iter < 1");

  auto clip = [llr_clip](double x) { return std::clamp(x, -llr_clip, llr_clip); };

  // Edge layout: edges of check c occupy [offset[c], offset[c]+deg(c)).
  std::vector<int> offset(m + 1, 0);
  for (int c = 0; c < m; ++c) offset[c + 1] = offset[c] + static_cast<int>(code.rows[c].size());
  const int n_edges = offset[m];
  // var_edges[v]: edge indices touching variable v.
  std::vector<std::vector<int>> var_edges(n);
  for (int c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < code.rows[c].size(); ++i) {
      var_edges[code.rows[c][i]].push_back(offset[c] + static_cast<int>(i));
    }
  }

  std::vector<double> q(n_edges), r(n_edges, 0.0);
  for (int v = 0; v < n; ++v) {
    for (int e : var_edges[v]) q[e] = clip(llr_in[v]);
  }

  LdpcDecodeResult res;
  res.llr_app.assign(n, 0.0);
  res.hard.assign(n, 0);
  std::vector<double> t, fwd, bwd;
  for (int iter = 1; iter <= max_iter; ++iter) {
    res.iterations = iter;
    // Check update: r_i = 2 atanh( prod_{j != i} tanh(q_j / 2) ).
    for (int c = 0; c < m; ++c) {
      const int deg = offset[c + 1] - offset[c];
      t.resize(deg);
      fwd.assign(deg + 1, 1.0);
      bwd.assign(deg + 1, 1.0);
      for (int i = 0; i < deg; ++i) t[i] = std::tanh(0.5 * q[offset[c] + i]);
      for (int i = 0; i < deg; ++i) fwd[i + 1] = fwd[i] * t[i];
      for (int i = deg - 1; i >= 0; --i) bwd[i] = bwd[i + 1] * t[i];
      for (int i = 0; i < deg; ++i) {
        const double prod = std::clamp(fwd[i] * bwd[i + 1], -1.0 + 1e-15, 1.0 - 1e-15);
        r[offset[c] + i] = clip(2.0 * std::atanh(prod));
      }
    }
    // Variable update and hard decision.
    for (int v = 0; v < n; ++v) {
      double total = clip(llr_in[v]);
      for (int e : var_edges[v]) total += r[e];
      res.llr_app[v] = total;
      res.hard[v] = total < 0.0 ? 1 : 0;
      for (int e : var_edges[v]) q[e] = clip(total - r[e]);
    }
    if (code.check(res.hard)) {
      res.syndrome_ok = true;
      return res;
    }
  }
  return res;
}

}  // namespace zcq
