#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zcq {

// Block interleaver on N q-bit groups arranged as an N x q array. Column c of
// the array is read out after a cyclic shift of its rows by c (down for the
// interleaver, up for its inverse), which spreads the q bits of every group
// across q well-separated positions of the frame.
struct Interleaver {
  int n_groups = 0;  // N
  int q = 0;         // bits per group
  std::vector<int> perm;  // out[i] = in[perm[i]], size N*q

  int size() const { return n_groups * q; }
};

Interleaver make_interleaver(int n_groups, int q);
Interleaver inverse(const Interleaver& pi);

template <typename T>
std::vector<T> apply(const Interleaver& pi, std::span<const T> in) {
  std::vector<T> out(in.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = in[pi.perm[i]];
  return out;
}

}  // namespace zcq
