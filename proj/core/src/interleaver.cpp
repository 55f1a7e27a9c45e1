#include "zcq/interleaver.hpp"

#include <stdexcept>

namespace zcq {

Interleaver make_interleaver(int n_groups, int q) {
  if (n_groups < 1 || q < 1) throw std::invalid_argument("make_interleaver: bad shape");
  Interleaver pi;
  pi.n_groups = n_groups;
  pi.q = q;
  pi.perm.resize(static_cast<std::size_t>(n_groups) * q);
  for (int c = 0; c < q; ++c) {
    for (int r = 0; r < n_groups; ++r) {
      pi.perm[static_cast<std::size_t>(c) * n_groups + r] =
          ((r + c) % n_groups) * q + c;
    }
  }
  return pi;
}

Interleaver inverse(const Interleaver& pi) {
  Interleaver inv;
  inv.n_groups = pi.n_groups;
  inv.q = pi.q;
  inv.perm.assign(pi.perm.size(), 0);
  for (std::size_t i = 0; i < pi.perm.size(); ++i) inv.perm[pi.perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace zcq
