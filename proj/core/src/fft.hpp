#pragma once

#include <cstddef>
#include <vector>

namespace zcq::detail {

// |DFT(x zero-padded to n_fft)|^2 for bins 0..n_fft/2. Thread-safe; plans are
// cached per size behind a mutex, execution runs concurrently.
std::vector<double> fft_mag2(const std::vector<double>& x, std::size_t n_fft);

}  // namespace zcq::detail
