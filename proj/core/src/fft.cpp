#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace zcq::detail {

namespace {

std::mutex plan_mutex;
std::map<std::size_t, fftw_plan>& plan_cache() {
  static std::map<std::size_t, fftw_plan> cache;
  return cache;
}

fftw_plan plan_for(std::size_t n) {
  std::lock_guard<std::mutex> lk(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  // FFTW_UNALIGNED keeps the plan valid for ordinary vector storage.
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  if (!p) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(n, p);
  return p;
}

}  // namespace

std::vector<double> fft_mag2(const std::vector<double>& x, std::size_t n_fft) {
  if (n_fft < 2 || x.size() > n_fft) throw std::invalid_argument("bad fft size");
  fftw_plan p = plan_for(n_fft);
  std::vector<double> in(n_fft, 0.0);
  std::copy(x.begin(), x.end(), in.begin());
  std::vector<fftw_complex> out(n_fft / 2 + 1);
  fftw_execute_dft_r2c(p, in.data(), out.data());
  std::vector<double> mag(n_fft / 2 + 1);
  for (std::size_t i = 0; i < mag.size(); ++i)
    mag[i] = out[i][0] * out[i][0] + out[i][1] * out[i][1];
  return mag;
}

}  // namespace zcq::detail
