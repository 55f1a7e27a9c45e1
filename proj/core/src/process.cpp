#include "zcq/process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zcq/math_util.hpp"

namespace zcq {

double ZeroCrossingPattern::offset_for(int l) const {
  if (l < min_index() || l > n) throw std::invalid_argument("crossing index out of range");
  if (kind == PatternKind::nonuniform && l == 0) return lambda / n;
  return static_cast<double>(l) / n;
}

ZeroCrossingPattern make_pattern(PatternKind kind, int n, double lambda) {
  if (n < 1) throw std::invalid_argument("pattern requires n >= 1");
  ZeroCrossingPattern p;
  p.kind = kind;
  p.n = n;
  p.lambda = lambda;
  if (kind == PatternKind::nonuniform) {
    if (!(lambda > 0.0 && lambda < 1.0))
      throw std::invalid_argument("nonuniform pattern requires lambda in (0,1)");
    p.offsets.push_back(lambda / n);
  }
  for (int l = 1; l <= n; ++l) p.offsets.push_back(static_cast<double>(l) / n);
  return p;
}

void CrossingSequence::validate() const {
  for (int k = 0; k < kappa(); ++k) {
    if (!(tau[k] > k - 0.5 && tau[k] <= k + 0.5))
      throw std::invalid_argument("crossing tau_" + std::to_string(k) +
                                  " outside (k-1/2, k+1/2]");
  }
}

double eval_s_window(std::span<const double> tau, long lo, int product_depth, double t) {
  if (product_depth < 1) throw std::invalid_argument("product depth must be >= 1");
  const long size = static_cast<long>(tau.size());
  for (long j = 0; j < size; ++j) {
    double v = tau[j];
    long k = lo + j;
    if (!(v > k - 0.5 && v <= k + 0.5))
      throw std::invalid_argument("crossing tau_" + std::to_string(k) +
                                  " outside (k-1/2, k+1/2]");
  }
  auto tau_at = [&](long k) -> double {
    return (k >= lo && k < lo + size) ? tau[k - lo] : static_cast<double>(k);
  };

  const long K = product_depth;
  long reach = std::max(std::abs(lo), std::abs(lo + size - 1));
  long k_star = std::max({reach, static_cast<long>(std::floor(std::abs(t))) + 1, 1L});
  k_star = std::min(k_star, K);

  int sign = 1;
  double log_mag = 0.0;
  bool zero = false;
  auto absorb = [&](double f) {
    if (f == 0.0) {
      zero = true;
      return;
    }
    if (f < 0.0) {
      sign = -sign;
      f = -f;
    }
    log_mag += std::log(f);
  };

  absorb(t - tau_at(0));
  for (long k = 1; k <= k_star; ++k) {
    absorb(1.0 - t / tau_at(k));
    absorb(1.0 - t / tau_at(-k));
  }
  if (zero) return 0.0;

  if (k_star < K) {
    // Remaining factors have tau = +-k with k > |t|, so each is positive:
    // prod_{k=a}^{b} (1 - t/k) = Gamma(b+1-t) Gamma(a) / (Gamma(a-t) Gamma(b+1)).
    double a = static_cast<double>(k_star + 1);
    double b1 = static_cast<double>(K + 1);
    log_mag += std::lgamma(b1 - t) + std::lgamma(b1 + t) - std::lgamma(a - t) -
               std::lgamma(a + t) - 2.0 * (std::lgamma(b1) - std::lgamma(a));
  }
  return sign * std::exp(log_mag);
}

double eval_s(const ProcessRealization& r, double t) {
  return eval_s_window(r.crossings.tau, 0, r.product_depth, t);
}

ShiftEquivalenceResult shift_equivalence_check(const ProcessRealization& r, int i,
                                               std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("shift check requires a nonempty grid");
  r.crossings.validate();

  // Shifted crossing window: delta'_k = delta_{k+i} places tau_{k+i} - i at index k.
  std::vector<double> shifted(r.crossings.tau.begin(), r.crossings.tau.end());
  for (double& v : shifted) v -= i;
  long lo = -static_cast<long>(i);

  std::vector<double> base(grid.size());
  double max_abs = 0.0;
  for (size_t j = 0; j < grid.size(); ++j) {
    base[j] = eval_s(r, grid[j]);
    max_abs = std::max(max_abs, std::abs(base[j]));
  }
  if (max_abs == 0.0) throw std::invalid_argument("shift check grid hit only zeros");

  const double par = (i % 2 == 0) ? 1.0 : -1.0;
  std::vector<double> ratios;
  ratios.reserve(grid.size());
  for (size_t j = 0; j < grid.size(); ++j) {
    if (std::abs(base[j]) < 1e-9 * max_abs) continue;  // too close to a crossing
    double sh = eval_s_window(shifted, lo, r.product_depth, grid[j] - i);
    ratios.push_back(sh / (par * base[j]));
  }
  if (ratios.empty())
    throw std::invalid_argument("shift check grid rejected every point (all near crossings)");

  std::vector<double> sorted = ratios;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  ShiftEquivalenceResult res;
  res.c = sorted[sorted.size() / 2];
  res.points_used = static_cast<int>(ratios.size());
  for (double v : ratios)
    res.max_rel_err = std::max(res.max_rel_err, std::abs(v - res.c) / std::abs(res.c));
  return res;
}

bool verify_lambda(const ZeroCrossingPattern& pattern, int kappa, int product_depth) {
  if (pattern.kind == PatternKind::uniform) return true;
  if (kappa < 1) throw std::invalid_argument("verify_lambda requires kappa >= 1");
  int kk = std::max(kappa, 2);
  CrossingSequence cs;
  cs.tau.resize(kk);
  for (int k = 0; k < kk; ++k) cs.tau[k] = static_cast<double>(k);
  cs.tau[1] = 0.5 + pattern.lambda / pattern.n;
  ProcessRealization r{cs, product_depth};
  double a = 0.5, b = 0.5 + 1.0 / pattern.n;
  double integral =
      adaptive_simpson([&](double t) { return eval_s(r, t); }, a, b, 1e-10);
  return integral < 0.0;
}

}  // namespace zcq
