#include "zcq/math_util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace zcq {

double log_q(double x) {
  if (std::isnan(x)) throw std::invalid_argument("log_q: nan argument");
  if (x > 25.0) {
    // Q(x) ~ phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8), error < 1e-11 rel here.
    double ix2 = 1.0 / (x * x);
    double series = ix2 * (-1.0 + ix2 * (3.0 + ix2 * (-15.0 + ix2 * 105.0)));
    return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(x) +
           std::log1p(series);
  }
  if (x < -25.0) {
    // Q(x) = 1 - Q(-x) with Q(-x) tiny.
    double lt = log_q(-x);
    return lt < -700.0 ? 0.0 : std::log1p(-std::exp(lt));
  }
  return std::log(0.5 * std::erfc(x / std::numbers::sqrt2));
}

double q_func(double x) {
  double v = x < 25.0 ? 0.5 * std::erfc(x / std::numbers::sqrt2) : std::exp(log_q(x));
  return v < 1e-300 ? 0.0 : v;
}

double logsumexp(std::span<const double> v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v)
    if (x > mx) mx = x;
  if (!std::isfinite(mx)) return mx;
  double s = 0;
  for (double x : v)
    if (x != -std::numeric_limits<double>::infinity()) s += std::exp(x - mx);
  return mx + std::log(s);
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 2 || panels % 2) throw std::invalid_argument("simpson: panel count must be even");
  double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adapt(f, a, b, fa, fm, fb, whole, tol, 40);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace zcq
