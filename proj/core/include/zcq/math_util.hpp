#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

namespace zcq {

// log of the Gaussian tail Q(x) = P(N(0,1) > x), stable over the full double
// range (erfc below x = 25, asymptotic series above).
double log_q(double x);

// Q(x); values below 1e-300 are flushed to exactly 0.
double q_func(double x);

// log(sum(exp(v))). Ignores -inf entries; returns -inf if none are finite.
double logsumexp(std::span<const double> v);

// Composite Simpson with an even panel count.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

// Adaptive Simpson to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace zcq
