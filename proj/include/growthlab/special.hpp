#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "growthlab/error.hpp"

namespace growthlab {

/// ln Gamma(x) for x > 0. Uses the reentrant variant where glibc offers one.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
inline double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log_beta: arguments must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace detail {

// ln n! by compensated summation of ln k.
inline std::vector<double> build_log_factorials(std::size_t size) {
  std::vector<double> out(size);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 1; n < size; ++n) {
    const double term = std::log(static_cast<double>(n));
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    out[n] = sum + comp;
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kLogFactorialTableSize = std::size_t{1} << 17;

/// ln n!. Exact summation for n below the table size, log-Gamma beyond.
inline double log_factorial(std::size_t n) {
  static const std::vector<double> table = detail::build_log_factorials(kLogFactorialTableSize);
  if (n < table.size()) return table[n];
  return log_gamma(static_cast<double>(n) + 1.0);
}

/// Stirling series for ln n!, kept as an independent cross-check.
inline double log_factorial_stirling(double n) {
  if (n < 1.0) return 0.0;
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return n * std::log(n) - n + 0.5 * std::log(2.0 * M_PI * n) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

}  // namespace growthlab
