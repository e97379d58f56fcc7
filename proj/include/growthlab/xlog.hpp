#pragma once

// Log-domain scalars and iterated logarithms.
//
// Every magnitude in the library (Taylor coefficients, approximation errors,
// monomial norms) travels as a LogReal so that values like exp(-1e6) survive.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "growthlab/error.hpp"

namespace growthlab {

/// Real number stored as sign and natural log of magnitude.
/// sign == 0 is exact zero; logmag is then ignored.
class LogReal {
 public:
  constexpr LogReal() = default;

  static constexpr LogReal zero() { return LogReal(); }

  /// Build from a log-magnitude. Non-finite logmag is rejected, except -inf
  /// which is the conventional spelling of zero.
  static LogReal from_log(double logmag, int sign = 1) {
    if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) return zero();
    if (!std::isfinite(logmag)) throw DomainError("LogReal: non-finite log-magnitude");
    LogReal r;
    r.sign_ = sign > 0 ? 1 : -1;
    r.logmag_ = logmag;
    return r;
  }

  static LogReal from_double(double x) {
    if (std::isnan(x) || std::isinf(x)) throw DomainError("LogReal: non-finite value");
    if (x == 0.0) return zero();
    return from_log(std::log(std::fabs(x)), x > 0 ? 1 : -1);
  }

  constexpr int sign() const noexcept { return sign_; }
  constexpr bool is_zero() const noexcept { return sign_ == 0; }
  /// Natural log of |x|; -inf for zero.
  constexpr double logmag() const noexcept {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : logmag_;
  }

  /// Ordinary float value; may underflow to 0 or overflow to inf.
  double to_double() const noexcept {
    return sign_ == 0 ? 0.0 : static_cast<double>(sign_) * std::exp(logmag_);
  }

  LogReal abs() const noexcept {
    LogReal r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  LogReal operator-() const noexcept {
    LogReal r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  /// |x|^e with the sign dropped; x must be nonzero unless e > 0.
  LogReal pow(double e) const {
    if (sign_ == 0) {
      if (e > 0) return zero();
      throw DomainError("LogReal::pow: zero to a non-positive power");
    }
    if (sign_ > 0) return from_log(logmag_ * e, 1);
    if (e != std::floor(e)) throw DomainError("LogReal::pow: negative base to a non-integer power");
    return from_log(logmag_ * e, std::fmod(e, 2.0) == 0.0 ? 1 : -1);
  }

  friend LogReal operator*(const LogReal& a, const LogReal& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.logmag_ + b.logmag_, a.sign_ * b.sign_);
  }

  friend LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.is_zero()) throw DomainError("LogReal: division by zero");
    if (a.is_zero()) return zero();
    return from_log(a.logmag_ - b.logmag_, a.sign_ * b.sign_);
  }

  friend LogReal operator+(const LogReal& a, const LogReal& b);
  friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

  LogReal& operator+=(const LogReal& b) { return *this = *this + b; }
  LogReal& operator*=(const LogReal& b) { return *this = *this * b; }

  friend bool operator==(const LogReal& a, const LogReal& b) noexcept {
    if (a.sign_ != b.sign_) return false;
    return a.sign_ == 0 || a.logmag_ == b.logmag_;
  }

  /// Ordering by real value.
  friend std::partial_ordering operator<=>(const LogReal& a, const LogReal& b) noexcept {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    if (a.sign_ == 0) return std::partial_ordering::equivalent;
    return a.sign_ > 0 ? (a.logmag_ <=> b.logmag_) : (b.logmag_ <=> a.logmag_);
  }

 private:
  int sign_ = 0;
  double logmag_ = 0.0;
};

/// ln(e^a + e^b) computed as max + log1p(exp(-|a-b|)).
inline double log_sum_exp(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("log_sum_exp: non-finite argument");
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

/// ln(e^a - e^b) for a > b.
inline double log_diff_exp(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("log_diff_exp: non-finite argument");
  if (!(a > b)) throw DomainError("log_diff_exp: requires a > b");
  return a + std::log1p(-std::exp(b - a));
}

inline LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.sign_ == b.sign_) return LogReal::from_log(log_sum_exp(a.logmag_, b.logmag_), a.sign_);
  if (a.logmag_ == b.logmag_) return LogReal::zero();
  const bool a_big = a.logmag_ > b.logmag_;
  const LogReal& big = a_big ? a : b;
  const LogReal& small = a_big ? b : a;
  return LogReal::from_log(log_diff_exp(big.logmag_, small.logmag_), big.sign_);
}

/// ln applied q times; nullopt when an intermediate value is not positive.
inline std::optional<double> try_iter_ln(unsigned q, double x) noexcept {
  for (unsigned i = 0; i < q; ++i) {
    if (!(x > 0.0)) return std::nullopt;
    x = std::log(x);
  }
  return x;
}

/// ln^{(q)} x with ln^{(0)} x = x. Throws DomainError when any intermediate
/// value is not positive.
inline double iter_ln(unsigned q, double x) {
  double v = x;
  for (unsigned i = 0; i < q; ++i) {
    if (!(v > 0.0)) {
      throw DomainError("iter_ln: ln^(" + std::to_string(i) + ") of " + std::to_string(x) +
                        " is not positive");
    }
    v = std::log(v);
  }
  return v;
}

/// exp applied q times; may overflow to +inf.
inline double iter_exp(unsigned q, double y) noexcept {
  for (unsigned i = 0; i < q; ++i) y = std::exp(y);
  return y;
}

/// Smallest integer n >= 2 with ln^{(q-1)} n >= floor. Returns nullopt when
/// that index does not fit in 63 bits (q = 5 with floor = 1 already
/// exceeds it).
inline std::optional<std::uint64_t> iter_ln_min_arg(unsigned q, double floor) {
  if (q < 1) throw DomainError("iter_ln_min_arg: q must be >= 1");
  if (!(floor > 0.0)) throw DomainError("iter_ln_min_arg: floor must be positive");
  const double guess = iter_exp(q - 1, floor);
  if (!std::isfinite(guess) || guess > 9.0e18) return std::nullopt;
  auto ok = [&](std::uint64_t n) {
    const auto v = try_iter_ln(q - 1, static_cast<double>(n));
    return v && *v >= floor;
  };
  std::uint64_t n = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(guess)));
  while (n > 2 && ok(n - 1)) --n;
  while (!ok(n)) ++n;
  return n;
}

/// Start index for ratio sequences of level q: first n with ln^{(q-1)} n >= 1.
inline std::optional<std::uint64_t> default_start_index(int q) {
  if (q < 1) return std::nullopt;
  return iter_ln_min_arg(static_cast<unsigned>(q), 1.0);
}

}  // namespace growthlab
