#pragma once

// Independent numerical evaluation of ||z^n|| straight from the defining
// integrals and suprema. Used to cross-check the closed forms in spaces.hpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "growthlab/error.hpp"
#include "growthlab/spaces.hpp"
#include "growthlab/xlog.hpp"

namespace growthlab {

struct OracleResult {
  LogReal value;
  double rel_error = 0.0;  // achieved error estimate
};

namespace oracle_detail {

inline constexpr double kTarget = 1e-9;

// ln sup_{r in [0,1]} exp(logf(r)): fine grid, then Brent refinement around
// the best grid point. logf may return -inf.
inline double log_sup(const std::function<double(double)>& logf) {
  constexpr std::size_t kGrid = 4096;
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= kGrid; ++i) {
    const double r = static_cast<double>(i) / kGrid;
    const double v = logf(r);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = static_cast<double>(best == 0 ? 0 : best - 1) / kGrid;
  const double hi = static_cast<double>(std::min(best + 1, kGrid)) / kGrid;
  auto neg = [&](double r) { return -logf(r); };
  const auto [x, fx] = boost::math::tools::brent_find_minima(
      neg, lo, hi, std::numeric_limits<double>::digits / 2 + 4);
  (void)x;
  return std::max(best_val, -fx);
}

// ln of  integral_0^1 exp(g(r, 1-r)) dr  where g is the log integrand given
// the point and its complement (to keep precision near r = 1).
inline OracleResult log_integral(const std::function<double(double, double)>& g) {
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < 4096; ++i) {
    const double r = i / 4096.0;
    peak = std::max(peak, g(r, 1.0 - r));
  }
  boost::math::quadrature::tanh_sinh<double> integrator;
  // Integrate over t in (-1, 1) with r = (1 + t) / 2. boost hands over the
  // distance to the nearer endpoint, signed positive on the right half.
  auto f = [&](double t, double tc) {
    const double r = tc < 0 ? -tc / 2.0 : (1.0 + t) / 2.0;
    const double rc = tc > 0 ? tc / 2.0 : (1.0 - t) / 2.0;
    const double v = g(r, rc);
    return std::isfinite(v) ? std::exp(v - peak) : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double q = 0.5 * integrator.integrate(f, 1e-13, &err, &l1, &levels);
  err *= 0.5;
  if (!(q > 0.0)) throw ConvergenceError("quadrature produced a non-positive value", 1.0);
  const double rel = err / q;
  if (rel > kTarget) throw ConvergenceError("quadrature did not reach 1e-9", rel);
  return {LogReal::from_log(peak + std::log(q)), rel};
}

inline double xlog(double a, double x) { return a == 0.0 ? 0.0 : a * std::log(x); }

// M_p(z^n, r) on the circle by the trapezoid rule over t.
inline double log_circle_mean(double n, double p, double r) {
  if (r == 0.0) return n == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return n * std::log(r);
  constexpr int kNodes = 64;
  double sum = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const double t = 2.0 * M_PI * j / kNodes;
    const double re = r * std::cos(t);
    const double im = r * std::sin(t);
    sum += std::pow(std::hypot(re, im), n * p);
  }
  return std::log(sum / kNodes) / p;
}

}  // namespace oracle_detail

/// ||z^n|| from the space's defining integral or supremum.
inline OracleResult monomial_norm_oracle(const SpaceModel& s, std::size_t n) {
  using namespace oracle_detail;
  const double x = static_cast<double>(n);
  switch (s.kind()) {
    case SpaceKind::SupDisk:
      return {LogReal::from_log(log_sup([&](double r) { return xlog(x, r); })), 0.0};
    case SpaceKind::Hardy: {
      const double p = s.p();
      return {LogReal::from_log(log_sup([&](double r) { return log_circle_mean(x, p, r); })), 0.0};
    }
    case SpaceKind::Bergman: {
      // (1/pi) area integral reduced to 2 * int_0^1 r^{np+1} dr
      const double p = s.p();
      auto res = log_integral([&](double r, double) { return std::log(2.0) + xlog(x * p + 1.0, r); });
      return {LogReal::from_log(res.value.logmag() / p), res.rel_error / p};
    }
    case SpaceKind::WeightedBergman: {
      const double p = s.p();
      const double b = s.beta();
      const bool squared = s.form() == WeightForm::OneMinusR2;
      auto res = log_integral([&](double r, double rc) {
        const double w = squared ? xlog(b, rc * (1.0 + r)) : xlog(b, rc);
        return std::log(2.0) + xlog(x * p + 1.0, r) + w;
      });
      return {LogReal::from_log(res.value.logmag() / p), res.rel_error / p};
    }
    case SpaceKind::Ap: {
      const double e = 1.0 / s.p() - 2.0;
      return log_integral([&](double r, double rc) { return xlog(e, rc) + xlog(x, r); });
    }
    case SpaceKind::HLB: {
      const double beta = s.hlb_exponent();
      if (std::isinf(s.lambda())) {
        return {LogReal::from_log(log_sup([&](double r) { return xlog(beta, 1.0 - r) + xlog(x, r); })),
                0.0};
      }
      const double lam = s.lambda();
      auto res = log_integral([&](double r, double rc) { return xlog(lam * beta, rc) + xlog(x * lam, r); });
      return {LogReal::from_log(res.value.logmag() / lam), res.rel_error / lam};
    }
    case SpaceKind::Mixed: {
      const double a = s.alpha();
      if (std::isinf(s.q())) {
        return {LogReal::from_log(log_sup([&](double r) { return xlog(a, 1.0 - r) + xlog(x, r); })), 0.0};
      }
      const double q = s.q();
      auto res = log_integral([&](double r, double rc) { return xlog(q * a - 1.0, rc) + xlog(x * q, r); });
      return {LogReal::from_log(res.value.logmag() / q), res.rel_error / q};
    }
    case SpaceKind::Bloch: {
      // |f(0)| + sup (1 - r^2)^alpha |f'(z)|
      if (n == 0) return {LogReal::from_log(0.0), 0.0};
      const double a = s.alpha();
      return {LogReal::from_log(log_sup([&](double r) {
                if (r >= 1.0) return -std::numeric_limits<double>::infinity();
                return std::log(x) + xlog(x - 1.0, r) + xlog(a, 1.0 - r * r);
              })),
              0.0};
    }
    case SpaceKind::Dirichlet:
      throw DomainError("monomial_norm_oracle: Dirichlet norms are coefficient functionals");
  }
  throw Error("unknown space kind");
}

}  // namespace growthlab
