#pragma once

// Estimation of the generalized order rho_q and type sigma_q from finite data:
// Taylor coefficients, best-approximation values E_n, or ln M(f, r).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "growthlab/approx.hpp"
#include "growthlab/error.hpp"
#include "growthlab/functions.hpp"
#include "growthlab/parallel.hpp"
#include "growthlab/spaces.hpp"
#include "growthlab/xlog.hpp"

namespace growthlab {

enum class Route { Coeff, Approx, Direct };

inline const char* route_name(Route r) {
  switch (r) {
    case Route::Coeff: return "coeff";
    case Route::Approx: return "approx";
    case Route::Direct: return "direct";
  }
  return "?";
}

/// Per-index ratio sequence. Abscissae are n for the coefficient and
/// approximation routes and r for the direct route.
struct RatioSeq {
  Route route = Route::Coeff;
  std::vector<double> n_values;
  std::vector<double> values;
  std::optional<std::vector<double>> lower;
  std::optional<std::vector<double>> upper;

  std::size_t size() const noexcept { return values.size(); }
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct LimsupDiagnostics {
  double tail_sup = 0.0;
  double full_sup = 0.0;
  double slope = 0.0;  // least squares of value against abscissa, trailing window
  double window_fraction = 0.5;
  std::size_t window_begin = 0;  // index into the sequence
  std::size_t window_size = 0;
};

struct LimsupResult {
  double point = 0.0;
  LimsupDiagnostics diagnostics;
};

/// Fit of D_n / n = a * l_n + b over the trailing window, used to remove the
/// O(1/l_n) bias of order ratios.
struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  bool applied = false;
};

struct Estimate {
  double point = 0.0;
  std::optional<Interval> interval;
  LimsupDiagnostics diagnostics;
  std::optional<OrderFit> fit;
};

struct GrowthReport {
  Route route = Route::Coeff;
  int q = 2;
  std::optional<Estimate> rho;
  std::optional<Estimate> sigma;
  bool polynomial = false;
  std::vector<std::string> notes;
  RatioSeq rho_series;
  RatioSeq sigma_series;
};

struct RouteOptions {
  double window_fraction = 0.5;
  unsigned threads = 1;
  TailPolicy tail;
};

namespace growth_detail {

inline std::size_t window_begin(std::size_t len, double w) {
  if (!(w > 0.0 && w <= 1.0)) throw DomainError("window fraction must lie in (0, 1]");
  const auto count = static_cast<std::size_t>(std::ceil(w * static_cast<double>(len)));
  return len - std::clamp<std::size_t>(count, 1, len);
}

// Least squares y = slope * x + intercept.
inline std::pair<double, double> least_squares(const double* x, const double* y, std::size_t m) {
  if (m < 2) return {0.0, m == 1 ? y[0] : 0.0};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return {0.0, my};
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

inline std::size_t start_index(int q) {
  const auto s = default_start_index(q);
  if (!s) throw DomainError("start index for q=" + std::to_string(q) + " is not representable");
  return static_cast<std::size_t>(*s);
}

inline std::size_t resolve_start(int q, std::optional<std::size_t> n_min) {
  if (q < 2) throw DomainError("q must be >= 2");
  const std::size_t s = start_index(q);
  if (!n_min) return s;
  if (*n_min < s) {
    throw DomainError("n_min=" + std::to_string(*n_min) + " is below the start index " + std::to_string(s) +
                      " for q=" + std::to_string(q));
  }
  return *n_min;
}

inline double level_log(int q, double n) { return iter_ln(static_cast<unsigned>(q), n); }

// Order estimate from per-index denominators D_n of the ratio n l_n / D_n.
inline Estimate order_estimate(const std::vector<double>& n, const std::vector<double>& ell,
                               const std::vector<double>& D, double w);

}  // namespace growth_detail

/// Trailing-window supremum as a finite-data stand-in for limsup.
inline LimsupResult limsup_estimate(const RatioSeq& seq, double window_fraction = 0.5) {
  if (seq.values.empty()) throw DomainError("limsup_estimate: empty sequence");
  if (seq.n_values.size() != seq.values.size()) throw DomainError("limsup_estimate: misaligned sequence");
  LimsupResult out;
  auto& d = out.diagnostics;
  d.window_fraction = window_fraction;
  d.window_begin = growth_detail::window_begin(seq.values.size(), window_fraction);
  d.window_size = seq.values.size() - d.window_begin;
  d.full_sup = *std::max_element(seq.values.begin(), seq.values.end());
  d.tail_sup = *std::max_element(seq.values.begin() + static_cast<std::ptrdiff_t>(d.window_begin),
                                 seq.values.end());
  d.slope = growth_detail::least_squares(seq.n_values.data() + d.window_begin,
                                         seq.values.data() + d.window_begin, d.window_size)
                .first;
  out.point = d.tail_sup;
  return out;
}

namespace growth_detail {

// The ratio n l_n / D_n tends to rho but carries a bias of order 1/l_n when
// D_n / n = l_n / rho + b with b != 0 (b = -1 for e^z). Fitting b on the
// trailing window and taking the supremum of n l_n / (D_n - b n) removes it.
// The fit is used only when l_n varies enough to separate slope from
// intercept; Sato-type sequences (b = 0) are left unchanged.
inline Estimate order_estimate(const std::vector<double>& n, const std::vector<double>& ell,
                               const std::vector<double>& D, double w) {
  RatioSeq raw;
  raw.n_values = n;
  raw.values.resize(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) raw.values[i] = n[i] * ell[i] / D[i];
  const LimsupResult base = limsup_estimate(raw, w);
  Estimate est;
  est.point = base.point;
  est.diagnostics = base.diagnostics;

  const std::size_t b = base.diagnostics.window_begin;
  const std::size_t m = base.diagnostics.window_size;
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = D[b + i] / n[b + i];
  const auto [lo, hi] = std::minmax_element(ell.begin() + static_cast<std::ptrdiff_t>(b), ell.end());
  OrderFit fit;
  std::tie(fit.slope, fit.intercept) = least_squares(ell.data() + b, y.data(), m);
  const bool spread = *hi > 0.0 && (*hi - *lo) / *hi >= 1e-3;
  if (m >= 8 && spread && fit.slope > 0.0) {
    double sup = -std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const double den = y[i] - fit.intercept;
      ok = den > 0.0;
      if (ok) sup = std::max(sup, ell[b + i] / den);
    }
    if (ok) {
      fit.applied = true;
      est.point = sup;
    }
  }
  est.fit = fit;
  return est;
}

inline void merge_interval(Estimate& out, const Estimate& lo, const Estimate& hi) {
  const double a = std::min(lo.point, hi.point);
  const double b = std::max(lo.point, hi.point);
  out.interval = Interval{a, b};
  out.point = 0.5 * (a + b);
}

inline std::size_t default_K(const CoeffModel& model, std::size_t N, std::optional<std::size_t> K) {
  std::size_t k = K.value_or(std::max(N, model.regular_from()) + 64);
  if (!K && model.max_index() && *model.max_index() > 0) k = std::min(k, *model.max_index() - 1);
  if (k < N) {
    throw DomainError("K=" + std::to_string(k) + " is below N=" + std::to_string(N) +
                      " (coefficient table too short)");
  }
  return k;
}

inline void check_range(std::size_t n_min, std::size_t N) {
  if (N < n_min) throw DomainError("N=" + std::to_string(N) + " is below n_min=" + std::to_string(n_min));
}

struct CoeffData {
  std::vector<double> n, ell, logc;  // nonzero indices only
};

inline CoeffData coeff_data(const CoeffModel& model, int q, std::size_t n_min, std::size_t N,
                            unsigned threads) {
  const std::size_t len = N - n_min + 1;
  std::vector<double> logc(len);
  parallel_for(0, len, threads, [&](std::size_t i) { logc[i] = model.log_coeff(n_min + i).abs().logmag(); });
  CoeffData d;
  for (std::size_t i = 0; i < len; ++i) {
    if (std::isinf(logc[i])) continue;
    const double n = static_cast<double>(n_min + i);
    d.n.push_back(n);
    d.ell.push_back(level_log(q - 1, n));
    d.logc.push_back(logc[i]);
  }
  if (d.n.empty()) {
    throw Refusal("all coefficients are zero in [" + std::to_string(n_min) + ", " + std::to_string(N) + "]");
  }
  return d;
}

inline GrowthReport polynomial_report(Route route, int q, std::size_t degree) {
  GrowthReport rep;
  rep.route = route;
  rep.q = q;
  rep.polynomial = true;
  Estimate zero;
  rep.rho = zero;
  rep.notes.push_back("polynomial: all orders 0 (degree " + std::to_string(degree) + ")");
  return rep;
}

// Per-n sigma value from ln(|c_n|) or ln(E_n / ||z^n||).
inline double sigma_value(int q, double rho, double n, double log_ratio) {
  const double root = std::exp(rho / n * log_ratio);
  if (q == 2) return n * root / (std::exp(1.0) * rho);
  return level_log(q - 2, n) * root;
}

}  // namespace growth_detail

/// rho_q from the coefficient formula limsup n ln^{(q-1)} n / (-ln|c_n|).
inline GrowthReport rho_from_coeffs(const CoeffModel& model, int q, std::optional<std::size_t> n_min,
                                    std::size_t N, const RouteOptions& opt = {}) {
  using namespace growth_detail;
  const std::size_t s = resolve_start(q, n_min);
  check_range(s, N);
  if (model.degree()) return polynomial_report(Route::Coeff, q, *model.degree());
  const CoeffData d = coeff_data(model, q, s, N, opt.threads);
  std::vector<double> D(d.n.size());
  for (std::size_t i = 0; i < D.size(); ++i) {
    D[i] = -d.logc[i];
    if (!(D[i] > 0.0)) {
      throw Refusal("-ln|c_n| <= 0 at n=" + std::to_string(static_cast<std::size_t>(d.n[i])));
    }
  }
  GrowthReport rep;
  rep.route = Route::Coeff;
  rep.q = q;
  rep.rho = order_estimate(d.n, d.ell, D, opt.window_fraction);
  rep.rho_series.route = Route::Coeff;
  rep.rho_series.n_values = d.n;
  for (std::size_t i = 0; i < D.size(); ++i) rep.rho_series.values.push_back(d.n[i] * d.ell[i] / D[i]);
  if (rep.rho->fit && rep.rho->fit->applied) rep.notes.push_back("rho: intercept-corrected trailing sup");
  return rep;
}

/// sigma_q from the coefficient formulas (1/(e rho)) limsup n |c_n|^{rho/n}
/// for q = 2 and limsup ln^{(q-2)} n |c_n|^{rho/n} for q >= 3.
inline GrowthReport sigma_from_coeffs(const CoeffModel& model, int q, double rho,
                                      std::optional<std::size_t> n_min, std::size_t N,
                                      const RouteOptions& opt = {}) {
  using namespace growth_detail;
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("sigma_from_coeffs: rho must be positive");
  const std::size_t s = resolve_start(q, n_min);
  check_range(s, N);
  if (model.degree()) return polynomial_report(Route::Coeff, q, *model.degree());
  const CoeffData d = coeff_data(model, q, s, N, opt.threads);
  GrowthReport rep;
  rep.route = Route::Coeff;
  rep.q = q;
  rep.sigma_series.route = Route::Coeff;
  rep.sigma_series.n_values = d.n;
  for (std::size_t i = 0; i < d.n.size(); ++i) {
    rep.sigma_series.values.push_back(sigma_value(q, rho, d.n[i], d.logc[i]));
  }
  const LimsupResult r = limsup_estimate(rep.sigma_series, opt.window_fraction);
  Estimate e;
  e.point = r.point;
  e.diagnostics = r.diagnostics;
  rep.sigma = e;
  return rep;
}

namespace growth_detail {

// ln ||z^n|| and the E_n series over [n_min, N].
struct ApproxData {
  std::vector<double> n, ell, log_norm;
  EnSeries en;
  bool exact = false;
};

inline ApproxData approx_data(const SpaceModel& space, const CoeffModel& model, int q, std::size_t n_min,
                              std::size_t N, std::size_t K, const RouteOptions& opt) {
  ApproxData d;
  d.en = en_series(space, model, n_min, N, K, EnMode::Auto, opt.tail);
  d.exact = space.exact_en_capable();
  const std::size_t len = N - n_min + 1;
  d.n.resize(len);
  d.ell.resize(len);
  d.log_norm.resize(len);
  parallel_for(0, len, opt.threads, [&](std::size_t i) {
    const double n = static_cast<double>(n_min + i);
    d.n[i] = n;
    d.ell[i] = level_log(q - 1, n);
    d.log_norm[i] = monomial_norm(space, n_min + i).logmag();
  });
  return d;
}

inline std::optional<std::size_t> first_zero_en(const ApproxData& d) {
  for (const auto& e : d.en.items) {
    if (e.lower.is_zero() && e.upper.is_zero()) return e.n;
  }
  return std::nullopt;
}

}  // namespace growth_detail

/// rho_q from limsup n ln^{(q-1)} n / ln(||z^n|| / E_n). Exact E_n gives a
/// point estimate; brackets give an interval.
inline GrowthReport rho_from_approx(const SpaceModel& space, const CoeffModel& model, int q,
                                    std::optional<std::size_t> n_min, std::size_t N,
                                    std::optional<std::size_t> K = {}, const RouteOptions& opt = {}) {
  using namespace growth_detail;
  const std::size_t s = resolve_start(q, n_min);
  check_range(s, N);
  const ApproxData d = approx_data(space, model, q, s, N, default_K(model, N, K), opt);
  if (const auto z = first_zero_en(d)) {
    GrowthReport rep = polynomial_report(Route::Approx, q, *z - 1);
    return rep;
  }
  const std::size_t len = d.n.size();
  std::vector<double> D_lo(len), D_hi(len);
  for (std::size_t i = 0; i < len; ++i) {
    const EnEstimate& e = d.en.items[i];
    D_lo[i] = d.log_norm[i] - e.upper.logmag();
    D_hi[i] = d.exact ? d.log_norm[i] - e.value.logmag() : d.log_norm[i] - e.lower.logmag();
    if (!(D_lo[i] > 0.0)) {
      throw Refusal("E_n upper bound >= ||z^n|| at n=" + std::to_string(e.n) + "; ratio undefined");
    }
  }
  GrowthReport rep;
  rep.route = Route::Approx;
  rep.q = q;
  rep.rho_series.route = Route::Approx;
  rep.rho_series.n_values = d.n;
  if (d.exact) {
    rep.rho = order_estimate(d.n, d.ell, D_hi, opt.window_fraction);
    for (std::size_t i = 0; i < len; ++i) rep.rho_series.values.push_back(d.n[i] * d.ell[i] / D_hi[i]);
    const double tol = d.en.items.back().rel_tolerance;
    if (tol > 1e-9) rep.notes.push_back("E_n tail tolerance " + std::to_string(tol) + " exceeds 1e-9");
  } else {
    // Larger E_n means a smaller denominator and a larger ratio.
    std::vector<double> lo(len), hi(len);
    for (std::size_t i = 0; i < len; ++i) {
      lo[i] = d.n[i] * d.ell[i] / D_hi[i];
      hi[i] = d.n[i] * d.ell[i] / D_lo[i];
      rep.rho_series.values.push_back(0.5 * (lo[i] + hi[i]));
    }
    rep.rho_series.lower = lo;
    rep.rho_series.upper = hi;
    const Estimate e_lo = order_estimate(d.n, d.ell, D_hi, opt.window_fraction);
    const Estimate e_hi = order_estimate(d.n, d.ell, D_lo, opt.window_fraction);
    Estimate e;
    e.diagnostics = limsup_estimate(rep.rho_series, opt.window_fraction).diagnostics;
    merge_interval(e, e_lo, e_hi);
    rep.rho = e;
    rep.notes.push_back("per-n ratio width: first " + std::to_string(hi.front() - lo.front()) + ", last " +
                        std::to_string(hi.back() - lo.back()));
  }
  return rep;
}

/// sigma_q from the approximation formulas. Refuses when the space does not
/// show a limit of ||z^n||^{1/n} (q >= 3) or a positive lower limit (q = 2).
inline GrowthReport sigma_from_approx(const SpaceModel& space, const CoeffModel& model, int q, double rho,
                                      std::optional<std::size_t> n_min, std::size_t N,
                                      std::optional<std::size_t> K = {}, const RouteOptions& opt = {}) {
  using namespace growth_detail;
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("sigma_from_approx: rho must be positive");
  const std::size_t s = resolve_start(q, n_min);
  check_range(s, N);

  std::size_t n_mu = std::max<std::size_t>(N, 10000);
  if (space.max_index()) n_mu = std::min(n_mu, *space.max_index());
  const MuBounds mu = mu_bounds(space, n_mu);
  if (q >= 3 && !(mu.mu2 - mu.mu1 <= 0.01)) {
    throw Refusal("lim ||z^n||^{1/n} does not appear to exist: mu bounds [" + std::to_string(mu.mu1) + ", " +
                  std::to_string(mu.mu2) + "]");
  }
  if (q == 2 && !(mu.mu1 > 0.0)) throw Refusal("liminf ||z^n||^{1/n} is not positive");

  const ApproxData d = approx_data(space, model, q, s, N, default_K(model, N, K), opt);
  if (const auto z = first_zero_en(d)) return polynomial_report(Route::Approx, q, *z - 1);
  GrowthReport rep;
  rep.route = Route::Approx;
  rep.q = q;
  rep.notes.push_back("mu bounds over [" + std::to_string(n_mu / 2) + ", " + std::to_string(n_mu) + "]: [" +
                      std::to_string(mu.mu1) + ", " + std::to_string(mu.mu2) + "]");
  rep.sigma_series.route = Route::Approx;
  rep.sigma_series.n_values = d.n;
  const std::size_t len = d.n.size();
  if (d.exact) {
    for (std::size_t i = 0; i < len; ++i) {
      rep.sigma_series.values.push_back(
          sigma_value(q, rho, d.n[i], d.en.items[i].value.logmag() - d.log_norm[i]));
    }
    const LimsupResult r = limsup_estimate(rep.sigma_series, opt.window_fraction);
    Estimate e;
    e.point = r.point;
    e.diagnostics = r.diagnostics;
    rep.sigma = e;
  } else {
    RatioSeq lo_seq = rep.sigma_series, hi_seq = rep.sigma_series;
    std::vector<double> lo(len), hi(len);
    for (std::size_t i = 0; i < len; ++i) {
      lo[i] = sigma_value(q, rho, d.n[i], d.en.items[i].lower.logmag() - d.log_norm[i]);
      hi[i] = sigma_value(q, rho, d.n[i], d.en.items[i].upper.logmag() - d.log_norm[i]);
      rep.sigma_series.values.push_back(0.5 * (lo[i] + hi[i]));
    }
    lo_seq.values = lo;
    hi_seq.values = hi;
    rep.sigma_series.lower = lo;
    rep.sigma_series.upper = hi;
    Estimate e_lo, e_hi, e;
    e_lo.point = limsup_estimate(lo_seq, opt.window_fraction).point;
    e_hi.point = limsup_estimate(hi_seq, opt.window_fraction).point;
    e.diagnostics = limsup_estimate(rep.sigma_series, opt.window_fraction).diagnostics;
    merge_interval(e, e_lo, e_hi);
    rep.sigma = e;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Level detection

struct LevelTrial {
  int q = 0;
  bool evaluated = false;
  bool accepted = false;
  double early = 0.0;  // estimate on the earlier window
  double late = 0.0;   // estimate on the later window
  double growth = 0.0;     // ln(late / early)
  double allowance = 0.0;  // delta * |change of ln g_{q+1}|
  std::string note;
};

struct DetectResult {
  std::optional<int> q;  // empty: no level in 2..5 qualified
  bool polynomial = false;
  std::vector<LevelTrial> trials;

  std::string label() const {
    if (polynomial) return "polynomial";
    return q ? std::to_string(*q) : ">=6";
  }
};

struct DetectOptions {
  double threshold = 100.0;
  double delta = 0.25;
  unsigned threads = 1;
};

namespace growth_detail {

// D_n for the level tests: -ln|c_n| (coefficients) or ln(||z^n|| / E_n).
using DenFn = std::function<std::optional<double>(std::size_t)>;

inline std::optional<double> window_rho(int q, std::size_t lo, std::size_t hi, const DenFn& den) {
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t n = lo; n <= hi; ++n) {
    const auto D = den(n);
    if (!D) continue;
    if (!(*D > 0.0)) return std::nullopt;
    const double x = static_cast<double>(n);
    sup = std::max(sup, x * level_log(q - 1, x) / *D);
  }
  if (!std::isfinite(sup)) return std::nullopt;
  return sup;
}

// g_{q+1}(n) = ln^{(q-1)} n / ln^{(q)} n: how a level-q ratio grows when the
// true level is q + 1.
inline std::optional<double> log_g(int q, double n) {
  const auto a = try_iter_ln(static_cast<unsigned>(q - 1), n);
  const auto b = try_iter_ln(static_cast<unsigned>(q), n);
  if (!a || !b || !(*a > 0.0) || !(*b > 0.0)) return std::nullopt;
  return std::log(*a / *b);
}

inline DetectResult detect_levels(std::size_t N, const DenFn& den,
                                  const std::function<std::size_t(std::size_t)>& first_nonzero,
                                  const DetectOptions& opt) {
  DetectResult res;
  for (int q = 2; q <= 5; ++q) {
    LevelTrial t;
    t.q = q;
    const auto s0 = default_start_index(q);
    if (!s0 || *s0 > N) {
      t.note = "start index not reachable with N=" + std::to_string(N);
      res.trials.push_back(t);
      continue;
    }
    const std::size_t s = first_nonzero(static_cast<std::size_t>(*s0));
    if (s >= N) {
      t.note = "no nonzero data in range";
      res.trials.push_back(t);
      continue;
    }
    std::size_t a = std::max(s, N / 4), m = N / 2;
    if (a + 4 > m) {
      a = s;
      m = s + (N - s) / 2;
    }
    const auto early = window_rho(q, a, m, den);
    const auto late = window_rho(q, m, N, den);
    const auto g_early = log_g(q, 0.5 * static_cast<double>(a + m));
    const auto g_late = log_g(q, 0.5 * static_cast<double>(m + N));
    if (!early || !late || !g_early || !g_late) {
      t.note = "inconclusive";
      res.trials.push_back(t);
      continue;
    }
    t.evaluated = true;
    t.early = *early;
    t.late = *late;
    t.growth = std::log(*late / *early);
    t.allowance = opt.delta * std::fabs(*g_late - *g_early);
    t.accepted = *late <= opt.threshold && t.growth <= t.allowance;
    res.trials.push_back(t);
    if (t.accepted) {
      res.q = q;
      return res;
    }
  }
  return res;
}

}  // namespace growth_detail

/// Smallest level q in 2..5 whose ratio is bounded by the threshold and does
/// not grow between an early and a late window faster than delta times the
/// growth expected if the function were of level q + 1.
inline DetectResult detect_q(const CoeffModel& model, std::size_t N, const DetectOptions& opt = {}) {
  DetectResult res;
  if (model.degree()) {
    res.polynomial = true;
    return res;
  }
  if (model.max_index() && *model.max_index() < N) {
    throw DomainError("detect_q: N exceeds the coefficient table");
  }
  auto den = [&](std::size_t n) -> std::optional<double> {
    const LogReal c = model.log_coeff(n).abs();
    if (c.is_zero()) return std::nullopt;
    return -c.logmag();
  };
  auto first_nonzero = [&](std::size_t from) {
    std::size_t n = std::max(from, model.regular_from());
    while (n < N && model.log_coeff(n).is_zero()) ++n;
    return n;
  };
  return growth_detail::detect_levels(N, den, first_nonzero, opt);
}

/// Level detection from exact E_n in a Dirichlet-type space.
inline DetectResult detect_q(const SpaceModel& space, const CoeffModel& model, std::size_t N,
                             const DetectOptions& opt = {}, const TailPolicy& tail = {}) {
  if (!space.exact_en_capable()) return detect_q(model, N, opt);
  DetectResult res;
  if (model.degree()) {
    res.polynomial = true;
    return res;
  }
  const std::size_t first = std::min<std::size_t>(N, std::max<std::size_t>(3, model.regular_from()));
  const EnSeries en = en_series(space, model, first, N, growth_detail::default_K(model, N, {}), EnMode::Auto,
                                tail);
  auto den = [&](std::size_t n) -> std::optional<double> {
    if (n < first) return std::nullopt;
    return monomial_norm(space, n).logmag() - en.at(n).value.logmag();
  };
  auto first_nonzero = [&](std::size_t from) { return std::max(from, first); };
  return growth_detail::detect_levels(N, den, first_nonzero, opt);
}

// ---------------------------------------------------------------------------
// Direct route

/// rho_q and sigma_q from ln M(f, r) on a grid of radii. Radii with r <= 1 or
/// where the iterated logarithm is undefined are skipped with a note; a
/// radius whose tail cannot be certified is an error.
inline GrowthReport rho_sigma_direct(const CoeffModel& model, int q, std::optional<double> rho,
                                     const std::vector<double>& r_grid, const RouteOptions& opt = {}) {
  using namespace growth_detail;
  if (q < 2) throw DomainError("rho_sigma_direct: q must be >= 2");
  if (r_grid.empty()) throw DomainError("rho_sigma_direct: empty r grid");
  if (!std::is_sorted(r_grid.begin(), r_grid.end()) ||
      std::adjacent_find(r_grid.begin(), r_grid.end()) != r_grid.end()) {
    throw DomainError("rho_sigma_direct: r grid must be strictly increasing");
  }
  if (rho && !(*rho > 0.0 && std::isfinite(*rho))) throw DomainError("rho_sigma_direct: rho must be positive");

  std::vector<double> logM(r_grid.size());
  parallel_for(0, r_grid.size(), opt.threads, [&](std::size_t i) {
    const double r = r_grid[i];
    if (!(r > 0.0)) throw DomainError("rho_sigma_direct: radii must be positive");
    const std::size_t K = find_tail_index(model, r, opt.tail);
    logM[i] = eval_log_M(model, r, K, opt.tail).upper;
  });

  GrowthReport rep;
  rep.route = Route::Direct;
  rep.q = q;
  rep.rho_series.route = Route::Direct;
  rep.sigma_series.route = Route::Direct;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    const auto top = try_iter_ln(static_cast<unsigned>(q - 1), logM[i]);
    if (r <= 1.0 || !top) {
      ++skipped;
      continue;
    }
    rep.rho_series.n_values.push_back(r);
    rep.rho_series.values.push_back(*top / std::log(r));
    if (rho) {
      rep.sigma_series.n_values.push_back(r);
      rep.sigma_series.values.push_back(*try_iter_ln(static_cast<unsigned>(q - 2), logM[i]) /
                                        std::pow(r, *rho));
    }
  }
  if (skipped > 0) {
    rep.notes.push_back(std::to_string(skipped) + " radii skipped (r <= 1 or ln^(" + std::to_string(q - 1) +
                        ") ln M undefined)");
  }
  if (rep.rho_series.values.empty()) throw Refusal("rho_sigma_direct: no usable radius in the grid");
  const LimsupResult rr = limsup_estimate(rep.rho_series, opt.window_fraction);
  rep.rho = Estimate{rr.point, std::nullopt, rr.diagnostics, std::nullopt};
  if (rho) {
    const LimsupResult sr = limsup_estimate(rep.sigma_series, opt.window_fraction);
    rep.sigma = Estimate{sr.point, std::nullopt, sr.diagnostics, std::nullopt};
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Sub-unit order criterion

struct Corollary1Result {
  bool decays = false;
  std::optional<bool> rho_below_one;  // from rho_from_approx
  bool consistent = false;
  double tail_sup = 0.0;
  double log_slope = 0.0;  // slope of ln s_n against ln^{(q-1)} n, trailing window
  RatioSeq trace;
};

/// Evaluates s_n = (E_n / ||z^n||)^{1/n} ln^{(q-2)} n (upper bracket when E_n
/// is not exact). The sequence is judged to decay when its trailing sup is
/// below 1e-3 or ln s_n falls against ln^{(q-1)} n with slope below -0.01.
inline Corollary1Result corollary1_check(const SpaceModel& space, const CoeffModel& model, int q,
                                         std::size_t N, std::optional<std::size_t> K = {},
                                         const RouteOptions& opt = {}) {
  using namespace growth_detail;
  const std::size_t s = resolve_start(q, std::nullopt);
  check_range(s, N);
  Corollary1Result out;
  out.trace.route = Route::Approx;
  if (model.degree()) {
    for (std::size_t n = *model.degree() + 1; n <= std::max(N, *model.degree() + 1); ++n) {
      out.trace.n_values.push_back(static_cast<double>(n));
      out.trace.values.push_back(0.0);
    }
    out.decays = true;
    out.rho_below_one = true;
    out.consistent = true;
    return out;
  }
  const ApproxData d = approx_data(space, model, q, s, N, default_K(model, N, K), opt);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < d.n.size(); ++i) {
    const double log_s = (d.en.items[i].value.logmag() - d.log_norm[i]) / d.n[i] +
                         std::log(level_log(q - 2, d.n[i]));
    out.trace.n_values.push_back(d.n[i]);
    out.trace.values.push_back(std::exp(log_s));
    x.push_back(d.ell[i]);
    y.push_back(log_s);
  }
  const LimsupResult lr = limsup_estimate(out.trace, opt.window_fraction);
  out.tail_sup = lr.point;
  const std::size_t b = lr.diagnostics.window_begin;
  out.log_slope = least_squares(x.data() + b, y.data() + b, lr.diagnostics.window_size).first;
  out.decays = out.tail_sup < 1e-3 || out.log_slope < -0.01;
  const GrowthReport rep = rho_from_approx(space, model, q, std::nullopt, N, K, opt);
  if (rep.rho) {
    const double hi = rep.rho->interval ? rep.rho->interval->upper : rep.rho->point;
    out.rho_below_one = hi < 1.0;
  }
  out.consistent = out.rho_below_one && *out.rho_below_one == out.decays;
  return out;
}

}  // namespace growthlab
