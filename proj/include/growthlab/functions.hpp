#pragma once

// Entire functions described by their Taylor coefficients, and the direct
// maximum-modulus evaluator built on top of them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "growthlab/error.hpp"
#include "growthlab/logtable.hpp"
#include "growthlab/special.hpp"
#include "growthlab/xlog.hpp"

namespace growthlab {

using Params = std::map<std::string, double>;

/// A source of ln|c_n|. Immutable; copies share the underlying tables.
class CoeffModel {
 public:
  using LogCoeffFn = std::function<LogReal(std::size_t)>;

  struct Traits {
    std::optional<std::size_t> max_index;  // requests beyond are errors
    std::optional<std::size_t> degree;     // c_n == 0 for every n > degree
    std::size_t regular_from = 0;          // first index of the model's closed form
    bool nonnegative = true;
  };

  CoeffModel(std::string name, Params params, LogCoeffFn fn, Traits traits)
      : name_(std::move(name)), params_(std::move(params)), fn_(std::move(fn)), traits_(traits) {}

  const std::string& name() const noexcept { return name_; }
  const Params& params() const noexcept { return params_; }
  const Traits& traits() const noexcept { return traits_; }
  std::optional<std::size_t> max_index() const noexcept { return traits_.max_index; }
  std::optional<std::size_t> degree() const noexcept { return traits_.degree; }
  std::size_t regular_from() const noexcept { return traits_.regular_from; }
  bool nonnegative() const noexcept { return traits_.nonnegative; }

  LogReal log_coeff(std::size_t n) const {
    if (traits_.max_index && n > *traits_.max_index) {
      throw DomainError(name_ + ": coefficient index " + std::to_string(n) +
                        " beyond table size " + std::to_string(*traits_.max_index));
    }
    if (traits_.degree && n > *traits_.degree) return LogReal::zero();
    return fn_(n);
  }

  /// Human-readable label including parameters.
  std::string label() const {
    std::string s = name_;
    char sep = ':';
    for (const auto& [k, v] : params_) {
      s += sep;
      s += k + "=" + format_param(v);
      sep = ',';
    }
    return s;
  }

 private:
  static std::string format_param(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    return s;
  }

  std::string name_;
  Params params_;
  LogCoeffFn fn_;
  Traits traits_;
};

/// e^z: c_n = 1/n!.
inline CoeffModel model_exp() {
  return CoeffModel("exp", {}, [](std::size_t n) { return LogReal::from_log(-log_factorial(n)); },
                    {});
}

/// ln B_0..ln B_n by the Bell triangle, carried out with log_sum_exp.
inline std::vector<double> log_bell_numbers(std::size_t n_max) {
  std::vector<double> out(n_max + 1);
  std::vector<double> prev{0.0};
  std::vector<double> row;
  out[0] = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    row.assign(n + 1, 0.0);
    row[0] = prev.back();
    for (std::size_t j = 1; j <= n; ++j) row[j] = log_sum_exp(row[j - 1], prev[j - 1]);
    out[n] = row[0];
    prev.swap(row);
  }
  return out;
}

/// e^{e^z}: c_n = e B_n / n!, tabulated for n <= table_size.
inline CoeffModel model_expexp(std::size_t table_size) {
  if (table_size < 1) throw DomainError("model_expexp: table size must be >= 1");
  auto bell = std::make_shared<const std::vector<double>>(log_bell_numbers(table_size));
  CoeffModel::Traits traits;
  traits.max_index = table_size;
  return CoeffModel("expexp", {{"n", static_cast<double>(table_size)}},
                    [bell](std::size_t n) {
                      return LogReal::from_log(1.0 + (*bell)[n] - log_factorial(n));
                    },
                    traits);
}

namespace detail {

inline std::size_t checked_start(int q, std::size_t n0, const char* who) {
  const auto min = default_start_index(q);
  if (!min) throw DomainError(std::string(who) + ": start index for q=" + std::to_string(q) +
                              " is not representable");
  if (n0 < *min) {
    throw DomainError(std::string(who) + ": n0=" + std::to_string(n0) + " below " +
                      std::to_string(*min) + " required for q=" + std::to_string(q));
  }
  return *min;
}

}  // namespace detail

/// c_n = (ln^{(q-2)} n)^{-n/rho} for n >= n0, zero for 0 < n < n0, c_0 = 1.
/// n0 defaults to the first index with ln^{(q-1)} n >= 1.
inline CoeffModel model_sato_order(int q, double rho, std::optional<std::size_t> n0 = {}) {
  if (q < 2) throw DomainError("model_sato_order: q must be >= 2");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("model_sato_order: rho must be positive");
  const auto start = default_start_index(q);
  const std::size_t first = n0.value_or(start.value_or(0));
  detail::checked_start(q, first, "model_sato_order");
  CoeffModel::Traits traits;
  traits.regular_from = first;
  const auto uq = static_cast<unsigned>(q);
  return CoeffModel("satoorder",
                    {{"q", q}, {"rho", rho}, {"n0", static_cast<double>(first)}},
                    [uq, rho, first](std::size_t n) {
                      if (n == 0) return LogReal::from_log(0.0);
                      if (n < first) return LogReal::zero();
                      const double x = static_cast<double>(n);
                      return LogReal::from_log(-(x / rho) * iter_ln(uq - 1, x));
                    },
                    traits);
}

/// c_n = (sigma / ln^{(q-2)} n)^{n/rho_q} for n >= n0 (q >= 3), zero below.
inline CoeffModel model_sato_type(int q, double rho, double sigma,
                                  std::optional<std::size_t> n0 = {}) {
  if (q < 3) throw DomainError("model_sato_type: q must be >= 3");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("model_sato_type: rho must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("model_sato_type: sigma must be positive");
  }
  const auto start = default_start_index(q);
  const std::size_t first = n0.value_or(start.value_or(0));
  detail::checked_start(q, first, "model_sato_type");
  CoeffModel::Traits traits;
  traits.regular_from = first;
  const auto uq = static_cast<unsigned>(q);
  const double log_sigma = std::log(sigma);
  return CoeffModel("satotype",
                    {{"q", q}, {"rho", rho}, {"sigma", sigma}, {"n0", static_cast<double>(first)}},
                    [uq, rho, log_sigma, first](std::size_t n) {
                      if (n == 0) return LogReal::from_log(0.0);
                      if (n < first) return LogReal::zero();
                      const double x = static_cast<double>(n);
                      return LogReal::from_log((x / rho) * (log_sigma - iter_ln(uq - 1, x)));
                    },
                    traits);
}

/// t^n c_n.
inline CoeffModel model_scaled(const CoeffModel& base, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("model_scaled: t must be positive");
  Params params = base.params();
  params["scale"] = t;
  const double log_t = std::log(t);
  return CoeffModel(base.name(), std::move(params),
                    [base, log_t](std::size_t n) {
                      const LogReal c = base.log_coeff(n);
                      if (c.is_zero()) return c;
                      return LogReal::from_log(c.logmag() + log_t * static_cast<double>(n), c.sign());
                    },
                    base.traits());
}

/// Model backed by a parsed log table. Indices absent from the table are zero
/// coefficients; beyond the last entry the model is a polynomial unless the
/// table carries a tail rule.
inline CoeffModel model_from_table(const LogTable& table, std::string name = "file") {
  auto values = std::make_shared<std::vector<double>>();
  std::size_t last_listed = 0;
  std::optional<std::size_t> last_nonzero;
  for (const auto& [n, v] : table.entries) {
    if (values->size() <= n) values->resize(n + 1, -std::numeric_limits<double>::infinity());
    (*values)[n] = v;
    last_listed = n;
    if (std::isfinite(v)) last_nonzero = n;
  }
  CoeffModel::Traits traits;
  Params params;
  if (table.tail) {
    const auto lead = try_iter_ln(static_cast<unsigned>(table.tail->q) - 1, static_cast<double>(last_listed + 1));
    if (!lead || !(*lead > 0.0)) throw DomainError("tail rule undefined right after the last listed index");
    params["tail_q"] = table.tail->q;
    params["tail_rho"] = table.tail->rho;
    traits.regular_from = last_listed + 1;
  } else {
    traits.degree = last_nonzero.value_or(0);
  }
  std::shared_ptr<const std::vector<double>> shared = values;
  const auto tail = table.tail;
  return CoeffModel(std::move(name), std::move(params),
                    [shared, tail](std::size_t n) {
                      if (n < shared->size()) return LogReal::from_log((*shared)[n]);
                      if (!tail) return LogReal::zero();
                      const double x = static_cast<double>(n);
                      return LogReal::from_log(-(x / tail->rho) *
                                               iter_ln(static_cast<unsigned>(tail->q) - 1, x));
                    },
                    traits);
}

inline CoeffModel model_from_file(const std::string& path) {
  return model_from_table(read_log_table(path, true), "file");
}

// ---------------------------------------------------------------------------
// Tail certification

/// Certificate that sum_{k>K} t_k <= allowance, derived from t_{k+1} <= theta t_k
/// observed on [K, K + lookahead].
struct TailCertificate {
  std::size_t K = 0;
  double theta = 0.0;
  LogReal allowance;
  bool finite_support = false;
};

struct TailPolicy {
  double theta_max = 0.5;
  std::size_t lookahead = 16;
};

/// `term(k)` returns the nonnegative LogReal t_k. `max_index` bounds what may
/// be inspected; `degree` marks finite support.
template <class TermFn>
TailCertificate certify_tail(TermFn&& term, std::size_t K, std::optional<std::size_t> max_index,
                             std::optional<std::size_t> degree, const TailPolicy& policy = {}) {
  TailCertificate cert;
  cert.K = K;
  if (degree && K >= *degree) {
    cert.finite_support = true;
    return cert;
  }
  std::size_t last = K + policy.lookahead;
  if (degree) last = std::min(last, *degree);
  if (max_index) last = std::min(last, *max_index);
  if (last <= K) throw TailError(K, "no coefficients available beyond K");
  LogReal prev = term(K);
  if (prev.is_zero()) throw TailError(K, "term at K is zero");
  double theta = 0.0;
  for (std::size_t k = K; k < last; ++k) {
    const LogReal next = term(k + 1);
    if (next.is_zero()) {
      if (degree && k + 1 > *degree) break;
      throw TailError(K, "zero term inside the tail at index " + std::to_string(k + 1));
    }
    if (prev.is_zero()) throw TailError(K, "zero term inside the tail at index " + std::to_string(k));
    theta = std::max(theta, std::exp(next.logmag() - prev.logmag()));
    prev = next;
  }
  if (!(theta <= policy.theta_max)) {
    throw TailError(K, "ratio " + std::to_string(theta) + " exceeds " +
                           std::to_string(policy.theta_max));
  }
  cert.theta = theta;
  if (theta > 0.0) {
    cert.allowance = term(K) * LogReal::from_log(std::log(theta) - std::log1p(-theta));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Maximum modulus

/// Bracket for ln M(f, r).
struct LogMBracket {
  double lower = 0.0;  // ln of the largest single term
  double upper = 0.0;  // ln of the K-term sum plus tail allowance
  TailCertificate certificate;
};

inline LogMBracket eval_log_M(const CoeffModel& model, double r, std::size_t K,
                              const TailPolicy& policy = {}) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("eval_log_M: r must be positive");
  const double log_r = std::log(r);
  auto term = [&](std::size_t n) {
    const LogReal c = model.log_coeff(n).abs();
    if (c.is_zero()) return c;
    return LogReal::from_log(c.logmag() + log_r * static_cast<double>(n));
  };
  LogMBracket out;
  out.certificate = certify_tail(term, K, model.max_index(), model.degree(), policy);
  LogReal sum;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= K; ++n) {
    const LogReal t = term(n);
    if (t.is_zero()) continue;
    best = std::max(best, t.logmag());
    sum += t;
  }
  out.lower = best;
  out.upper = (sum + out.certificate.allowance).logmag();
  return out;
}

/// Smallest K past the dominant term at which the tail certifies and the
/// term at K is negligible (below e^-40 of the peak).
inline std::size_t find_tail_index(const CoeffModel& model, double r, const TailPolicy& policy = {},
                                   std::size_t hard_limit = 10'000'000) {
  const double log_r = std::log(r);
  std::size_t limit = hard_limit;
  if (model.max_index()) limit = std::min(limit, *model.max_index());
  if (model.degree()) return *model.degree();
  double peak = -std::numeric_limits<double>::infinity();
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n + 1 <= limit; ++n) {
    const LogReal c = model.log_coeff(n).abs();
    const double t = c.is_zero() ? -std::numeric_limits<double>::infinity()
                                 : c.logmag() + log_r * static_cast<double>(n);
    peak = std::max(peak, t);
    if (n > 0 && std::isfinite(t) && std::isfinite(prev) && t - prev <= std::log(policy.theta_max) &&
        t <= peak - 40.0) {
      auto term = [&](std::size_t k) {
        const LogReal ck = model.log_coeff(k).abs();
        if (ck.is_zero()) return ck;
        return LogReal::from_log(ck.logmag() + log_r * static_cast<double>(k));
      };
      try {
        certify_tail(term, n, model.max_index(), model.degree(), policy);
        return n;
      } catch (const TailError&) {
        if (model.max_index() && n + 1 >= *model.max_index()) break;
      }
    }
    prev = t;
  }
  throw TailError(limit, "no certifiable truncation index for r=" + std::to_string(r));
}

}  // namespace growthlab
