#pragma once

// Best polynomial approximation E_n(f) = inf_{deg p < n} ||f - p||.
//
// In Dirichlet-type spaces the norm is a coefficient functional that grows
// strictly in each |coefficient|, so truncation is optimal and E_n is the
// norm of the tail. Everywhere else E_n is bracketed by
//   |c_n| ||z^n|| <= E_n <= sum_{k>=n} |c_k| ||z^k||.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/error.hpp"
#include "growthlab/functions.hpp"
#include "growthlab/spaces.hpp"
#include "growthlab/xlog.hpp"

namespace growthlab {

enum class EnKind { Exact, Bracket };

/// E_n as an exact value (with a certified relative tolerance) or a bracket.
/// For Exact estimates `lower == value` and `upper` adds the tail allowance;
/// for brackets `value` carries the upper end.
struct EnEstimate {
  std::size_t n = 0;
  EnKind kind = EnKind::Bracket;
  LogReal value;
  LogReal lower;
  LogReal upper;
  std::size_t tail_index = 0;
  double tail_certificate = 0.0;
  double rel_tolerance = 0.0;
};

enum class EnMode { Auto, Bracket };

struct EnSeries {
  std::size_t first = 0;
  std::vector<EnEstimate> items;  // items[i] is E_{first + i}
  TailCertificate certificate;

  const EnEstimate& at(std::size_t n) const { return items.at(n - first); }
};

namespace detail {

inline std::optional<std::size_t> min_opt(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

}  // namespace detail

/// E_n for every n in [first, last], summing tails up to K.
inline EnSeries en_series(const SpaceModel& space, const CoeffModel& model, std::size_t first,
                          std::size_t last, std::size_t K, EnMode mode = EnMode::Auto,
                          const TailPolicy& policy = {}) {
  if (last < first) throw DomainError("en_series: empty index range");
  if (K < last) throw DomainError("en_series: K must be >= the last requested index");
  const bool exact = mode == EnMode::Auto && space.exact_en_capable();
  const double p = exact ? space.p() : 1.0;
  auto term = [&](std::size_t k) {
    const LogReal c = model.log_coeff(k).abs();
    if (c.is_zero()) return c;
    if (exact) return LogReal::from_log(p * c.logmag() + space.weights().log_alpha(k));
    return c * monomial_norm(space, k);
  };

  EnSeries out;
  out.first = first;
  out.certificate =
      certify_tail(term, K, detail::min_opt(model.max_index(), space.max_index()), model.degree(), policy);
  const LogReal allowance = out.certificate.allowance;

  std::vector<LogReal> suffix(K - first + 2);
  for (std::size_t k = K + 1; k-- > first;) {
    suffix[k - first] = suffix[k - first + 1] + term(k);
  }

  out.items.resize(last - first + 1);
  for (std::size_t n = first; n <= last; ++n) {
    EnEstimate& e = out.items[n - first];
    e.n = n;
    e.tail_index = K;
    e.tail_certificate = out.certificate.theta;
    const LogReal sum = suffix[n - first];
    const LogReal with_tail = sum + allowance;
    if (exact) {
      e.kind = EnKind::Exact;
      e.value = sum.is_zero() ? sum : sum.pow(1.0 / p);
      e.lower = e.value;
      e.upper = with_tail.is_zero() ? with_tail : with_tail.pow(1.0 / p);
      e.rel_tolerance = sum.is_zero() ? 0.0 : std::expm1((with_tail.logmag() - sum.logmag()) / p);
    } else {
      e.kind = EnKind::Bracket;
      e.lower = term(n);
      e.upper = with_tail;
      e.value = e.upper;
    }
  }
  return out;
}

/// Exact E_n in a Dirichlet-type space: (sum_{k>=n} |c_k|^p alpha_k)^{1/p}.
inline EnEstimate exact_en_dirichlet(const SpaceModel& space, const CoeffModel& model, std::size_t n,
                                     std::size_t K, const TailPolicy& policy = {}) {
  if (!space.exact_en_capable()) throw DomainError("exact_en_dirichlet: not a Dirichlet-type space");
  return en_series(space, model, n, n, K, EnMode::Auto, policy).items.front();
}

/// Certified bracket |c_n| ||z^n|| <= E_n <= sum_{k>=n} |c_k| ||z^k||.
inline EnEstimate en_bracket(const SpaceModel& space, const CoeffModel& model, std::size_t n,
                             std::size_t K, const TailPolicy& policy = {}) {
  return en_series(space, model, n, n, K, EnMode::Bracket, policy).items.front();
}

struct Lemma13Report {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<std::size_t> first_violation;
  std::string detail;
};

/// Checks |c_n| ||z^n|| <= E_n <= E_0 = ||f|| for n <= n_max. Comparisons
/// allow 1e-12 slack in log space for rounding.
inline Lemma13Report check_lemma13(const SpaceModel& space, const CoeffModel& model, std::size_t n_max,
                                   std::size_t K, const TailPolicy& policy = {}) {
  if (!space.exact_en_capable()) throw DomainError("check_lemma13: requires an exact-E_n space");
  constexpr double kSlack = 1e-12;
  const EnSeries series = en_series(space, model, 0, n_max, K, EnMode::Auto, policy);
  const LogReal norm = series.items.front().upper;
  Lemma13Report rep;
  for (const EnEstimate& e : series.items) {
    ++rep.checked;
    const LogReal lhs = model.log_coeff(e.n).abs() * monomial_norm(space, e.n);
    const bool lower_ok = lhs.is_zero() || lhs.logmag() <= e.lower.logmag() + kSlack;
    const bool upper_ok = e.lower.is_zero() || e.lower.logmag() <= norm.logmag() + kSlack;
    if (!(lower_ok && upper_ok)) {
      rep.ok = false;
      rep.first_violation = e.n;
      rep.detail = (lower_ok ? "E_n > ||f||" : "|c_n| ||z^n|| > E_n") + std::string(" at n=") +
                   std::to_string(e.n);
      return rep;
    }
  }
  return rep;
}

}  // namespace growthlab
