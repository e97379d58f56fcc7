#pragma once

// Analytic-function spaces on the unit disk, described through the norms of
// their monomials ||z^n||.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
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

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SpaceKind {
  SupDisk,
  Hardy,
  Bergman,
  WeightedBergman,
  Ap,
  HLB,      // B_{p,q,lambda}
  Mixed,    // H^{p,q,alpha}
  Bloch,    // B_alpha
  Dirichlet // D_p(alpha)
};

/// Radial weight of a weighted Bergman space.
enum class WeightForm { OneMinusR, OneMinusR2 };

/// Weight sequence alpha_k of a Dirichlet-type space.
class DirichletWeights {
 public:
  enum class Kind { Constant, Power, Geometric, Table };

  static DirichletWeights constant(double c = 1.0) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("constant weight must be positive");
    return DirichletWeights(Kind::Constant, c);
  }

  /// alpha_k = (k + 1)^s.
  static DirichletWeights power(double s) {
    if (!std::isfinite(s)) throw DomainError("power weight exponent must be finite");
    return DirichletWeights(Kind::Power, s);
  }

  /// alpha_k = c^k with c >= 1.
  static DirichletWeights geometric(double c) {
    if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("geometric weight base must be >= 1");
    return DirichletWeights(Kind::Geometric, c);
  }

  /// Weights from a log table (values ln alpha_k, contiguous from k = 0).
  /// liminf alpha_k^{1/k} >= 1 and limsup alpha_k^{1/k} < inf are checked on
  /// the upper half of the supplied range, with tolerance 0.01 on the liminf.
  static DirichletWeights table(const LogTable& t) {
    if (t.entries.empty()) throw DomainError("weight table is empty");
    auto values = std::make_shared<std::vector<double>>();
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      if (t.entries[i].first != i) throw DomainError("weight table must be contiguous from k=0");
      if (!std::isfinite(t.entries[i].second)) throw DomainError("weights must be positive");
      values->push_back(t.entries[i].second);
    }
    const std::size_t m = values->size() - 1;
    for (std::size_t k = std::max<std::size_t>(1, m / 2); k <= m && m >= 1; ++k) {
      const double root = std::exp((*values)[k] / static_cast<double>(k));
      if (!std::isfinite(root)) throw DomainError("weights violate limsup alpha_k^(1/k) < inf");
      if (root < 0.99) {
        throw DomainError("weights violate liminf alpha_k^(1/k) >= 1 at k=" + std::to_string(k));
      }
    }
    DirichletWeights w(Kind::Table, 0.0);
    w.table_ = std::move(values);
    return w;
  }

  static DirichletWeights from_file(const std::string& path) {
    return table(read_log_table(path, false));
  }

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }

  std::optional<std::size_t> max_index() const {
    if (kind_ == Kind::Table) return table_->size() - 1;
    return std::nullopt;
  }

  double log_alpha(std::size_t k) const {
    switch (kind_) {
      case Kind::Constant:
        return std::log(param_);
      case Kind::Power:
        return param_ * std::log(static_cast<double>(k) + 1.0);
      case Kind::Geometric:
        return static_cast<double>(k) * std::log(param_);
      case Kind::Table:
        if (k >= table_->size()) {
          throw DomainError("weight index " + std::to_string(k) + " beyond weight table");
        }
        return (*table_)[k];
    }
    return 0.0;
  }

  /// lim alpha_k^{1/k} when known in closed form.
  std::optional<double> root_limit() const {
    switch (kind_) {
      case Kind::Constant:
      case Kind::Power:
        return 1.0;
      case Kind::Geometric:
        return param_;
      case Kind::Table:
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::string label() const {
    switch (kind_) {
      case Kind::Constant:
        return "const(" + num(param_) + ")";
      case Kind::Power:
        return "power(" + num(param_) + ")";
      case Kind::Geometric:
        return "geometric(" + num(param_) + ")";
      case Kind::Table:
        return "table[" + std::to_string(table_->size()) + "]";
    }
    return {};
  }

 private:
  DirichletWeights(Kind k, double p) : kind_(k), param_(p) {}

  static std::string num(double v) {
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  Kind kind_;
  double param_;
  std::shared_ptr<const std::vector<double>> table_;
};

class SpaceModel {
 public:
  static SpaceModel sup_disk() { return SpaceModel(SpaceKind::SupDisk); }

  static SpaceModel hardy(double p) {
    if (!(p >= 1.0)) throw DomainError("Hardy: p must lie in [1, inf]");
    SpaceModel s(SpaceKind::Hardy);
    s.p_ = p;
    return s;
  }

  static SpaceModel bergman(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("Bergman: p must lie in [1, inf)");
    SpaceModel s(SpaceKind::Bergman);
    s.p_ = p;
    return s;
  }

  static SpaceModel weighted_bergman(double p, double beta, WeightForm form) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("weighted Bergman: p must lie in [1, inf)");
    if (!(beta > -1.0) || !std::isfinite(beta)) throw DomainError("weighted Bergman: beta must exceed -1");
    SpaceModel s(SpaceKind::WeightedBergman);
    s.p_ = p;
    s.beta_ = beta;
    s.form_ = form;
    return s;
  }

  static SpaceModel ap(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("A_p: p must lie in (0, 1)");
    SpaceModel s(SpaceKind::Ap);
    s.p_ = p;
    return s;
  }

  /// B_{p,q,lambda}; q and lambda may be infinite.
  static SpaceModel hlb(double p, double q, double lambda) {
    if (!(p > 0.0) || !(q > p) || !(lambda > 0.0) || !std::isfinite(p)) {
      throw DomainError("B_{p,q,lambda}: requires 0 < p < q <= inf, lambda > 0");
    }
    SpaceModel s(SpaceKind::HLB);
    s.p_ = p;
    s.q_ = q;
    s.lambda_ = lambda;
    return s;
  }

  /// H^{p,q,alpha}; q may be infinite.
  static SpaceModel mixed(double p, double q, double alpha) {
    if (!(p >= 1.0) || !(q >= 1.0) || !(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("H^{p,q,alpha}: requires p, q >= 1, alpha > 0");
    }
    SpaceModel s(SpaceKind::Mixed);
    s.p_ = p;
    s.q_ = q;
    s.alpha_ = alpha;
    return s;
  }

  static SpaceModel bloch(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Bloch-type: alpha must be positive");
    SpaceModel s(SpaceKind::Bloch);
    s.alpha_ = alpha;
    return s;
  }

  static SpaceModel dirichlet(double p, DirichletWeights w) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("Dirichlet: p must be >= 1");
    SpaceModel s(SpaceKind::Dirichlet);
    s.p_ = p;
    s.weights_ = std::move(w);
    return s;
  }

  SpaceKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  WeightForm form() const noexcept { return form_; }
  const DirichletWeights& weights() const {
    if (!weights_) throw DomainError("not a Dirichlet-type space");
    return *weights_;
  }

  /// E_n is computed exactly only for coefficient-functional norms.
  bool exact_en_capable() const noexcept { return kind_ == SpaceKind::Dirichlet; }

  /// HLB weight exponent p q / (q - p) (tends to p as q -> inf).
  double hlb_exponent() const noexcept {
    return std::isinf(q_) ? p_ : p_ * q_ / (q_ - p_);
  }

  /// Largest monomial index whose norm is defined (table-backed weights).
  std::optional<std::size_t> max_index() const {
    return weights_ ? weights_->max_index() : std::nullopt;
  }

  std::string label() const {
    switch (kind_) {
      case SpaceKind::SupDisk:
        return "sup";
      case SpaceKind::Hardy:
        return "hardy:p=" + num(p_);
      case SpaceKind::Bergman:
        return "bergman:p=" + num(p_);
      case SpaceKind::WeightedBergman:
        return "wbergman:p=" + num(p_) + ",beta=" + num(beta_) +
               ",form=" + (form_ == WeightForm::OneMinusR ? "1-r" : "1-r2");
      case SpaceKind::Ap:
        return "ap:p=" + num(p_);
      case SpaceKind::HLB:
        return "hlb:p=" + num(p_) + ",q=" + num(q_) + ",lambda=" + num(lambda_);
      case SpaceKind::Mixed:
        return "mixed:p=" + num(p_) + ",q=" + num(q_) + ",alpha=" + num(alpha_);
      case SpaceKind::Bloch:
        return "bloch:alpha=" + num(alpha_);
      case SpaceKind::Dirichlet:
        return "dirichlet:p=" + num(p_) + ",weight=" + weights_->label();
    }
    return {};
  }

 private:
  explicit SpaceModel(SpaceKind k) : kind_(k) {}

  static std::string num(double v) {
    if (std::isinf(v)) return "inf";
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  SpaceKind kind_;
  double p_ = 1.0;
  double q_ = kInf;
  double lambda_ = 1.0;
  double alpha_ = 1.0;
  double beta_ = 0.0;
  WeightForm form_ = WeightForm::OneMinusR;
  std::optional<DirichletWeights> weights_;
};

namespace detail {

// ln sup_{0<r<1} (1-r)^beta r^n, attained at r = n / (n + beta).
inline double log_sup_power_weight(double n, double beta) {
  if (n == 0.0) return 0.0;
  const double r = n / (n + beta);
  const double curvature = -beta / ((1.0 - r) * (1.0 - r)) - n / (r * r);
  if (!(curvature < 0.0)) throw Error("stationary point is not a maximum");
  return beta * std::log(beta / (n + beta)) + n * std::log(n / (n + beta));
}

}  // namespace detail

/// ||z^n|| in closed form.
inline LogReal monomial_norm(const SpaceModel& s, std::size_t n) {
  const double x = static_cast<double>(n);
  switch (s.kind()) {
    case SpaceKind::SupDisk:
    case SpaceKind::Hardy:
      return LogReal::from_log(0.0);
    case SpaceKind::Bergman:
      return LogReal::from_log((std::log(2.0) - std::log(x * s.p() + 2.0)) / s.p());
    case SpaceKind::WeightedBergman:
      if (s.form() == WeightForm::OneMinusR) {
        return LogReal::from_log((std::log(2.0) + log_beta(x * s.p() + 2.0, s.beta() + 1.0)) / s.p());
      }
      return LogReal::from_log(log_beta(x * s.p() / 2.0 + 1.0, s.beta() + 1.0) / s.p());
    case SpaceKind::Ap:
      return LogReal::from_log(log_beta(x + 1.0, 1.0 / s.p() - 1.0));
    case SpaceKind::HLB: {
      const double beta = s.hlb_exponent();
      if (std::isinf(s.lambda())) return LogReal::from_log(detail::log_sup_power_weight(x, beta));
      const double lam = s.lambda();
      return LogReal::from_log(log_beta(x * lam + 1.0, lam * beta + 1.0) / lam);
    }
    case SpaceKind::Mixed: {
      if (std::isinf(s.q())) return LogReal::from_log(detail::log_sup_power_weight(x, s.alpha()));
      const double q = s.q();
      return LogReal::from_log(log_beta(x * q + 1.0, q * s.alpha()) / q);
    }
    case SpaceKind::Bloch: {
      if (n <= 1) return LogReal::from_log(0.0);
      const double a = s.alpha();
      const double r2 = (x - 1.0) / (x - 1.0 + 2.0 * a);
      const double r = std::sqrt(r2);
      const double curvature =
          -(x - 1.0) / r2 - a * 2.0 * (1.0 + r2) / ((1.0 - r2) * (1.0 - r2));
      if (!(curvature < 0.0) || !(r > 0.0)) throw Error("Bloch stationary point is not a maximum");
      return LogReal::from_log(std::log(x) + 0.5 * (x - 1.0) * std::log(r2) + a * std::log1p(-r2));
    }
    case SpaceKind::Dirichlet:
      return LogReal::from_log(s.weights().log_alpha(n) / s.p());
  }
  throw Error("unknown space kind");
}

struct MuBounds {
  double mu1 = 0.0;  // min of ||z^n||^{1/n} over [N/2, N]
  double mu2 = 0.0;  // max of the same
};

/// Finite-sample estimates of liminf / limsup of ||z^n||^{1/n}.
inline MuBounds mu_bounds(const SpaceModel& s, std::size_t N) {
  if (N < 16) throw DomainError("mu_bounds: N must be >= 16");
  MuBounds out{kInf, -kInf};
  for (std::size_t n = N / 2; n <= N; ++n) {
    const double root = std::exp(monomial_norm(s, n).logmag() / static_cast<double>(n));
    out.mu1 = std::min(out.mu1, root);
    out.mu2 = std::max(out.mu2, root);
  }
  return out;
}

/// lim ||z^n||^{1/n} when known in closed form (1 for every radial-integral or
/// supremum norm; the root limit of the weights for Dirichlet spaces).
inline std::optional<double> mu_limit(const SpaceModel& s) {
  if (s.kind() == SpaceKind::Dirichlet) {
    const auto r = s.weights().root_limit();
    if (!r) return std::nullopt;
    return std::pow(*r, 1.0 / s.p());
  }
  return 1.0;
}

}  // namespace growthlab
