#pragma once

// Property suites over the built-in catalog matrices.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "growthlab/approx.hpp"
#include "growthlab/catalog.hpp"
#include "growthlab/growth.hpp"
#include "growthlab/oracle.hpp"
#include "growthlab/spaces.hpp"

namespace growthlab {

struct CheckRow {
  std::string suite;
  std::string name;
  bool ok = false;
  std::string detail;
};

namespace verify_detail {

inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Runs f, turning any library error into a failed row.
inline CheckRow guarded(const std::string& suite, const std::string& name,
                        const std::function<CheckRow()>& f) {
  try {
    CheckRow r = f();
    r.suite = suite;
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return {suite, name, false, std::string("error: ") + e.what()};
  }
}

}  // namespace verify_detail

/// Spaces whose closed-form monomial norms are cross-checked by the oracle.
inline std::vector<std::string> norm_space_specs() {
  return {"sup",
          "hardy:p=2",
          "hardy:p=7",
          "bergman:p=2",
          "bergman:p=3",
          "wbergman:p=2,beta=1",
          "wbergman:p=2,beta=2",
          "wbergman:p=2,beta=1,form=1-r2",
          "ap:p=0.3333333333333333",
          "ap:p=0.5",
          "hlb:p=1,q=2,lambda=2",
          "hlb:p=1,q=3,lambda=inf",
          "mixed:p=2,q=2,alpha=1",
          "mixed:p=2,q=inf,alpha=0.5",
          "bloch:alpha=0.5",
          "bloch:alpha=1",
          "bloch:alpha=2"};
}

inline std::vector<CheckRow> verify_lemma13(std::size_t n_max = 200) {
  std::vector<CheckRow> rows;
  for (const auto& fs : default_function_specs()) {
    const CoeffModel m = parse_function_spec(fs);
    for (const auto& ss : dirichlet_space_specs()) {
      const SpaceModel s = parse_space_spec(ss);
      rows.push_back(verify_detail::guarded("lemma13", fs + " in " + ss, [&] {
        const std::size_t K = growth_detail::default_K(m, n_max, std::nullopt);
        const Lemma13Report r = check_lemma13(s, m, n_max, K);
        return CheckRow{"", "", r.ok, r.ok ? std::to_string(r.checked) + " indices" : r.detail};
      }));
    }
  }
  return rows;
}

inline std::vector<CheckRow> verify_mu(std::size_t N = 10000) {
  std::vector<CheckRow> rows;
  for (const auto& ss : default_space_specs()) {
    const SpaceModel s = parse_space_spec(ss);
    rows.push_back(verify_detail::guarded("mu", ss, [&] {
      const MuBounds mu = mu_bounds(s, N);
      bool ok = mu.mu1 >= 0.99 && std::isfinite(mu.mu2);
      if (s.kind() == SpaceKind::Hardy || s.kind() == SpaceKind::SupDisk) ok = ok && mu.mu1 == 1.0 && mu.mu2 == 1.0;
      return CheckRow{"", "", ok, "[" + verify_detail::fmt(mu.mu1) + ", " + verify_detail::fmt(mu.mu2) + "]"};
    }));
  }
  return rows;
}

inline std::vector<CheckRow> verify_norms(double tol = 1e-8) {
  std::vector<CheckRow> rows;
  for (const auto& ss : norm_space_specs()) {
    const SpaceModel s = parse_space_spec(ss);
    rows.push_back(verify_detail::guarded("norms", ss, [&] {
      double worst = 0.0;
      for (std::size_t n : {0, 1, 2, 5, 10, 50}) {
        const double closed = monomial_norm(s, n).logmag();
        const double oracle = monomial_norm_oracle(s, n).value.logmag();
        worst = std::max(worst, std::fabs(std::expm1(oracle - closed)));
      }
      return CheckRow{"", "", worst <= tol, "max rel diff " + verify_detail::fmt(worst)};
    }));
  }
  return rows;
}

inline std::vector<CheckRow> verify_routes() {
  using verify_detail::fmt;
  using verify_detail::guarded;
  std::vector<CheckRow> rows;
  const SpaceModel h2 = parse_space_spec("dirichlet:p=2,weight=const");
  const std::size_t n4 = static_cast<std::size_t>(*default_start_index(4));

  struct Case {
    std::string spec;
    int q;
    std::optional<std::size_t> n_min;
    std::size_t N;
  };
  const std::vector<Case> cases = {{"exp", 2, {}, 2000},
                                   {"expexp:n=5000", 3, {}, 2000},
                                   {"satoorder:q=3,rho=2", 3, {}, 2000},
                                   {"satoorder:q=4,rho=1", 4, n4, n4 + 2000}};
  for (const Case& c : cases) {
    const CoeffModel m = parse_function_spec(c.spec);
    rows.push_back(guarded("routes", "order agreement " + c.spec, [&] {
      const double a = rho_from_approx(h2, m, c.q, c.n_min, c.N).rho->point;
      const double b = rho_from_coeffs(m, c.q, c.n_min, c.N).rho->point;
      return CheckRow{"", "", std::fabs(a - b) <= 0.05, "approx " + fmt(a) + ", coeff " + fmt(b)};
    }));
    rows.push_back(guarded("routes", "ratio ordering " + c.spec, [&] {
      const GrowthReport a = rho_from_approx(h2, m, c.q, c.n_min, c.N);
      const GrowthReport b = rho_from_coeffs(m, c.q, c.n_min, c.N);
      std::size_t j = 0, bad = 0;
      for (std::size_t i = 0; i < a.rho_series.size(); ++i) {
        while (j < b.rho_series.size() && b.rho_series.n_values[j] < a.rho_series.n_values[i]) ++j;
        if (j < b.rho_series.size() && b.rho_series.n_values[j] == a.rho_series.n_values[i] &&
            a.rho_series.values[i] < b.rho_series.values[j] * (1.0 - 1e-12)) {
          ++bad;
        }
      }
      return CheckRow{"", "", bad == 0, std::to_string(bad) + " indices with approx < coeff"};
    }));
  }

  const std::vector<std::pair<std::string, int>> type_cases = {{"exp", 2}, {"satotype:q=3,rho=1,sigma=1", 3}};
  for (const auto& [spec, q] : type_cases) {
    const CoeffModel m = parse_function_spec(spec);
    rows.push_back(guarded("routes", "type agreement " + spec, [&] {
      const double a = sigma_from_approx(h2, m, q, 1.0, std::nullopt, 3000).sigma->point;
      const double b = sigma_from_coeffs(m, q, 1.0, std::nullopt, 3000).sigma->point;
      return CheckRow{"", "", std::fabs(a - b) <= 0.1, "approx " + fmt(a) + ", coeff " + fmt(b)};
    }));
  }

  for (int q : {2, 3, 4}) {
    for (double rho : {0.5, 1.0, 2.0}) {
      const std::string name = "order exactness q=" + std::to_string(q) + " rho=" + fmt(rho);
      rows.push_back(guarded("routes", name, [&] {
        const CoeffModel m = model_sato_order(q, rho);
        const std::size_t n0 = m.regular_from();
        const double est = rho_from_coeffs(m, q, n0, n0 + 2000).rho->point;
        return CheckRow{"", "", std::fabs(est - rho) <= 1e-9, fmt(est)};
      }));
    }
  }
  for (int q : {3, 4}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const std::string name = "type exactness q=" + std::to_string(q) + " sigma=" + fmt(sigma);
      rows.push_back(guarded("routes", name, [&] {
        const CoeffModel m = model_sato_type(q, 1.0, sigma);
        const std::size_t n0 = m.regular_from();
        const double est = sigma_from_coeffs(m, q, 1.0, n0, n0 + 2000).sigma->point;
        return CheckRow{"", "", std::fabs(est - sigma) <= 1e-9, fmt(est)};
      }));
    }
  }

  rows.push_back(guarded("routes", "scale invariance expexp t=2", [&] {
    const CoeffModel m = model_expexp(5000);
    const double a = rho_from_coeffs(m, 3, 200, 2000).rho->point;
    const double b = rho_from_coeffs(model_scaled(m, 2.0), 3, 200, 2000).rho->point;
    return CheckRow{"", "", std::fabs(a - b) <= 0.02, fmt(a) + " vs " + fmt(b)};
  }));

  rows.push_back(guarded("routes", "direct vs coeff exp", [&] {
    const CoeffModel m = model_exp();
    std::vector<double> grid;
    for (double r = 2.0; r <= 50.0; r += 0.5) grid.push_back(r);
    const double d = rho_sigma_direct(m, 2, std::nullopt, grid).rho->point;
    const double c = rho_from_coeffs(m, 2, std::nullopt, 2000).rho->point;
    return CheckRow{"", "", std::fabs(d - c) <= 0.05, "direct " + fmt(d) + ", coeff " + fmt(c)};
  }));
  return rows;
}

inline std::vector<CheckRow> verify_corollary1() {
  std::vector<CheckRow> rows;
  const SpaceModel h2 = parse_space_spec("dirichlet:p=2,weight=const");
  const std::vector<std::pair<std::string, bool>> cases = {
      {"satoorder:q=3,rho=0.5", true}, {"satoorder:q=3,rho=2", false}, {"poly:d=2", true}};
  for (const auto& [spec, expect] : cases) {
    rows.push_back(verify_detail::guarded("corollary1", spec, [&] {
      const Corollary1Result r = corollary1_check(h2, parse_function_spec(spec), 3, 2000);
      const bool ok = r.consistent && r.decays == expect;
      return CheckRow{"", "", ok,
                      std::string("decays=") + (r.decays ? "true" : "false") + " rho<1=" +
                          (r.rho_below_one ? (*r.rho_below_one ? "true" : "false") : "n/a")};
    }));
  }
  return rows;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma13", "mu", "norms", "routes", "corollary1"};
  return names;
}

/// Rows of the named suite ("all" runs every suite). Unknown names throw.
inline std::vector<CheckRow> run_suite(const std::string& suite) {
  if (suite == "lemma13") return verify_lemma13();
  if (suite == "mu") return verify_mu();
  if (suite == "norms") return verify_norms();
  if (suite == "routes") return verify_routes();
  if (suite == "corollary1") return verify_corollary1();
  if (suite == "all") {
    std::vector<CheckRow> all;
    for (const auto& s : suite_names()) {
      auto rows = run_suite(s);
      all.insert(all.end(), rows.begin(), rows.end());
    }
    return all;
  }
  throw ConfigError("unknown suite '" + suite + "'");
}

}  // namespace growthlab
