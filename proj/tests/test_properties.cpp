#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>

#include "growthlab/approx.hpp"
#include "growthlab/catalog.hpp"
#include "growthlab/growth.hpp"

using namespace growthlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 g(20241016);
  return g;
}

double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

const SpaceModel kH2 = SpaceModel::dirichlet(2.0, DirichletWeights::constant());

}  // namespace

TEST_CASE("log_sum_exp is commutative and monotone") {
  for (int i = 0; i < 2000; ++i) {
    const double a = uniform(-800.0, 800.0), b = uniform(-800.0, 800.0), d = uniform(0.0, 5.0);
    REQUIRE(log_sum_exp(a, b) == log_sum_exp(b, a));
    REQUIRE(log_sum_exp(a, b) >= std::max(a, b));
    REQUIRE(log_sum_exp(a + d, b) >= log_sum_exp(a, b));
  }
}

TEST_CASE("LogReal products agree with floating point") {
  for (int i = 0; i < 2000; ++i) {
    const double x = uniform(-1e3, 1e3), y = uniform(-1e3, 1e3);
    REQUIRE_THAT((LogReal::from_double(x) * LogReal::from_double(y)).to_double(), WithinRel(x * y, 1e-12));
    REQUIRE_THAT((LogReal::from_double(x) + LogReal::from_double(y)).to_double(),
                 WithinAbs(x + y, 1e-12 * (std::abs(x) + std::abs(y))));
  }
}

TEST_CASE("iterated logarithm inverts iterated exponential") {
  for (int i = 0; i < 500; ++i) {
    for (unsigned q = 0; q <= 3; ++q) {
      const double y = uniform(0.1, 1.5);
      double x = y;
      for (unsigned j = 0; j < q; ++j) x = std::exp(x);
      REQUIRE_THAT(iter_ln(q, x), WithinRel(y, 1e-12));
    }
  }
}

TEST_CASE("E_n is nonincreasing and brackets contain the exact value") {
  for (const std::string& f : default_function_specs()) {
    if (f.rfind("satoorder:q=4", 0) == 0) continue;  // coefficients vanish below n0
    const CoeffModel m = parse_function_spec(f);
    const std::size_t K = m.degree() ? 400 : std::min<std::size_t>(400, m.max_index().value_or(400) - 1);
    const EnSeries exact = en_series(kH2, m, 0, 300, K);
    const EnSeries bracket = en_series(SpaceModel::hardy(2.0), m, 0, 300, K, EnMode::Bracket);
    for (std::size_t n = 1; n <= 300; ++n) {
      INFO(f << " n=" << n);
      REQUIRE(exact.at(n).value <= exact.at(n - 1).value);
      // Hardy(2) and Dirichlet(2, 1) share the norm, so the exact value sits in the bracket
      const double slack = 1e-12;
      REQUIRE((bracket.at(n).lower.is_zero() || bracket.at(n).lower.logmag() <= exact.at(n).value.logmag() + slack));
      REQUIRE((exact.at(n).value.is_zero() || exact.at(n).value.logmag() <= bracket.at(n).upper.logmag() + slack));
    }
  }
}

TEST_CASE("coefficient and tail bounds on E_n over the catalog matrix") {
  for (const std::string& s : dirichlet_space_specs()) {
    const SpaceModel sp = parse_space_spec(s);
    for (const std::string& f : default_function_specs()) {
      if (f.rfind("satoorder:q=4", 0) == 0) continue;
      const CoeffModel m = parse_function_spec(f);
      const std::size_t K = m.degree() ? 300 : std::min<std::size_t>(400, m.max_index().value_or(400) - 1);
      INFO(s << " " << f);
      CHECK(check_lemma13(sp, m, 200, K).ok);
    }
  }
}

TEST_CASE("eval_log_M brackets are ordered and increase with r") {
  const CoeffModel m = model_expexp(5000);
  double prev = -1e300;
  for (int i = 0; i < 40; ++i) {
    const double r = 0.2 + 0.07 * i;
    const std::size_t K = find_tail_index(m, r);
    const LogMBracket b = eval_log_M(m, r, K);
    REQUIRE(b.lower <= b.upper);
    REQUIRE(b.upper > prev);
    REQUIRE_THAT(b.upper, WithinRel(std::exp(r), 1e-9));
    prev = b.upper;
  }
}

TEST_CASE("Sato families are exact at every n") {
  for (int q : {2, 3}) {
    for (double rho : {0.5, 1.0, 2.0}) {
      const double rr = uniform(0.3, 3.0);
      const CoeffModel m = model_sato_order(q, rho * rr);
      const GrowthReport r = rho_from_coeffs(m, q, std::nullopt, 3000);
      for (double v : r.rho_series.values) REQUIRE_THAT(v, WithinRel(rho * rr, 1e-12));
    }
  }
}

TEST_CASE("scaling c_n by t^n shifts the q >= 3 denominators by n ln t") {
  const CoeffModel base = model_expexp(3000);
  for (int i = 0; i < 5; ++i) {
    const double t = uniform(0.2, 3.0);
    const CoeffModel scaled = model_scaled(base, t);
    for (std::size_t n = 200; n <= 3000; n += 199) {
      REQUIRE_THAT(-scaled.log_coeff(n).logmag(),
                   WithinAbs(-base.log_coeff(n).logmag() - static_cast<double>(n) * std::log(t), 1e-9));
    }
    // the order ratio moves by O(1 / ln ln n): bounded here by the window's own spread
    const double a = rho_from_coeffs(base, 3, 200, 3000).rho_series.values.back();
    const double b = rho_from_coeffs(scaled, 3, 200, 3000).rho_series.values.back();
    const double expected = 3000.0 * std::log(std::log(3000.0)) /
                            (-base.log_coeff(3000).logmag() - 3000.0 * std::log(t));
    REQUIRE_THAT(b, WithinRel(expected, 1e-12));
    REQUIRE(std::isfinite(a));
  }
}

TEST_CASE("bracket ratios are ordered") {
  for (const char* s : {"sup", "bergman:p=2", "bloch:alpha=1", "ap:p=0.5"}) {
    const GrowthReport r = rho_from_approx(parse_space_spec(s), model_exp(), 2, std::nullopt, 300);
    REQUIRE(r.rho_series.lower);
    for (std::size_t i = 0; i < r.rho_series.size(); ++i) {
      REQUIRE((*r.rho_series.lower)[i] <= r.rho_series.values[i]);
      REQUIRE(r.rho_series.values[i] <= (*r.rho_series.upper)[i]);
    }
  }
}

TEST_CASE("SupDisk approximation ratios dominate coefficient ratios") {
  // ||z^n|| <= 1 and E_n >= |c_n| ||z^n|| give ln(||z^n|| / E_n) <= -ln|c_n|, so in the
  // SupDisk the approximation ratio is never below the coefficient ratio
  const GrowthReport c = rho_from_coeffs(model_exp(), 2, std::nullopt, 300);
  const GrowthReport a = rho_from_approx(SpaceModel::sup_disk(), model_exp(), 2, std::nullopt, 300);
  for (std::size_t i = 0; i < c.rho_series.size(); ++i) {
    REQUIRE((*a.rho_series.upper)[i] >= c.rho_series.values[i] - 1e-12);
  }
}

TEST_CASE("logmag(n)/n eventually decreases for every catalog model") {
  for (const std::string& f : default_function_specs()) {
    const CoeffModel m = parse_function_spec(f);
    if (m.degree()) continue;
    const std::size_t from = std::max<std::size_t>(m.regular_from(), 50);
    const std::size_t to = std::min<std::size_t>(from + 2000, m.max_index().value_or(from + 2000));
    double prev = m.log_coeff(from).logmag() / static_cast<double>(from);
    for (std::size_t n = from + 1; n <= to; ++n) {
      const double cur = m.log_coeff(n).logmag() / static_cast<double>(n);
      INFO(f << " n=" << n);
      REQUIRE(cur < prev);
      prev = cur;
    }
  }
}
