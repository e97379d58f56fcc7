#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "growthlab/catalog.hpp"
#include "growthlab/growth.hpp"

using namespace growthlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const SpaceModel kH2 = SpaceModel::dirichlet(2.0, DirichletWeights::constant());

RatioSeq make_seq(std::size_t from, std::size_t to, double (*f)(std::size_t)) {
  RatioSeq s;
  for (std::size_t n = from; n <= to; ++n) {
    s.n_values.push_back(static_cast<double>(n));
    s.values.push_back(f(n));
  }
  return s;
}

double lfact(double n) { return std::lgamma(n + 1.0); }

std::vector<double> grid(double from, double to, double step) {
  std::vector<double> g;
  for (double r = from; r <= to + 1e-12; r += step) g.push_back(r);
  return g;
}

}  // namespace

TEST_CASE("limsup_estimate examples") {
  const LimsupResult c = limsup_estimate(make_seq(1, 50, [](std::size_t) { return 2.0; }));
  CHECK(c.point == 2.0);
  CHECK_THAT(c.diagnostics.slope, WithinAbs(0.0, 1e-15));

  const LimsupResult m =
      limsup_estimate(make_seq(10, 1000, [](std::size_t n) { return 1.0 - 1.0 / static_cast<double>(n); }), 0.5);
  CHECK_THAT(m.point, WithinAbs(0.999, 1e-15));
  CHECK(m.diagnostics.slope > 0.0);

  const LimsupResult a = limsup_estimate(make_seq(1, 40, [](std::size_t n) { return n % 2 ? 1.0 : 3.0; }));
  CHECK(a.point == 3.0);
  CHECK(a.diagnostics.full_sup == 3.0);

  CHECK_THROWS_AS(limsup_estimate(RatioSeq{}), DomainError);
}

TEST_CASE("coefficient route on e^z") {
  const GrowthReport r = rho_from_coeffs(model_exp(), 2, std::nullopt, 500);
  REQUIRE(r.rho);
  CHECK(r.rho->point >= 0.95);
  CHECK(r.rho->point <= 1.05);
  // per-n ratio against an lgamma oracle
  for (std::size_t i = 0; i < r.rho_series.size(); i += 37) {
    const double n = r.rho_series.n_values[i];
    CHECK_THAT(r.rho_series.values[i], WithinRel(n * std::log(n) / lfact(n), 1e-12));
  }

  const GrowthReport s = sigma_from_coeffs(model_exp(), 2, 1.0, std::nullopt, 500);
  REQUIRE(s.sigma);
  CHECK(s.sigma->point >= 0.9);
  CHECK(s.sigma->point <= 1.1);
  // n (n!)^{-1/n} / e increases toward 1, so the trailing sup sits at N
  CHECK_THAT(s.sigma->point, WithinRel(500.0 * std::exp(-lfact(500.0) / 500.0) / std::exp(1.0), 1e-12));
}

TEST_CASE("coefficient route on the Sato families is exact") {
  const GrowthReport r = rho_from_coeffs(model_sato_order(3, 2.0, 16), 3, std::nullopt, 5000);
  CHECK_THAT(r.rho->point, WithinAbs(2.0, 1e-9));
  const GrowthReport s = sigma_from_coeffs(model_sato_type(3, 1.0, 2.0, 16), 3, 1.0, std::nullopt, 2000);
  CHECK_THAT(s.sigma->point, WithinAbs(2.0, 1e-9));
  const std::size_t n0 = *default_start_index(4);
  const GrowthReport s4 = sigma_from_coeffs(model_sato_type(4, 1.0, 1.0, n0), 4, 1.0, n0, n0 + 500);
  CHECK_THAT(s4.sigma->point, WithinAbs(1.0, 1e-9));
}

TEST_CASE("coefficient route on e^{e^z}") {
  const GrowthReport r = rho_from_coeffs(model_expexp(5000), 3, std::nullopt, 5000);
  REQUIRE(r.rho);
  CHECK(r.rho->point > 0.0);
  CHECK(r.rho->diagnostics.window_size > 0);
  CHECK(r.rho_series.size() == 5000 - 16 + 1);
}

TEST_CASE("coefficient route error paths") {
  CHECK_THROWS_AS(rho_from_coeffs(model_exp(), 1, std::nullopt, 500), DomainError);
  CHECK_THROWS_AS(rho_from_coeffs(model_exp(), 3, 10, 500), DomainError);  // below ln ln n >= 1
  CHECK_THROWS_AS(rho_from_coeffs(model_exp(), 2, 400, 300), DomainError);
  CHECK_THROWS_AS(sigma_from_coeffs(model_exp(), 2, 0.0, std::nullopt, 500), DomainError);
  CHECK_THROWS_AS(rho_from_coeffs(model_scaled(model_expexp(200), 2.0), 3, std::nullopt, 100), Refusal);
  const GrowthReport p = rho_from_coeffs(model_polynomial(3), 2, std::nullopt, 100);
  CHECK(p.polynomial);
}

TEST_CASE("approximation route examples") {
  const GrowthReport e = rho_from_approx(kH2, model_exp(), 2, std::nullopt, 500);
  REQUIRE(e.rho);
  CHECK(e.rho->point >= 0.95);
  CHECK(e.rho->point <= 1.05);

  const GrowthReport s = rho_from_approx(kH2, model_sato_order(3, 2.0, 16), 3, std::nullopt, 3000);
  CHECK(s.rho->point >= 1.9);
  CHECK(s.rho->point <= 2.1);

  const GrowthReport b = rho_from_approx(SpaceModel::sup_disk(), model_exp(), 2, std::nullopt, 300);
  REQUIRE(b.rho);
  REQUIRE(b.rho->interval);
  CHECK(b.rho->interval->lower <= b.rho->interval->upper);
  CHECK(b.rho->interval->upper - b.rho->interval->lower < 0.01);
  REQUIRE(b.rho_series.lower);
  REQUIRE(b.rho_series.upper);
  for (std::size_t i = 0; i < b.rho_series.size(); ++i) {
    REQUIRE((*b.rho_series.lower)[i] <= (*b.rho_series.upper)[i]);
  }

  const GrowthReport p = rho_from_approx(kH2, model_polynomial(2), 2, std::nullopt, 100);
  CHECK(p.polynomial);
}

TEST_CASE("type from the approximation route") {
  const GrowthReport e = sigma_from_approx(kH2, model_exp(), 2, 1.0, std::nullopt, 500);
  REQUIRE(e.sigma);
  CHECK(e.sigma->point >= 0.9);
  CHECK(e.sigma->point <= 1.1);

  const GrowthReport s = sigma_from_approx(kH2, model_sato_type(3, 1.0, 1.0, 16), 3, 1.0, std::nullopt, 3000);
  CHECK(s.sigma->point >= 0.9);
  CHECK(s.sigma->point <= 1.1);

  CHECK_NOTHROW(sigma_from_approx(SpaceModel::hardy(2.0), model_exp(), 2, 1.0, std::nullopt, 300));
  // q >= 3 needs a convergent ||z^n||^{1/n}; geometric weights have limit 2 so this passes,
  // while q = 2 is always admissible once mu1 > 0
  CHECK_NOTHROW(sigma_from_approx(SpaceModel::dirichlet(1.0, DirichletWeights::geometric(2.0)),
                                  model_sato_type(3, 1.0, 1.0, 16), 3, 1.0, std::nullopt, 300));
}

TEST_CASE("detect_q examples") {
  CHECK(detect_q(model_exp(), 2000).q == 2);
  CHECK(detect_q(model_expexp(5000), 5000).q == 3);
  const std::size_t n0 = *default_start_index(4);
  CHECK(detect_q(model_sato_order(4, 1.0, n0), 2 * n0).q == 4);
  CHECK(detect_q(model_sato_order(3, 2.0, 16), 5000).q == 3);
  const DetectResult p = detect_q(model_polynomial(4), 100);
  CHECK(p.polynomial);
  CHECK(p.label() == "polynomial");
  CHECK(detect_q(kH2, model_sato_order(3, 2.0, 16), 3000).q == 3);
  CHECK(detect_q(kH2, model_exp(), 2000).q == 2);
}

TEST_CASE("direct route") {
  const GrowthReport e = rho_sigma_direct(model_exp(), 2, 1.0, grid(1.5, 50.0, 0.5));
  CHECK_THAT(e.rho->point, WithinAbs(1.0, 1e-3));
  CHECK_THAT(e.sigma->point, WithinAbs(1.0, 1e-3));
  for (double v : e.rho_series.values) CHECK_THAT(v, WithinAbs(1.0, 1e-9));

  const GrowthReport skipped = rho_sigma_direct(model_exp(), 2, std::nullopt, {0.5, 1.0, 2.0, 3.0});
  CHECK(skipped.rho_series.size() == 2);
  CHECK_FALSE(skipped.notes.empty());
  CHECK_FALSE(skipped.sigma.has_value());

  // ln ln ln M(e^{e^z}, r) / ln r = 1 wherever the tail is certifiable
  const GrowthReport x = rho_sigma_direct(model_expexp(5000), 3, std::nullopt, grid(1.5, 3.0, 0.25));
  for (double v : x.rho_series.values) CHECK_THAT(v, WithinAbs(1.0, 1e-6));

  CHECK_THROWS_AS(rho_sigma_direct(model_exp(), 2, std::nullopt, {3.0, 2.0}), DomainError);
  CHECK_THROWS_AS(rho_sigma_direct(model_exp(), 2, std::nullopt, {}), DomainError);
  CHECK_THROWS_AS(rho_sigma_direct(model_exp(), 2, std::nullopt, {0.5, 0.9}), Refusal);
  CHECK_THROWS_AS(rho_sigma_direct(model_expexp(5000), 3, std::nullopt, {12.0}), TailError);
}

TEST_CASE("corollary1_check examples") {
  const Corollary1Result lo = corollary1_check(kH2, model_sato_order(3, 0.5, 16), 3, 2000);
  CHECK(lo.decays);
  CHECK(lo.rho_below_one == true);
  CHECK(lo.consistent);
  const Corollary1Result hi = corollary1_check(kH2, model_sato_order(3, 2.0, 16), 3, 2000);
  CHECK_FALSE(hi.decays);
  CHECK(hi.rho_below_one == false);
  CHECK(hi.consistent);
  const Corollary1Result p = corollary1_check(kH2, model_polynomial(2), 3, 100);
  CHECK(p.decays);
  for (double v : p.trace.values) CHECK(v == 0.0);
}

TEST_CASE("threads do not change results") {
  RouteOptions one, many;
  many.threads = 4;
  const GrowthReport a = rho_from_approx(kH2, model_expexp(3000), 3, std::nullopt, 2500, std::nullopt, one);
  const GrowthReport b = rho_from_approx(kH2, model_expexp(3000), 3, std::nullopt, 2500, std::nullopt, many);
  CHECK(a.rho->point == b.rho->point);
  CHECK(a.rho_series.values == b.rho_series.values);
}
