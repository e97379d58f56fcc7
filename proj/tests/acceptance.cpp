// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "growthlab/approx.hpp"
#include "growthlab/catalog.hpp"
#include "growthlab/growth.hpp"
#include "growthlab/oracle.hpp"
#include "growthlab/report.hpp"
#include "growthlab/verify.hpp"

using namespace growthlab;

namespace {

constexpr double kExactTol = 1e-9;         // AC1
constexpr double kExpRhoLo = 0.95, kExpRhoHi = 1.05;
constexpr double kExpSigmaLo = 0.9, kExpSigmaHi = 1.1;
constexpr double kDirectTol = 1e-3;        // AC2
constexpr double kExpExpLo = 0.8, kExpExpHi = 1.2;
constexpr double kExpExpDirectTol = 5e-2;  // AC3
constexpr double kOrderAgree = 0.05;       // AC4
constexpr double kTypeAgree = 0.1;         // AC5
constexpr double kMuFloor = 0.99;          // AC7
constexpr double kNormTol = 1e-8;          // AC8
constexpr double kRootCeiling = 0.01;      // AC9
constexpr std::size_t kRootN = 300;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Criterion {
  std::vector<std::string> lines;
  bool ok = true;

  void check(bool pass, const std::string& what) {
    lines.push_back(std::string(pass ? "ok   " : "FAIL ") + what);
    ok = ok && pass;
  }
  void info(const std::string& what) { lines.push_back("info " + what); }

  // Runs f; a thrown error fails the sub-check with its message.
  void guarded(const std::string& what, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }
};

int failures = 0;

void report(const char* id, const char* title, Criterion& c) {
  std::printf("%s %s: %s\n", id, c.ok ? "PASS" : "FAIL", title);
  for (const auto& l : c.lines) std::printf("    %s\n", l.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

std::vector<double> grid(double from, double to, double step) {
  std::vector<double> g;
  for (std::size_t i = 0;; ++i) {
    const double r = from + step * static_cast<double>(i);
    if (r > to + 1e-9) break;
    g.push_back(r);
  }
  return g;
}

const SpaceModel& h2() {
  static const SpaceModel s = SpaceModel::dirichlet(2.0, DirichletWeights::constant());
  return s;
}

std::size_t n0_q4() { return static_cast<std::size_t>(*default_start_index(4)); }

void ac1() {
  Criterion c;
  for (int q : {2, 3, 4}) {
    for (double rho : {0.5, 1.0, 2.0}) {
      const std::string name = "rho q=" + std::to_string(q) + " rho=" + fmt(rho);
      c.guarded(name, [&] {
        const CoeffModel m = model_sato_order(q, rho);
        const std::size_t n0 = m.regular_from();
        const double est = rho_from_coeffs(m, q, n0, n0 + 5000).rho->point;
        c.check(std::fabs(est - rho) <= kExactTol, name + " -> " + fmt(est));
      });
    }
  }
  for (int q : {3, 4}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const std::string name = "sigma q=" + std::to_string(q) + " sigma=" + fmt(sigma);
      c.guarded(name, [&] {
        const CoeffModel m = model_sato_type(q, 1.0, sigma);
        const std::size_t n0 = m.regular_from();
        const double est = sigma_from_coeffs(m, q, 1.0, n0, n0 + 5000).sigma->point;
        c.check(std::fabs(est - sigma) <= kExactTol, name + " -> " + fmt(est));
      });
    }
  }
  report("AC1", "Sato-family exactness within 1e-9", c);
}

void ac2() {
  Criterion c;
  const CoeffModel m = model_exp();
  c.guarded("coefficient route", [&] {
    const double rho = rho_from_coeffs(m, 2, std::nullopt, 500).rho->point;
    c.check(rho >= kExpRhoLo && rho <= kExpRhoHi, "rho (q=2, N=500) = " + fmt(rho) + " in [0.95, 1.05]");
    const double sigma = sigma_from_coeffs(m, 2, 1.0, std::nullopt, 500).sigma->point;
    c.check(sigma >= kExpSigmaLo && sigma <= kExpSigmaHi, "sigma (rho=1, N=500) = " + fmt(sigma) + " in [0.9, 1.1]");
  });
  c.guarded("direct route", [&] {
    const GrowthReport d = rho_sigma_direct(m, 2, 1.0, grid(1.5, 50.0, 0.5));
    c.check(std::fabs(d.rho->point - 1.0) <= kDirectTol, "direct rho (r to 50) = " + fmt(d.rho->point));
    c.check(std::fabs(d.sigma->point - 1.0) <= kDirectTol, "direct sigma (r to 50) = " + fmt(d.sigma->point));
  });
  report("AC2", "e^z benchmark", c);
}

void ac3() {
  Criterion c;
  const CoeffModel m = model_expexp(5000);
  c.guarded("detect_q", [&] {
    const DetectResult d = detect_q(m, 5000);
    c.check(d.q == 3, "detect_q at N=5000 -> " + d.label());
  });
  c.guarded("coefficient route", [&] {
    const GrowthReport r = rho_from_coeffs(m, 3, std::nullopt, 5000);
    const double rho = r.rho->point;
    c.check(rho >= kExpExpLo && rho <= kExpExpHi, "rho_3 (N=5000) = " + fmt(rho) + " in [0.8, 1.2]");
    const double slope = r.rho->diagnostics.slope;
    c.check(slope > 0.0, "trailing trend of the ratio sequence = " + fmt(slope) + " (> 0 required)");
    c.info("raw trailing sup " + fmt(r.rho->diagnostics.tail_sup) + ", last ratio " +
           fmt(r.rho_series.values.back()));
  });
  c.guarded("direct route, r to 12", [&] {
    const GrowthReport d = rho_sigma_direct(m, 3, std::nullopt, grid(1.5, 12.0, 0.25));
    c.check(std::fabs(d.rho->point - 1.0) <= kExpExpDirectTol, "direct rho_3 (r to 12) = " + fmt(d.rho->point));
  });
  try {
    const GrowthReport d = rho_sigma_direct(m, 3, std::nullopt, grid(1.5, 3.0, 0.25));
    c.info("certifiable sub-grid r in [1.5, 3]: direct rho_3 = " + fmt(d.rho->point));
  } catch (const std::exception& e) {
    c.info(std::string("certifiable sub-grid failed: ") + e.what());
  }
  report("AC3", "e^{e^z} benchmark", c);
}

void ac4() {
  Criterion c;
  struct Case {
    std::string name;
    CoeffModel model;
    int q;
    std::optional<std::size_t> n_min;
    std::size_t N;
  };
  const std::size_t n4 = n0_q4();
  const std::vector<Case> cases = {{"exp", model_exp(), 2, {}, 2000},
                                   {"expexp", model_expexp(5000), 3, {}, 2000},
                                   {"satoorder(3, 2)", model_sato_order(3, 2.0), 3, {}, 2000},
                                   {"satoorder(4, 1) on [n0, n0+2000]", model_sato_order(4, 1.0), 4, n4, n4 + 2000}};
  for (const Case& k : cases) {
    c.guarded(k.name, [&] {
      const double a = rho_from_approx(h2(), k.model, k.q, k.n_min, k.N).rho->point;
      const double b = rho_from_coeffs(k.model, k.q, k.n_min, k.N).rho->point;
      c.check(std::fabs(a - b) <= kOrderAgree, k.name + ": approx " + fmt(a) + ", coeff " + fmt(b));
    });
  }
  report("AC4", "order route agreement in Dirichlet(2, 1)", c);
}

void ac5() {
  Criterion c;
  const std::vector<std::tuple<std::string, CoeffModel, int>> cases = {
      {"exp", model_exp(), 2}, {"satotype(3, 1, 1)", model_sato_type(3, 1.0, 1.0), 3}};
  for (const auto& [name, m, q] : cases) {
    c.guarded(name, [&] {
      const double a = sigma_from_approx(h2(), m, q, 1.0, std::nullopt, 3000).sigma->point;
      const double b = sigma_from_coeffs(m, q, 1.0, std::nullopt, 3000).sigma->point;
      c.check(std::fabs(a - b) <= kTypeAgree, name + ": approx " + fmt(a) + ", coeff " + fmt(b));
    });
  }
  report("AC5", "type route agreement in Dirichlet(2, 1)", c);
}

void ac6() {
  Criterion c;
  std::size_t pairs = 0;
  for (const auto& fs : default_function_specs()) {
    const CoeffModel m = parse_function_spec(fs);
    for (const auto& ss : dirichlet_space_specs()) {
      c.guarded(fs + " in " + ss, [&] {
        const std::size_t K = growth_detail::default_K(m, 200, std::nullopt);
        const Lemma13Report r = check_lemma13(parse_space_spec(ss), m, 200, K);
        ++pairs;
        if (!r.ok) c.check(false, fs + " in " + ss + ": " + r.detail);
      });
    }
  }
  c.check(c.ok, std::to_string(pairs) + " (model, weight) pairs, n <= 200");
  report("AC6", "coefficient/tail bounds on E_n, zero violations", c);
}

void ac7() {
  Criterion c;
  for (const auto& ss : default_space_specs()) {
    c.guarded(ss, [&] {
      const SpaceModel s = parse_space_spec(ss);
      const MuBounds mu = mu_bounds(s, 10000);
      bool ok = mu.mu1 >= kMuFloor && std::isfinite(mu.mu2);
      if (s.kind() == SpaceKind::Hardy || s.kind() == SpaceKind::SupDisk) {
        ok = ok && mu.mu1 == 1.0 && mu.mu2 == 1.0;
      }
      c.check(ok, ss + ": [" + fmt(mu.mu1) + ", " + fmt(mu.mu2) + "]");
    });
  }
  report("AC7", "mu bounds at N = 10^4", c);
}

void ac8() {
  Criterion c;
  for (const auto& ss : norm_space_specs()) {
    const SpaceModel s = parse_space_spec(ss);
    if (s.kind() == SpaceKind::SupDisk || s.kind() == SpaceKind::Hardy) continue;
    c.guarded(ss, [&] {
      double worst = 0.0;
      for (std::size_t n : {0, 1, 2, 5, 10, 50}) {
        const double closed = monomial_norm(s, n).logmag();
        const double oracle = monomial_norm_oracle(s, n).value.logmag();
        worst = std::max(worst, std::fabs(std::expm1(oracle - closed)));
      }
      c.check(worst <= kNormTol, ss + ": max rel diff " + fmt(worst));
    });
  }
  report("AC8", "closed-form norms vs quadrature/grid oracle", c);
}

void ac9() {
  Criterion c;
  const std::vector<std::pair<std::string, SpaceModel>> spaces = {{"sup", SpaceModel::sup_disk()},
                                                                  {"dirichlet(2,1)", h2()}};
  for (const auto& fs : default_function_specs()) {
    const CoeffModel m = parse_function_spec(fs);
    for (const auto& [sn, s] : spaces) {
      c.guarded(fs + " in " + sn, [&] {
        if (const auto d = m.degree()) {
          const EnSeries e = en_series(s, m, 0, kRootN, kRootN + 64, EnMode::Bracket);
          bool zero = true;
          for (std::size_t n = *d + 1; n <= kRootN; ++n) zero = zero && e.at(n).upper.is_zero();
          c.check(zero && !e.at(*d).upper.is_zero(),
                  fs + " in " + sn + ": E_n = 0 exactly for n > " + std::to_string(*d));
          return;
        }
        const std::size_t K = growth_detail::default_K(m, kRootN, std::nullopt);
        const EnEstimate e = en_series(s, m, kRootN, kRootN, K, EnMode::Auto).items.front();
        const double root = std::exp(e.upper.logmag() / static_cast<double>(kRootN));
        c.check(root < kRootCeiling, fs + " in " + sn + ": (E_300 upper)^(1/300) = " + fmt(root));
      });
    }
  }
  report("AC9", "entirety criterion by N = 300", c);
}

void ac10() {
  Criterion c;
  const std::vector<std::pair<double, bool>> cases = {{0.5, true}, {2.0, false}};
  for (const auto& [rho, expect] : cases) {
    c.guarded("satoorder(3, " + fmt(rho) + ")", [&] {
      const Corollary1Result r = corollary1_check(h2(), model_sato_order(3, rho), 3, 2000);
      const bool below = r.rho_below_one.value_or(!expect);
      c.check(r.decays == expect && below == expect && r.consistent,
              "satoorder(3, " + fmt(rho) + "): decays=" + (r.decays ? "true" : "false") +
                  ", rho_hat<1=" + (below ? "true" : "false") + ", log slope " + fmt(r.log_slope));
    });
  }
  report("AC10", "sub-unit order criterion consistency", c);
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t k;
  while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

void collect_floats(const ordered_json& j, std::vector<double>& out) {
  if (j.is_number_float()) out.push_back(j.get<double>());
  if (j.is_structured()) {
    for (const auto& v : j) collect_floats(v, out);
  }
}

void ac11() {
  Criterion c;
  const std::string cli = GROWTHLAB_CLI;
  const RunResult v = run("'" + cli + "' verify all");
  c.check(v.status == 0, "verify all exit status " + std::to_string(v.status));

  const std::vector<std::string> analyses = {
      "analyze --function exp --space dirichlet:p=2,weight=const --q 2 --n 500 --r-grid 2:20:0.5",
      "analyze --function expexp:n=3000 --space bloch:alpha=1 --q 3 --n 1500 --r-grid 1.5:2.75:0.25",
      "analyze --function satoorder:q=3,rho=2 --space dirichlet:p=2,weight=const --q auto"};
  for (const auto& a : analyses) {
    for (const char* format : {"json", "csv"}) {
      const std::string cmd = "'" + cli + "' " + a + " --format " + format;
      const RunResult r1 = run(cmd), r2 = run(cmd);
      c.check(r1.status == 0 && r2.status == 0 && r1.out == r2.out && !r1.out.empty(),
              std::string(format) + " byte-identical: " + a);
    }
    const RunResult j = run("'" + cli + "' " + a + " --format json");
    try {
      const ordered_json doc = ordered_json::parse(j.out);
      const ordered_json back = ordered_json::parse(doc.dump(2));
      std::vector<double> x, y;
      collect_floats(doc, x);
      collect_floats(back, y);
      bool same = x.size() == y.size() && !x.empty();
      for (std::size_t i = 0; same && i < x.size(); ++i) same = std::memcmp(&x[i], &y[i], sizeof(double)) == 0;
      c.check(same && doc.dump(2) + "\n" == j.out,
              "JSON round trip (" + std::to_string(x.size()) + " floats, text identical): " + a);
    } catch (const std::exception& e) {
      c.check(false, std::string("JSON parse failed: ") + e.what());
    }
  }
  report("AC11", "determinism and round trip", c);
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  ac10();
  ac11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
