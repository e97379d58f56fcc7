// growthlab: order and type of entire functions from coefficients, best
// approximations, and maximum modulus.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 computation refused.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "growthlab/analysis.hpp"
#include "growthlab/catalog.hpp"
#include "growthlab/error.hpp"
#include "growthlab/oracle.hpp"
#include "growthlab/parallel.hpp"
#include "growthlab/report.hpp"
#include "growthlab/verify.hpp"

namespace {

using namespace growthlab;

constexpr int kConfigError = 2;
constexpr int kRefused = 3;

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw ConfigError("bad index '" + item + "' in --n");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ConfigError("--n needs at least one index");
  return out;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

int cmd_norms(const std::string& spec, const std::string& ns) {
  const SpaceModel s = parse_space_spec(spec);
  const auto list = parse_n_list(ns);
  std::cout << "n,closed_form,oracle,oracle_rel_error\n";
  for (std::size_t n : list) {
    const double closed = monomial_norm(s, n).to_double();
    std::string oracle = "", err = "";
    if (s.kind() != SpaceKind::Dirichlet) {
      const OracleResult o = monomial_norm_oracle(s, n);
      oracle = num(o.value.to_double());
      err = num(o.rel_error);
    }
    std::cout << n << ',' << num(closed) << ',' << oracle << ',' << err << '\n';
  }
  return 0;
}

int cmd_catalog() {
  std::cout << "functions:\n";
  for (const auto& e : function_catalog()) std::cout << "  " << e.spec << "\n      " << e.description << '\n';
  std::cout << "spaces:\n";
  for (const auto& e : space_catalog()) std::cout << "  " << e.spec << "\n      " << e.description << '\n';
  return 0;
}

int cmd_verify(const std::string& suite) {
  const auto rows = run_suite(suite);
  std::size_t failed = 0;
  for (const CheckRow& r : rows) {
    std::cout << (r.ok ? "PASS" : "FAIL") << "  " << r.suite << "  " << r.name << "  (" << r.detail << ")\n";
    if (!r.ok) ++failed;
  }
  std::cout << rows.size() - failed << "/" << rows.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int cmd_analyze(const AnalysisConfig& cfg, const std::string& format, const std::string& output) {
  const AnalysisResult res = run_analysis(cfg);
  const ordered_json doc = analysis_to_json(res);
  std::ostringstream text;
  if (format == "json") {
    text << doc.dump(2) << '\n';
  } else {
    write_csv(text, doc);
  }
  if (output.empty() || output == "-") {
    std::cout << text.str();
  } else {
    std::ofstream os(output, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file " + output);
    os << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order and type of entire functions"};
  app.require_subcommand(1);

  AnalysisConfig cfg;
  std::string q_text = "auto", format = "json", output, r_grid;
  std::optional<std::size_t> K, n_min;
  std::optional<double> rho;
  auto* analyze = app.add_subcommand("analyze", "estimate q, rho_q and sigma_q by every applicable route");
  analyze->add_option("--function", cfg.function, "function spec (see 'catalog')")->capture_default_str();
  analyze->add_option("--space", cfg.space, "space spec (see 'catalog')")->capture_default_str();
  analyze->add_option("--q", q_text, "level q in 2..5, or auto")->capture_default_str();
  analyze->add_option("--n", cfg.N, "largest index N")->capture_default_str();
  analyze->add_option("--k", K, "tail summation index K (default N + 64)");
  analyze->add_option("--n-min", n_min, "first index (default: first n with ln^(q-1) n >= 1)");
  analyze->add_option("--window", cfg.window_fraction, "trailing window fraction")->capture_default_str();
  analyze->add_option("--rho", rho, "order used by the type routes (default: route estimate)");
  analyze->add_option("--r-grid", r_grid, "radii for the direct route: a,b,c or start:stop:step");
  analyze->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  analyze->add_option("--output", output, "output file (default stdout)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "lemma13, mu, norms, routes, corollary1 or all")
      ->required()
      ->check(CLI::IsMember({"lemma13", "mu", "norms", "routes", "corollary1", "all"}));

  std::string norm_space, norm_ns;
  auto* norms = app.add_subcommand("norms", "tabulate monomial norms, closed form and oracle");
  norms->add_option("--space", norm_space, "space spec")->required();
  norms->add_option("--n", norm_ns, "comma-separated indices")->required();

  auto* catalog = app.add_subcommand("catalog", "list functions and spaces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*analyze) {
      if (q_text != "auto") {
        try {
          std::size_t pos = 0;
          cfg.q = std::stoi(q_text, &pos);
          if (pos != q_text.size()) throw ConfigError("");
        } catch (const std::exception&) {
          throw ConfigError("--q must be an integer or auto");
        }
      }
      cfg.K = K;
      cfg.n_min = n_min;
      cfg.rho = rho;
      if (!r_grid.empty()) cfg.r_grid = parse_r_grid(r_grid);
      cfg.threads = threads_from_env();
      return cmd_analyze(cfg, format, output);
    }
    if (*verify) return cmd_verify(suite);
    if (*norms) return cmd_norms(norm_space, norm_ns);
    if (*catalog) return cmd_catalog();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  }
  return 0;
}
