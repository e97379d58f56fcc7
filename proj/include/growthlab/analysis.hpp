#pragma once

// One analysis run: a function, an ambient space, a level q (or detection),
// and every route that applies.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "growthlab/catalog.hpp"
#include "growthlab/error.hpp"
#include "growthlab/growth.hpp"

namespace growthlab {

struct AnalysisConfig {
  std::string function = "exp";
  std::string space = "dirichlet:p=2,weight=const";
  std::optional<int> q;  // empty: detect
  std::size_t N = 2000;
  std::optional<std::size_t> K;
  std::optional<std::size_t> n_min;
  double window_fraction = 0.5;
  std::optional<double> rho;
  std::vector<double> r_grid;  // empty: no direct route
  unsigned threads = 1;
};

struct AnalysisResult {
  AnalysisConfig config;
  std::string function_label;
  std::string space_label;
  int q = 2;
  std::optional<DetectResult> detection;
  std::vector<GrowthReport> routes;
};

/// Parses "a,b,c" or "start:stop:step" (inclusive of stop up to rounding).
inline std::vector<double> parse_r_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ConfigError("bad number '" + std::string(s) + "' in r grid");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) throw ConfigError("r grid range must be start:stop:step");
    const double start = number(text.substr(0, a));
    const double stop = number(text.substr(a + 1, b - a - 1));
    const double step = number(text.substr(b + 1));
    if (!(step > 0.0) || !(stop >= start)) throw ConfigError("r grid range must increase");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw ConfigError("r grid too large");
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  } else {
    while (!text.empty()) {
      const auto comma = text.find(',');
      out.push_back(number(text.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw ConfigError("r grid must be strictly increasing");
  }
  if (out.empty()) throw ConfigError("empty r grid");
  return out;
}

/// Runs the coefficient and approximation routes (and the direct route when a
/// grid is given). Without an explicit rho, the type routes use the order
/// estimate of the same route.
inline AnalysisResult run_analysis(const AnalysisConfig& cfg) {
  if (!(cfg.window_fraction > 0.0 && cfg.window_fraction <= 1.0)) {
    throw ConfigError("window fraction must lie in (0, 1]");
  }
  if (cfg.rho && !(*cfg.rho > 0.0 && std::isfinite(*cfg.rho))) throw ConfigError("rho must be positive");
  if (cfg.q && (*cfg.q < 2 || *cfg.q > 5)) throw ConfigError("q must lie in 2..5 or be auto");
  const CoeffModel model = parse_function_spec(cfg.function);
  const SpaceModel space = parse_space_spec(cfg.space);

  AnalysisResult res;
  res.config = cfg;
  res.function_label = model.label();
  res.space_label = space.label();

  RouteOptions opt;
  opt.window_fraction = cfg.window_fraction;
  opt.threads = cfg.threads;

  if (cfg.q) {
    res.q = *cfg.q;
  } else {
    DetectOptions dopt;
    dopt.threads = cfg.threads;
    res.detection = detect_q(space, model, cfg.N, dopt, opt.tail);
    if (res.detection->polynomial) {
      res.q = 2;
    } else if (!res.detection->q) {
      throw Refusal("level detection found no q in 2..5 (q >= 6)");
    } else {
      res.q = *res.detection->q;
    }
  }

  auto with_sigma = [&](GrowthReport rep, auto&& sigma_fn) {
    if (rep.polynomial) return rep;
    const double rho = cfg.rho.value_or(rep.rho ? rep.rho->point : 0.0);
    if (!(rho > 0.0) || !std::isfinite(rho)) {
      rep.notes.push_back("type not computed: no positive order");
      return rep;
    }
    GrowthReport s = sigma_fn(rho);
    rep.sigma = s.sigma;
    rep.sigma_series = s.sigma_series;
    for (auto& n : s.notes) rep.notes.push_back(n);
    return rep;
  };

  res.routes.push_back(with_sigma(rho_from_coeffs(model, res.q, cfg.n_min, cfg.N, opt), [&](double rho) {
    return sigma_from_coeffs(model, res.q, rho, cfg.n_min, cfg.N, opt);
  }));
  res.routes.push_back(
      with_sigma(rho_from_approx(space, model, res.q, cfg.n_min, cfg.N, cfg.K, opt), [&](double rho) {
        return sigma_from_approx(space, model, res.q, rho, cfg.n_min, cfg.N, cfg.K, opt);
      }));
  if (!cfg.r_grid.empty()) {
    std::optional<double> rho = cfg.rho;
    if (!rho && res.routes.front().rho && res.routes.front().rho->point > 0.0) rho = res.routes.front().rho->point;
    res.routes.push_back(rho_sigma_direct(model, res.q, rho, cfg.r_grid, opt));
  }
  return res;
}

}  // namespace growthlab
