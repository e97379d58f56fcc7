#pragma once

// JSON and CSV serialisation of analysis results. Both carry the same
// numbers; floats are written in shortest round-trip form.

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "growthlab/analysis.hpp"
#include "growthlab/growth.hpp"

namespace growthlab {

using ordered_json = nlohmann::ordered_json;

namespace report_detail {

inline ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

inline ordered_json diagnostics_json(const Estimate& e) {
  ordered_json d;
  d["tail_sup"] = num(e.diagnostics.tail_sup);
  d["full_sup"] = num(e.diagnostics.full_sup);
  d["slope"] = num(e.diagnostics.slope);
  d["window_fraction"] = num(e.diagnostics.window_fraction);
  d["window_begin"] = e.diagnostics.window_begin;
  d["window_size"] = e.diagnostics.window_size;
  if (e.fit) {
    d["fit_slope"] = num(e.fit->slope);
    d["fit_intercept"] = num(e.fit->intercept);
    d["corrected"] = e.fit->applied;
  }
  return d;
}

inline ordered_json series_json(const RatioSeq& s) {
  ordered_json j;
  j["x"] = ordered_json::array();
  j["value"] = ordered_json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    j["x"].push_back(num(s.n_values[i]));
    j["value"].push_back(num(s.values[i]));
  }
  if (s.lower && s.upper) {
    j["lower"] = ordered_json::array();
    j["upper"] = ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      j["lower"].push_back(num((*s.lower)[i]));
      j["upper"].push_back(num((*s.upper)[i]));
    }
  }
  return j;
}

}  // namespace report_detail

inline ordered_json route_to_json(const GrowthReport& r) {
  using namespace report_detail;
  ordered_json j;
  j["route"] = route_name(r.route);
  j["q"] = r.q;
  j["rho"] = r.rho ? num(r.rho->point) : ordered_json(nullptr);
  if (r.sigma) j["sigma"] = num(r.sigma->point);
  if ((r.rho && r.rho->interval) || (r.sigma && r.sigma->interval)) {
    ordered_json iv;
    if (r.rho && r.rho->interval) iv["rho"] = {num(r.rho->interval->lower), num(r.rho->interval->upper)};
    if (r.sigma && r.sigma->interval) {
      iv["sigma"] = {num(r.sigma->interval->lower), num(r.sigma->interval->upper)};
    }
    j["interval"] = iv;
  }
  j["polynomial"] = r.polynomial;
  ordered_json diag = ordered_json::object();
  if (r.rho && !r.polynomial) diag["rho"] = diagnostics_json(*r.rho);
  if (r.sigma) diag["sigma"] = diagnostics_json(*r.sigma);
  j["diagnostics"] = diag;
  j["notes"] = r.notes;
  ordered_json series = ordered_json::object();
  if (!r.rho_series.values.empty()) series["rho"] = series_json(r.rho_series);
  if (!r.sigma_series.values.empty()) series["sigma"] = series_json(r.sigma_series);
  j["series"] = series;
  return j;
}

inline ordered_json analysis_to_json(const AnalysisResult& res) {
  using report_detail::num;
  ordered_json cfg;
  cfg["function"] = res.function_label;
  cfg["space"] = res.space_label;
  cfg["q"] = res.config.q ? ordered_json(*res.config.q) : ordered_json("auto");
  cfg["q_used"] = res.q;
  if (res.detection) {
    cfg["q_detected"] = res.detection->label();
    ordered_json trials = ordered_json::array();
    for (const LevelTrial& t : res.detection->trials) {
      ordered_json tj;
      tj["q"] = t.q;
      tj["evaluated"] = t.evaluated;
      tj["accepted"] = t.accepted;
      if (t.evaluated) {
        tj["early"] = num(t.early);
        tj["late"] = num(t.late);
        tj["growth"] = num(t.growth);
        tj["allowance"] = num(t.allowance);
      }
      if (!t.note.empty()) tj["note"] = t.note;
      trials.push_back(tj);
    }
    cfg["detection"] = trials;
  }
  cfg["N"] = res.config.N;
  cfg["K"] = res.config.K ? ordered_json(*res.config.K) : ordered_json("default");
  cfg["n_min"] = res.config.n_min ? ordered_json(*res.config.n_min) : ordered_json("default");
  cfg["window_fraction"] = num(res.config.window_fraction);
  cfg["rho"] = res.config.rho ? num(*res.config.rho) : ordered_json(nullptr);
  ordered_json out;
  out["config"] = cfg;
  out["routes"] = ordered_json::array();
  for (const GrowthReport& r : res.routes) out["routes"].push_back(route_to_json(r));
  return out;
}

namespace report_detail {

inline std::string fmt(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string scalar(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return quote(v.get<std::string>());
  return quote(v.dump());
}

struct CsvWriter {
  std::ostream& os;
  void row(const std::string& route, const std::string& q, const std::string& quantity,
           const std::string& field, const std::string& x, const std::string& value,
           const std::string& lower = "", const std::string& upper = "") {
    os << route << ',' << q << ',' << quantity << ',' << field << ',' << x << ',' << value << ',' << lower
       << ',' << upper << '\n';
  }
};

}  // namespace report_detail

/// Long-format CSV: one record per estimate, diagnostic, note and series
/// point, derived from the JSON document so both carry identical numbers.
inline void write_csv(std::ostream& os, const ordered_json& doc) {
  using namespace report_detail;
  CsvWriter w{os};
  os << "route,q,quantity,field,x,value,lower,upper\n";
  for (const auto& [key, value] : doc.at("config").items()) {
    w.row("config", "", "", key, "", scalar(value));
  }
  for (const ordered_json& r : doc.at("routes")) {
    const std::string route = r.at("route").get<std::string>();
    const std::string q = scalar(r.at("q"));
    for (const char* quantity : {"rho", "sigma"}) {
      if (!r.contains(quantity)) continue;
      std::string lo, hi;
      if (r.contains("interval") && r["interval"].contains(quantity)) {
        lo = scalar(r["interval"][quantity][0]);
        hi = scalar(r["interval"][quantity][1]);
      }
      w.row(route, q, quantity, "estimate", "", scalar(r[quantity]), lo, hi);
      if (r["diagnostics"].contains(quantity)) {
        for (const auto& [dk, dv] : r["diagnostics"][quantity].items()) w.row(route, q, quantity, dk, "", scalar(dv));
      }
    }
    w.row(route, q, "", "polynomial", "", scalar(r.at("polynomial")));
    for (const ordered_json& n : r.at("notes")) w.row(route, q, "", "note", "", scalar(n));
    for (const auto& [quantity, s] : r.at("series").items()) {
      const bool bracketed = s.contains("lower");
      for (std::size_t i = 0; i < s["x"].size(); ++i) {
        w.row(route, q, quantity, "series", scalar(s["x"][i]), scalar(s["value"][i]),
              bracketed ? scalar(s["lower"][i]) : "", bracketed ? scalar(s["upper"][i]) : "");
      }
    }
  }
}

}  // namespace growthlab
