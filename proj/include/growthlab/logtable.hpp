#pragma once

// Reader for the `#logcoeffs v1` line format shared by coefficient files and
// Dirichlet weight files:
//
//   #logcoeffs v1            optional header
//   #tail sato_order 3 2     optional tail rule (coefficient files only)
//   0 0.0                    n <whitespace> ln|value|
//   1 -inf                   zero coefficient
//
// Other lines starting with '#' are comments. Indices must strictly increase.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "growthlab/error.hpp"

namespace growthlab {

struct TailRule {
  int q = 2;
  double rho = 1.0;
};

struct LogTable {
  std::vector<std::pair<std::size_t, double>> entries;  // (n, ln|value|), -inf allowed
  std::optional<TailRule> tail;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::optional<double> parse_real(std::string_view tok) {
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

inline std::optional<std::size_t> parse_index(std::string_view tok) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parse a log table. `allow_zero` controls whether `-inf` entries are legal.
inline LogTable parse_log_table(std::istream& in, bool allow_zero) {
  LogTable table;
  std::string line;
  std::size_t lineno = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0].front() == '#') {
      if (toks[0] == "#logcoeffs") {
        if (seen_record) throw ParseError(lineno, "header after data records");
        if (toks.size() != 2 || toks[1] != "v1") throw ParseError(lineno, "unsupported header");
      } else if (toks[0] == "#tail") {
        if (!allow_zero) throw ParseError(lineno, "tail rules are not allowed here");
        if (toks.size() != 4 || toks[1] != "sato_order") {
          throw ParseError(lineno, "expected '#tail sato_order <q> <rho>'");
        }
        const auto q = detail::parse_index(toks[2]);
        const auto rho = detail::parse_real(toks[3]);
        if (!q || *q < 2 || !rho || !(*rho > 0.0) || !std::isfinite(*rho)) {
          throw ParseError(lineno, "invalid tail rule parameters");
        }
        table.tail = TailRule{static_cast<int>(*q), *rho};
      }
      continue;
    }
    if (toks.size() != 2) throw ParseError(lineno, "expected '<n> <logmag>', got '" + line + "'");
    const auto n = detail::parse_index(toks[0]);
    if (!n) throw ParseError(lineno, "invalid index '" + std::string(toks[0]) + "'");
    const auto v = detail::parse_real(toks[1]);
    if (!v) throw ParseError(lineno, "invalid value '" + std::string(toks[1]) + "'");
    if (std::isnan(*v) || *v == std::numeric_limits<double>::infinity()) {
      throw ParseError(lineno, "non-finite value");
    }
    if (std::isinf(*v) && !allow_zero) throw ParseError(lineno, "-inf is not allowed here");
    if (!table.entries.empty() && *n <= table.entries.back().first) {
      throw ParseError(lineno, "indices must be strictly increasing");
    }
    table.entries.emplace_back(*n, *v);
    seen_record = true;
  }
  return table;
}

inline LogTable read_log_table(const std::string& path, bool allow_zero) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_log_table(in, allow_zero);
}

inline LogTable parse_log_table_string(const std::string& text, bool allow_zero) {
  std::istringstream in(text);
  return parse_log_table(in, allow_zero);
}

}  // namespace growthlab
