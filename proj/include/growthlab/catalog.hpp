#pragma once

// Text specifications of functions and spaces, e.g.
//   satoorder:q=3,rho=2        dirichlet:p=2,weight=power,s=2
// and the built-in matrices the verification suites run over.

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "growthlab/error.hpp"
#include "growthlab/functions.hpp"
#include "growthlab/logtable.hpp"
#include "growthlab/spaces.hpp"

namespace growthlab {

struct SpecParts {
  std::string name;
  std::map<std::string, std::string> args;
  std::string raw_tail;  // everything after ':'
};

namespace catalog_detail {

inline SpecParts split_spec(std::string_view spec) {
  SpecParts out;
  const auto colon = spec.find(':');
  out.name = std::string(spec.substr(0, colon));
  if (out.name.empty()) throw ConfigError("empty specification");
  if (colon == std::string_view::npos) return out;
  out.raw_tail = std::string(spec.substr(colon + 1));
  if (out.name == "file") return out;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("expected key=value in '" + std::string(spec) + "', got '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    if (!out.args.emplace(key, std::string(item.substr(eq + 1))).second) {
      throw ConfigError("duplicate key '" + key + "' in '" + std::string(spec) + "'");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

class Args {
 public:
  Args(const SpecParts& parts, std::set<std::string> allowed) : parts_(parts) {
    for (const auto& [k, v] : parts.args) {
      if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' for '" + parts.name + "'");
    }
  }

  bool has(const std::string& k) const { return parts_.args.count(k) > 0; }

  double real(const std::string& k) const {
    const auto it = parts_.args.find(k);
    if (it == parts_.args.end()) throw ConfigError("'" + parts_.name + "' requires " + k + "=");
    return parse_real_value(it->second, k);
  }

  double real(const std::string& k, double fallback) const { return has(k) ? real(k) : fallback; }

  std::size_t index(const std::string& k) const {
    const double v = real(k);
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
      throw ConfigError(k + " must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
  }

  std::optional<std::size_t> opt_index(const std::string& k) const {
    return has(k) ? std::optional<std::size_t>(index(k)) : std::nullopt;
  }

  int integer(const std::string& k) const {
    const std::size_t v = index(k);
    if (v > 64) throw ConfigError(k + " is out of range");
    return static_cast<int>(v);
  }

  const std::string& text(const std::string& k) const {
    const auto it = parts_.args.find(k);
    if (it == parts_.args.end()) throw ConfigError("'" + parts_.name + "' requires " + k + "=");
    return it->second;
  }

 private:
  static double parse_real_value(const std::string& s, const std::string& k) {
    if (s == "inf") return kInf;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ConfigError("bad number '" + s + "' for " + k);
    }
    return v;
  }

  const SpecParts& parts_;
};

// Every domain error raised while building a model from text is a
// configuration problem.
template <class F>
auto as_config(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace catalog_detail

/// 1 + z + ... + z^d.
inline CoeffModel model_polynomial(std::size_t degree) {
  LogTable t;
  for (std::size_t n = 0; n <= degree; ++n) t.entries.emplace_back(n, 0.0);
  return model_from_table(t, "poly");
}

inline CoeffModel parse_function_spec(std::string_view spec) {
  using namespace catalog_detail;
  const SpecParts parts = split_spec(spec);
  return as_config([&] {
    if (parts.name == "file") {
      if (parts.raw_tail.empty()) throw ConfigError("file: requires a path");
      return model_from_file(parts.raw_tail);
    }
    if (parts.name == "exp") {
      Args a(parts, {});
      return model_exp();
    }
    if (parts.name == "expexp") {
      Args a(parts, {"n"});
      return model_expexp(a.has("n") ? a.index("n") : 5000);
    }
    if (parts.name == "satoorder") {
      Args a(parts, {"q", "rho", "n0"});
      return model_sato_order(a.integer("q"), a.real("rho"), a.opt_index("n0"));
    }
    if (parts.name == "satotype") {
      Args a(parts, {"q", "rho", "sigma", "n0"});
      return model_sato_type(a.integer("q"), a.real("rho"), a.real("sigma"), a.opt_index("n0"));
    }
    if (parts.name == "poly") {
      Args a(parts, {"d"});
      return model_polynomial(a.index("d"));
    }
    throw ConfigError("unknown function '" + parts.name + "'");
  });
}

inline SpaceModel parse_space_spec(std::string_view spec) {
  using namespace catalog_detail;
  const SpecParts parts = split_spec(spec);
  return as_config([&] {
    const std::string& k = parts.name;
    if (k == "sup") {
      Args a(parts, {});
      return SpaceModel::sup_disk();
    }
    if (k == "hardy") return SpaceModel::hardy(Args(parts, {"p"}).real("p"));
    if (k == "bergman") return SpaceModel::bergman(Args(parts, {"p"}).real("p"));
    if (k == "wbergman") {
      Args a(parts, {"p", "beta", "form"});
      WeightForm form = WeightForm::OneMinusR;
      if (a.has("form")) {
        const std::string& f = a.text("form");
        if (f == "1-r2") {
          form = WeightForm::OneMinusR2;
        } else if (f != "1-r") {
          throw ConfigError("form must be 1-r or 1-r2");
        }
      }
      return SpaceModel::weighted_bergman(a.real("p"), a.real("beta"), form);
    }
    if (k == "ap") return SpaceModel::ap(Args(parts, {"p"}).real("p"));
    if (k == "hlb") {
      Args a(parts, {"p", "q", "lambda"});
      return SpaceModel::hlb(a.real("p"), a.real("q"), a.real("lambda"));
    }
    if (k == "mixed") {
      Args a(parts, {"p", "q", "alpha"});
      return SpaceModel::mixed(a.real("p"), a.real("q"), a.real("alpha"));
    }
    if (k == "bloch") return SpaceModel::bloch(Args(parts, {"alpha"}).real("alpha"));
    if (k == "dirichlet") {
      Args a(parts, {"p", "weight", "c", "s", "path"});
      const std::string w = a.has("weight") ? a.text("weight") : "const";
      DirichletWeights weights = DirichletWeights::constant(1.0);
      if (w == "const") {
        weights = DirichletWeights::constant(a.real("c", 1.0));
      } else if (w == "power") {
        weights = DirichletWeights::power(a.real("s"));
      } else if (w == "geometric") {
        weights = DirichletWeights::geometric(a.real("c"));
      } else if (w == "file") {
        weights = DirichletWeights::from_file(a.text("path"));
      } else {
        throw ConfigError("weight must be const, power, geometric or file");
      }
      return SpaceModel::dirichlet(a.real("p"), std::move(weights));
    }
    throw ConfigError("unknown space '" + k + "'");
  });
}

struct CatalogEntry {
  std::string spec;
  std::string description;
};

inline std::vector<CatalogEntry> function_catalog() {
  return {
      {"exp", "e^z, c_n = 1/n!"},
      {"expexp:n=<table size>", "e^{e^z}, c_n = e B_n / n! (Bell numbers), default n=5000"},
      {"satoorder:q=<int >= 2>,rho=<real > 0>[,n0=<int>]", "c_n = (ln^{(q-2)} n)^{-n/rho} from n0 on"},
      {"satotype:q=<int >= 3>,rho=<real > 0>,sigma=<real > 0>[,n0=<int>]",
       "c_n = (sigma / ln^{(q-2)} n)^{n/rho} from n0 on"},
      {"poly:d=<int>", "1 + z + ... + z^d"},
      {"file:<path>", "log-coefficient table, optional '#tail sato_order <q> <rho>'"},
  };
}

inline std::vector<CatalogEntry> space_catalog() {
  return {
      {"sup", "sup norm on the disk"},
      {"hardy:p=<[1, inf]>", "Hardy H_p"},
      {"bergman:p=<[1, inf)>", "Bergman, normalised area measure"},
      {"wbergman:p=<[1, inf)>,beta=<> -1>[,form=1-r|1-r2]", "weighted Bergman"},
      {"ap:p=<(0, 1)>", "A_p: integral of (1 - r)^{1/p - 2} M_1(f, r)"},
      {"hlb:p=<> 0>,q=<(p, inf]>,lambda=<(0, inf]>", "B_{p,q,lambda}"},
      {"mixed:p=<[1, inf]>,q=<[1, inf]>,alpha=<> 0>", "mixed-norm H^{p,q,alpha}"},
      {"bloch:alpha=<> 0>", "Bloch-type |f(0)| + sup (1 - |z|^2)^alpha |f'(z)|"},
      {"dirichlet:p=<[1, inf)>,weight=const[,c=]|power,s=|geometric,c=|file,path=",
       "coefficient norm (sum |c_k|^p alpha_k)^{1/p}"},
  };
}

/// Entire functions used by the verification suites.
inline std::vector<std::string> default_function_specs() {
  return {"exp",
          "expexp:n=5000",
          "satoorder:q=2,rho=1",
          "satoorder:q=3,rho=2",
          "satoorder:q=3,rho=0.5",
          "satoorder:q=4,rho=1",
          "satotype:q=3,rho=1,sigma=2",
          "poly:d=2"};
}

/// One instance of every space kind, plus several Dirichlet weight families.
inline std::vector<std::string> default_space_specs() {
  return {"sup",
          "hardy:p=2",
          "hardy:p=7",
          "bergman:p=2",
          "wbergman:p=2,beta=1",
          "wbergman:p=2,beta=2,form=1-r2",
          "ap:p=0.5",
          "hlb:p=1,q=2,lambda=2",
          "hlb:p=1,q=inf,lambda=inf",
          "mixed:p=2,q=2,alpha=1",
          "mixed:p=2,q=inf,alpha=0.5",
          "bloch:alpha=0.5",
          "bloch:alpha=1",
          "bloch:alpha=2",
          "dirichlet:p=2,weight=const",
          "dirichlet:p=1,weight=power,s=2",
          "dirichlet:p=2,weight=geometric,c=2"};
}

inline std::vector<std::string> dirichlet_space_specs() {
  return {"dirichlet:p=2,weight=const", "dirichlet:p=1,weight=const", "dirichlet:p=2,weight=power,s=1",
          "dirichlet:p=1,weight=power,s=2", "dirichlet:p=3,weight=geometric,c=2"};
}

}  // namespace growthlab
