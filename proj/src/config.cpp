#include "pnspace/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace pnspace {

namespace {

double number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("bad number '" + s + "' in " + what);
  return v;
}

template <class F>
auto wrap(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

const char* kBuiltin = R"json({
  "schema": "pnspace-config/1",
  "grid": {"n": 256, "x_max": 16},
  "campaigns": {"trials": 1000, "seed": 0},
  "spaces": {
    "alpha2-under-tauM": {"dimension": 2, "norm": "l2", "family": "alpha_simple", "G": "ratio:1", "alpha": 2,
                          "tau": "tau:M", "tau_star": "lift:M"},
    "alpha2-under-tauTG": {"dimension": 2, "norm": "l2", "family": "alpha_simple", "G": "ratio:1", "alpha": 2,
                           "tau": "tau:TG:ratio:1:2", "tau_star": "lift:TG:ratio:1:2", "declared": "Menger"},
    "simple-l2": {"dimension": 2, "norm": "l2", "family": "simple", "G": "ratio:1",
                  "tau": "tau:M", "tau_star": "lift:M", "declared": "Serstnev"},
    "simple-l1": {"dimension": 1, "norm": "l1", "family": "simple", "G": "ratio:1",
                  "tau": "tau:M", "tau_star": "lift:M", "declared": "Serstnev"},
    "simple-l2-tauPi": {"dimension": 2, "norm": "l2", "family": "simple", "G": "ratio:1",
                        "tau": "tau:Pi", "tau_star": "lift:M"},
    "simple-l1-tauPi": {"dimension": 1, "norm": "l1", "family": "simple", "G": "ratio:1",
                        "tau": "tau:Pi", "tau_star": "lift:M"},
    "simple-l2-sqrt": {"dimension": 2, "norm": "l2", "family": "simple", "G": "ratio:1", "m": "sqrt",
                       "tau": "tau:M", "tau_star": "lift:M"},
    "equilateral-ratio": {"dimension": 2, "family": "equilateral", "F": "ratio:1",
                          "tau": "lift:M", "tau_star": "lift:M"},
    "exp-l2": {"dimension": 2, "norm": "l2", "family": "exp", "tau": "lift:Pi", "tau_star": "lift:Pi"},
    "exp-l2-tauPi": {"dimension": 2, "norm": "l2", "family": "exp", "tau": "tau:Pi", "tau_star": "lift:Pi"}
  },
  "products": {
    "simple-lift-M": {"kind": "tau", "factors": ["simple-l2", "simple-l1"], "tau1": "lift:M"},
    "simple-tau-M": {"kind": "tau", "factors": ["simple-l2", "simple-l1"], "tau1": "tau:M"},
    "example1": {"kind": "tau", "factors": ["simple-l2-tauPi", "simple-l1-tauPi"], "tau1": "lift:Pi"},
    "tg-beta2": {"kind": "tg", "norms": ["l2", "l2"], "dims": [2, 2], "G": "ratio:1", "alpha": 2},
    "example4": {"kind": "countable", "factor": "exp-l2-tauPi", "K": 2, "m": "blowup:dyadic", "t": "Pi",
                 "mode": "tau", "grid": {"n": 256, "x_max": 2}},
    "example5": {"kind": "countable", "factor": "exp-l2", "K": 10, "m": "blowup:dyadic", "t": "Pi",
                 "mode": "lift", "grid": {"n": 2048, "x_max": 1}},
    "sigma20": {"kind": "sigma", "factor": "simple-l2", "K": 20}
  },
  "topology": {
    "product-weaker": {"experiment": "containment", "product": "example5", "epsilon": 0.05,
                       "samples": 10000, "budget": 100000},
    "sigma-equal": {"experiment": "sigma-equivalence", "product": "sigma20", "epsilon": 0.1,
                    "samples": 10000, "budget": 100000},
    "sigma-one-close": {"experiment": "sigma-one-close", "product": "sigma20", "epsilon": 0.6},
    "sigma-neighborhoods": {"experiment": "neighborhoods", "product": "sigma20", "samples": 1000}
  }
})json";

std::optional<SpaceClass> parse_class(const std::string& s) {
  if (s == "PN") return SpaceClass::pn;
  if (s == "PPN") return SpaceClass::ppn;
  if (s == "Serstnev") return SpaceClass::serstnev;
  if (s == "Menger") return SpaceClass::menger;
  return std::nullopt;
}

}  // namespace

TNorm parse_tnorm(const std::string& name) {
  if (name == "M") return TNorm::minimum();
  if (name == "Pi") return TNorm::product();
  if (name == "W") return TNorm::lukasiewicz();
  if (name.rfind("TG:", 0) == 0) {
    const auto cut = name.rfind(':');
    if (cut <= 3) throw ConfigError("T_G name needs the form TG:<ddf>:<alpha>: " + name);
    const std::string g_name = name.substr(3, cut - 3);
    const double alpha = number(name.substr(cut + 1), name);
    return wrap(name, [&] { return TNorm::tg(parse_ddf(g_name), alpha, g_name); });
  }
  throw ConfigError("unknown t-norm: " + name);
}

TConorm parse_conorm(const std::string& name) {
  if (name == "M*") return TConorm::maximum();
  if (name == "Pi*") return TConorm::probabilistic_sum();
  if (name == "W*") return TConorm::bounded_sum();
  if (!name.empty() && name.back() == '*') return TConorm::dual_of(parse_tnorm(name.substr(0, name.size() - 1)));
  throw ConfigError("unknown t-conorm: " + name);
}

TriangleFunction parse_triangle(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown triangle function: " + name);
  const std::string kind = name.substr(0, colon), arg = name.substr(colon + 1);
  if (kind == "tau") return TriangleFunction::tau(parse_tnorm(arg));
  if (kind == "lift") return TriangleFunction::lift(parse_tnorm(arg));
  if (kind == "taustar") return TriangleFunction::taustar(parse_conorm(arg.back() == '*' ? arg : arg + "*"));
  if (kind == "liftstar") return TriangleFunction::liftstar(parse_conorm(arg.back() == '*' ? arg : arg + "*"));
  throw ConfigError("unknown triangle function: " + name);
}

AnalyticDdf parse_ddf(const std::string& name) {
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const double arg = has_arg ? number(name.substr(colon + 1), name) : 1.0;
  return wrap(name, [&] {
    if (kind == "ratio") return AnalyticDdf::ratio(arg);
    if (kind == "exp") return AnalyticDdf::exp_complement(arg);
    if (kind == "step" && has_arg) return AnalyticDdf::step(arg);
    throw ConfigError("unknown d.d.f.: " + name);
  });
}

MbFunction parse_m(const std::string& name) {
  return wrap("m-function", [&] { return MbFunction::parse(name); });
}

Norm parse_norm(const std::string& name) {
  return wrap("norm", [&] { return Norm::parse(name); });
}

// ---------------------------------------------------------------------------

Config Config::builtin() { return from_json(nlohmann::json::parse(kBuiltin), "builtin"); }

Config Config::from_json(nlohmann::json doc, std::string origin) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (doc.value("schema", std::string{}) != kConfigSchema)
    throw ConfigError("config schema must be \"" + std::string(kConfigSchema) + "\"");
  for (const char* key : {"spaces", "products", "topology"})
    if (!doc.contains(key)) doc[key] = nlohmann::json::object();
  Config c;
  c.doc_ = std::move(doc);
  c.origin_ = std::move(origin);
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return from_json(std::move(doc), path);
}

Config Config::resolve(const std::optional<std::string>& path) {
  if (path) return load(*path);
  if (const char* env = std::getenv(kConfigEnv); env && *env) return load(env);
  return builtin();
}

Grid Config::grid_of(const nlohmann::json& def) const {
  Grid g;
  const nlohmann::json& src = def.contains("grid") ? def["grid"] : doc_.value("grid", nlohmann::json::object());
  g.n = src.value("n", g.n);
  g.x_max = src.value("x_max", g.x_max);
  if (grid_n_) g.n = *grid_n_;
  if (g.n < 2 || !(g.x_max > 0.0)) throw ConfigError("grid needs n >= 2 and x_max > 0");
  return g;
}

Grid Config::grid() const { return grid_of(nlohmann::json::object()); }

const nlohmann::json& Config::section(const std::string& key, const std::string& name) const {
  const auto& s = doc_.at(key);
  if (!s.contains(name)) throw ConfigError("unknown " + key.substr(0, key.size() - (key.back() == 's' ? 1 : 0)) + ": " + name);
  return s.at(name);
}

static std::vector<std::string> keys_of(const nlohmann::json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

std::vector<std::string> Config::space_names() const { return keys_of(doc_["spaces"]); }
std::vector<std::string> Config::product_names() const { return keys_of(doc_["products"]); }
std::vector<std::string> Config::topology_names() const { return keys_of(doc_["topology"]); }

PNSpace Config::space(const std::string& name) const {
  const auto& d = section("spaces", name);
  return wrap("space " + name, [&] {
    const Grid grid = grid_of(d);
    const std::size_t dim = d.value("dimension", std::size_t{2});
    const std::string family = d.at("family").get<std::string>();
    ProbNormPtr nu;
    if (family == "simple") {
      nu = simple(parse_norm(d.value("norm", "l2")), parse_ddf(d.value("G", "ratio")));
    } else if (family == "alpha_simple") {
      nu = alpha_simple(parse_norm(d.value("norm", "l2")), parse_ddf(d.value("G", "ratio")), d.at("alpha").get<double>());
    } else if (family == "equilateral") {
      nu = equilateral(parse_ddf(d.value("F", "ratio")).sample(grid));
    } else if (family == "exp") {
      nu = exp_norm(parse_norm(d.value("norm", "l2")));
    } else {
      throw ConfigError("space " + name + ": unknown family " + family);
    }
    if (d.contains("m")) nu = transformed(nu, parse_m(d["m"].get<std::string>()));
    PNSpace s{name, dim, nu, parse_triangle(d.at("tau").get<std::string>()),
              parse_triangle(d.at("tau_star").get<std::string>()), SpaceClass::pn, std::nullopt, grid};
    if (d.contains("declared")) {
      const auto c = parse_class(d["declared"].get<std::string>());
      if (!c) throw ConfigError("space " + name + ": unknown class " + d["declared"].get<std::string>());
      s.declared = *c;
      if (*c == SpaceClass::menger && s.tau.kind() == TriangleFunction::Kind::tau) s.menger_t = s.tau.tnorm();
    }
    return s;
  });
}

BuiltProduct Config::product(const std::string& name, std::uint64_t seed) const {
  const auto& d = section("products", name);
  return wrap("product " + name, [&] {
    const std::string kind = d.at("kind").get<std::string>();
    const Grid grid = grid_of(d);
    auto factor_list = [&](std::size_t k) {
      std::vector<PNSpace> fs;
      if (d.contains("factors")) {
        for (const auto& f : d["factors"]) fs.push_back(space(f.get<std::string>()));
      } else {
        const PNSpace f = space(d.at("factor").get<std::string>());
        fs.assign(k, f);
      }
      for (auto& f : fs) {
        if (d.contains("grid")) f.grid = grid;
      }
      return fs;
    };

    if (kind == "tau") {
      const auto fs = factor_list(2);
      if (fs.size() != 2) throw ConfigError("product " + name + ": tau products take two factors");
      return BuiltProduct{tau_product(fs[0], fs[1], parse_triangle(d.at("tau1").get<std::string>())), fs};
    }
    if (kind == "tg") {
      const auto norms = d.at("norms").get<std::vector<std::string>>();
      const auto dims = d.at("dims").get<std::vector<std::size_t>>();
      if (norms.size() != 2 || dims.size() != 2) throw ConfigError("product " + name + ": tg needs two norms");
      return BuiltProduct{tg_product(parse_norm(norms[0]), dims[0], parse_norm(norms[1]), dims[1],
                                     parse_ddf(d.value("G", "ratio")), d.at("alpha").get<double>(), grid),
                          {}};
    }
    if (kind == "countable") {
      const std::size_t k = d.value("K", std::size_t{0});
      auto fs = factor_list(k);
      std::vector<MbFunction> ms;
      std::vector<double> bs;
      if (d.at("m").is_string() && d["m"].get<std::string>() == "blowup:dyadic") {
        for (std::size_t i = 0; i < fs.size(); ++i) {
          bs.push_back(std::ldexp(1.0, -static_cast<int>(i + 1)));
          ms.push_back(MbFunction::blowup(bs.back()));
        }
      } else {
        for (const auto& m : d.at("m")) {
          ms.push_back(parse_m(m.get<std::string>()));
          bs.push_back(ms.back().b());
        }
      }
      const auto mode = d.value("mode", "lift") == "tau" ? CountableMode::tau : CountableMode::lift;
      return BuiltProduct{countable_product(fs, bs, ms, parse_tnorm(d.value("t", "Pi")), mode, 1000, seed), fs};
    }
    if (kind == "sigma") {
      const auto fs = factor_list(d.value("K", std::size_t{0}));
      return BuiltProduct{sigma_product(fs, 200, seed), fs};
    }
    throw ConfigError("product " + name + ": unknown kind " + kind);
  });
}

TopologyExperiment Config::topology(const std::string& name) const {
  const auto& d = section("topology", name);
  return wrap("topology " + name, [&] {
    TopologyExperiment e;
    e.name = name;
    e.kind = d.at("experiment").get<std::string>();
    e.product = d.at("product").get<std::string>();
    e.epsilon = d.value("epsilon", e.epsilon);
    e.samples = d.value("samples", e.samples);
    e.budget = d.value("budget", e.budget);
    if (d.contains("center")) e.center = d["center"].get<Vector>();
    return e;
  });
}

}  // namespace pnspace
