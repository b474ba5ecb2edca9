// pnspace: command-line front end for the verification campaigns.

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnspace/config.hpp"
#include "pnspace/theorems.hpp"
#include "pnspace/topology.hpp"

using namespace pnspace;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Invocation {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> tau;
  bool verify = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> grid;
  std::optional<std::string> config;

  json to_json() const {
    json j{{"command", command}, {"args", args}, {"seed", seed}};
    j["trials"] = trials ? json(*trials) : json(nullptr);
    j["grid"] = grid ? json(*grid) : json(nullptr);
    j["config"] = config ? json(*config) : json(nullptr);
    if (tau) j["tau"] = *tau;
    if (verify) j["verify"] = true;
    return j;
  }

  static Invocation from_json(const json& j) {
    Invocation inv;
    inv.command = j.at("command").get<std::string>();
    inv.args = j.at("args").get<std::vector<std::string>>();
    inv.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("trials").is_null()) inv.trials = j["trials"].get<std::size_t>();
    if (!j.at("grid").is_null()) inv.grid = j["grid"].get<std::size_t>();
    if (!j.at("config").is_null()) inv.config = j["config"].get<std::string>();
    if (j.contains("tau")) inv.tau = j["tau"].get<std::string>();
    inv.verify = j.value("verify", false);
    return inv;
  }
};

bool is_triangle_name(const std::string& s) {
  for (const char* prefix : {"tau:", "lift:", "taustar:", "liftstar:"})
    if (s.rfind(prefix, 0) == 0) return true;
  return false;
}

BinaryOp number_op(const std::string& name) {
  if (!name.empty() && name.back() == '*') {
    const TConorm s = parse_conorm(name);
    return [s](double x, double y) { return s(x, y); };
  }
  const TNorm t = parse_tnorm(name);
  return [t](double x, double y) { return t(x, y); };
}

std::vector<double> zero_center(const ProductSpace& p) { return std::vector<double>(p.space.dim, 0.0); }

std::vector<VerificationReport> execute(const Invocation& inv) {
  // Resolves the same source the original run used, so "builtin" stays builtin
  // even when $PNSPACE_CONFIG is set later.
  Config config = inv.config ? (*inv.config == "builtin" ? Config::builtin() : Config::load(*inv.config))
                             : Config::resolve(std::nullopt);
  if (inv.grid) config.set_grid_n(*inv.grid);
  const json campaigns = config.doc().value("campaigns", json::object());
  const std::size_t trials = inv.trials.value_or(campaigns.value("trials", std::size_t{1000}));
  const std::uint64_t seed = inv.seed;
  const auto& a = inv.args;

  if (inv.command == "check-tnorm") return {check_tnorm_axioms(parse_tnorm(a.at(0)), trials, seed)};
  if (inv.command == "check-dominance") {
    if (is_triangle_name(a.at(0)) && is_triangle_name(a.at(1)))
      return {check_dominance(parse_triangle(a[0]), parse_triangle(a[1]), trials, seed, config.grid())};
    if (is_triangle_name(a[0]) || is_triangle_name(a[1]))
      throw ConfigError("check-dominance compares two triangle functions or two t-norms/t-conorms");
    return {check_number_dominance(a[0], number_op(a[0]), a[1], number_op(a[1]), trials, seed)};
  }
  if (inv.command == "check-superadditive") {
    const MbFunction m = parse_m(a.at(0));
    if (inv.tau) return {check_tau_superadditive(m, parse_triangle(*inv.tau), trials, seed)};
    return {check_superadditive(m, trials, seed)};
  }
  if (inv.command == "verify-axioms") return {verify_axioms(config.space(a.at(0)), trials, seed)};
  if (inv.command == "build-product") {
    const BuiltProduct built = config.product(a.at(0), seed);
    VerificationReport r = make_report("build-product:" + a[0], "products", 0, seed, {});
    r.details = {{"name", built.product.space.name},
                 {"combiner", to_string(built.product.combiner)},
                 {"dimension", built.product.space.dim},
                 {"factors", built.product.size()},
                 {"tau", built.product.space.tau.name()},
                 {"tau_star", built.product.space.tau_star.name()},
                 {"evidence", built.product.evidence}};
    if (built.product.sigma) r.details["sigma"] = *built.product.sigma;
    std::vector<VerificationReport> out{r};
    if (inv.verify) out.push_back(verify_axioms(built.product.space, trials, seed));
    return out;
  }
  if (inv.command == "theorem") {
    TheoremOptions opt;
    opt.trials = inv.trials;
    opt.seed = seed;
    opt.grid_n = inv.grid;
    if (a.at(0) == "all") {
      std::vector<VerificationReport> out;
      for (const auto& id : theorem_ids()) out.push_back(run_theorem(id, opt));
      return out;
    }
    if (!is_theorem_id(a[0])) throw ConfigError("unknown theorem id: " + a[0]);
    return {run_theorem(a[0], opt)};
  }
  if (inv.command == "topology") {
    const TopologyExperiment e = config.topology(a.at(0));
    const BuiltProduct built = config.product(e.product, seed);
    const auto& product = built.product;
    const std::vector<double> center = e.center.value_or(zero_center(product));
    if (center.size() != product.space.dim) throw ConfigError("topology " + e.name + ": center has wrong dimension");
    if (e.kind == "containment")
      return {tau_product_containment(product, center, e.epsilon, e.samples, e.budget, seed)};
    if (e.kind == "sigma-equivalence")
      return {sigma_topology_equivalence(product, center, e.epsilon, e.samples, e.budget, seed)};
    if (e.kind == "sigma-one-close") return {sigma_one_close_component(product, center, e.epsilon)};
    if (e.kind == "neighborhoods") return {check_neighborhood_properties(product.space, e.samples, seed)};
    throw ConfigError("topology " + e.name + ": unknown experiment kind " + e.kind);
  }
  throw ConfigError("unknown command: " + inv.command);
}

class Output {
 public:
  explicit Output(const std::optional<std::string>& path) {
    if (path) {
      file_.open(*path);
      if (!file_) throw ConfigError("cannot write " + *path);
    }
  }
  void line(const json& j) {
    const std::string s = j.dump();
    std::cout << s << '\n';
    if (file_.is_open()) file_ << s << '\n';
  }

 private:
  std::ofstream file_;
};

int run(const Invocation& inv, Output& out) {
  const auto reports = execute(inv);
  bool all_pass = true;
  for (const auto& r : reports) {
    json j = r.to_json();
    j["invocation"] = inv.to_json();
    out.line(j);
    all_pass = all_pass && r.passed();
  }
  return all_pass ? kExitPass : kExitFail;
}

/// Re-runs the invocation recorded in every failing report of `path` and
/// compares the recomputed witnesses.
int replay(const std::string& path, Output& out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  bool all = true;
  std::size_t replayed = 0;
  std::string text;
  while (std::getline(in, text)) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json recorded;
    try {
      recorded = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad report line: ") + e.what());
    }
    if (recorded.value("verdict", "") != "fail") continue;
    if (!recorded.contains("invocation")) throw ConfigError("report has no invocation record");
    const Invocation inv = Invocation::from_json(recorded["invocation"]);
    const auto reports = execute(inv);
    const std::string campaign = recorded.at("campaign").get<std::string>();
    bool reproduced = false;
    json witness;
    for (const auto& r : reports) {
      if (r.campaign != campaign) continue;
      const json j = r.to_json();
      witness = j.value("witness", json());
      reproduced = r.verdict == Verdict::fail && j.value("checks", json()) == recorded.value("checks", json());
    }
    out.line({{"replay", campaign}, {"reproduced", reproduced}, {"witness", witness}});
    all = all && reproduced;
    ++replayed;
  }
  if (replayed == 0) throw ConfigError("no failing report in " + path);
  return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic normed space verification campaigns"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  Invocation inv;
  std::optional<std::string> json_path, replay_path;
  std::optional<unsigned> threads;
  app.add_option("--config", inv.config, "Config file (default: $PNSPACE_CONFIG, then the builtin definitions)");
  app.add_option("--seed", inv.seed, "Campaign seed");
  app.add_option("--trials", inv.trials, "Trials per campaign")->check(CLI::PositiveNumber);
  app.add_option("--grid", inv.grid, "Grid resolution n")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  app.add_option("--json", json_path, "Also write the report lines to this file");
  app.add_option("--replay", replay_path, "Re-run the failing campaigns recorded in a report file");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> args;
  auto positional = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option(name, args, help)->required();
  };

  auto* tnorm = app.add_subcommand("check-tnorm", "T-norm axioms");
  positional(tnorm, "name", "M | Pi | W | TG:<ddf>:<alpha>");
  auto* dom = app.add_subcommand("check-dominance", "t1 >> t2");
  positional(dom, "names", "Two triangle functions, t-norms or t-conorms");
  dom->get_option("names")->expected(2);
  auto* sup = app.add_subcommand("check-superadditive", "Superadditivity of an m-function");
  positional(sup, "m", "pow:<g> | blowup:<b> | identity | sqrt");
  sup->add_option("--tau", inv.tau, "Check tau-superadditivity under this triangle function instead");
  auto* axioms = app.add_subcommand("verify-axioms", "N1-N4 for a configured space");
  positional(axioms, "space", "Space name");
  auto* build = app.add_subcommand("build-product", "Build a configured product");
  positional(build, "product", "Product name");
  build->add_flag("--verify", inv.verify, "Also run verify_axioms on the product");
  auto* theorem = app.add_subcommand("theorem", "Run a bundled campaign");
  positional(theorem, "id", "thm1..thm13 | lemma1..lemma4 | cor1 | cor2 | ex1..ex5 | all");
  auto* topo = app.add_subcommand("topology", "Run a configured topology experiment");
  positional(topo, "experiment", "Experiment name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  if (threads) set_worker_threads(*threads);

  try {
    Output out(json_path);
    if (replay_path) {
      if (!app.get_subcommands().empty()) throw ConfigError("--replay takes no subcommand");
      return replay(*replay_path, out);
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kExitUsage;
    }
    inv.command = app.get_subcommands().front()->get_name();
    inv.args = args;
    if (!inv.config) {
      // Record the file actually used so the invocation replays against it.
      inv.config = Config::resolve(std::nullopt).origin();
    }
    return run(inv, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error, out_of_range from malformed arguments
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
