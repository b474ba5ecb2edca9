#include "pnspace/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "pnspace/products.hpp"
#include "pnspace/topology.hpp"

namespace pnspace {

namespace {

class Bundle {
 public:
  Bundle(std::string id, const TheoremOptions& options) : id_(std::move(id)), options_(options) {}

  std::size_t trials(std::size_t fallback) const { return options_.trials.value_or(fallback); }
  std::uint64_t seed() { return options_.seed + next_seed_++; }
  Grid grid(std::size_t n, double x_max) const { return Grid{options_.grid_n.value_or(n), x_max}; }

  /// Records `r` and whether it landed on `expected`. `extra` adds a further
  /// condition on the report, described by `extra_label`.
  void expect(const std::string& label, const VerificationReport& r, Verdict expected,
              const std::function<bool(const VerificationReport&)>& extra = {},
              const std::string& extra_label = {}) {
    const bool verdict_ok = r.verdict == expected;
    const bool extra_ok = !extra || extra(r);
    CheckResult c;
    c.name = label + " [expect " + to_string(expected) + "]";
    c.trials = c.counted = r.trials;
    c.worst_violation = verdict_ok && extra_ok ? -1.0 : 1.0;
    c.verdict = verdict_ok && extra_ok ? Verdict::pass : Verdict::fail;
    if (c.verdict == Verdict::fail)
      c.witness = {{"got", to_string(r.verdict)}, {"condition", extra_ok ? "" : extra_label}};
    checks_.push_back(std::move(c));
    nlohmann::json entry{{"label", label}, {"expected", to_string(expected)}, {"report", r.to_json()}};
    if (extra) entry["condition"] = {{"what", extra_label}, {"holds", extra_ok}};
    reports_.push_back(std::move(entry));
  }

  /// A deterministic value check.
  void expect_value(const std::string& label, bool holds, nlohmann::json values) {
    CheckResult c;
    c.name = label;
    c.trials = c.counted = 1;
    c.worst_violation = holds ? -1.0 : 1.0;
    c.verdict = holds ? Verdict::pass : Verdict::fail;
    if (!holds) c.witness = values;
    checks_.push_back(std::move(c));
    reports_.push_back({{"label", label}, {"holds", holds}, {"values", std::move(values)}});
  }

  VerificationReport finish() {
    std::size_t total = 0;
    for (const auto& c : checks_) total += c.trials;
    auto r = make_report(id_, id_, total, options_.seed, std::move(checks_));
    r.details = {{"reports", std::move(reports_)}};
    return r;
  }

 private:
  std::string id_;
  TheoremOptions options_;
  std::uint64_t next_seed_ = 0;
  std::vector<CheckResult> checks_;
  nlohmann::json reports_ = nlohmann::json::array();
};

const AnalyticDdf kRatio = AnalyticDdf::ratio(1.0);

PNSpace simple_space(const std::string& name, const Norm& norm, std::size_t dim, const TriangleFunction& tau,
                     const TriangleFunction& tau_star, const Grid& grid,
                     SpaceClass declared = SpaceClass::pn) {
  return PNSpace{name, dim, simple(norm, kRatio), tau, tau_star, declared, std::nullopt, grid};
}

PNSpace exp_space(const std::string& name, std::size_t dim, const TriangleFunction& tau,
                  const TriangleFunction& tau_star, const Grid& grid) {
  return PNSpace{name, dim, exp_norm(Norm::l2()), tau, tau_star, SpaceClass::pn, std::nullopt, grid};
}

TriangleFunction tau_of(const TNorm& t) { return TriangleFunction::tau(t); }
TriangleFunction lift_of(const TNorm& t) { return TriangleFunction::lift(t); }

const TNorm kM = TNorm::minimum();
const TNorm kPi = TNorm::product();
const TNorm kW = TNorm::lukasiewicz();

std::vector<MbFunction> theorem1_functions() {
  return {MbFunction::power(2.0), MbFunction::power(3.0), MbFunction::blowup(1.0), MbFunction::identity(),
          MbFunction::sqrt()};
}

bool check_passed(const VerificationReport& r, const std::string& name) {
  const auto* c = r.find(name);
  return c && c->passed();
}

/// ex5 family: exp norms under (lift Pi, lift Pi), m_i = blowup(2^-i).
ProductSpace example5(Bundle& b, std::size_t k) {
  const Grid grid = b.grid(2048, 1.0);
  std::vector<PNSpace> fs(k, exp_space("exp-l2", 2, lift_of(kPi), lift_of(kPi), grid));
  std::vector<double> bs;
  std::vector<MbFunction> ms;
  for (std::size_t i = 0; i < k; ++i) {
    bs.push_back(std::ldexp(1.0, -static_cast<int>(i + 1)));
    ms.push_back(MbFunction::blowup(bs.back()));
  }
  return countable_product(fs, bs, ms, kPi, CountableMode::lift, 1000, b.seed());
}

ProductSpace sigma_of_simple(Bundle& b, std::size_t k) {
  const Grid grid = b.grid(256, 16.0);
  std::vector<PNSpace> fs(k, simple_space("simple-l2", Norm::l2(), 2, TriangleFunction::tau_m(), lift_of(kM), grid));
  return sigma_product(fs, 200, b.seed());
}

// ---------------------------------------------------------------------------

void thm1(Bundle& b) {
  const Grid grid = b.grid(256, 8.0);
  for (const auto& m : theorem1_functions()) {
    const Verdict want = m.name() == "sqrt" ? Verdict::fail : Verdict::pass;
    b.expect("superadditive " + m.name(), check_superadditive(m, b.trials(10000), b.seed()), want);
    for (const auto& t : {kM, kPi, kW}) {
      const auto r = check_tau_superadditive(m, tau_of(t), b.trials(300), b.seed(), grid);
      b.expect("tau_" + t.name() + "-superadditive " + m.name(), r, want,
               [](const VerificationReport& x) { return x.details.at("agrees_with_superadditive").get<bool>(); },
               "agrees with the plain superadditivity verdict");
    }
  }
}

void thm2(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const auto v1 = simple_space("simple-l2", Norm::l2(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto v2 = simple_space("simple-l1", Norm::l1(), 1, TriangleFunction::tau_m(), lift_of(kM), grid);
  for (const auto& tau1 : {TriangleFunction::tau_m(), lift_of(kM)}) {
    b.expect("tau* >> " + tau1.name(), check_dominance(v1.tau_star, tau1, b.trials(200), b.seed()), Verdict::pass);
    b.expect(tau1.name() + " >> tau", check_dominance(tau1, v1.tau, b.trials(200), b.seed()), Verdict::pass);
    const auto product = tau_product(v1, v2, tau1);
    b.expect(tau1.name() + "-product axioms", verify_axioms(product.space, b.trials(500), b.seed()), Verdict::pass);
  }
  b.expect("tau:W >> lift:M", check_dominance(tau_of(kW), lift_of(kM), b.trials(200), b.seed()), Verdict::fail);
}

void thm3(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const auto v1 = simple_space("simple-l2", Norm::l2(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto v2 = simple_space("simple-l1", Norm::l1(), 1, TriangleFunction::tau_m(), lift_of(kM), grid);
  for (const auto& tau1 : {TriangleFunction::tau_m(), lift_of(kM), tau_of(kW)}) {
    const auto product = tau_product(v1, v2, tau1);
    b.expect(tau1.name() + " pm coincidence", check_pm_coincidence(product, tau1, b.trials(1000), b.seed()),
             Verdict::pass);
  }
}

void thm4(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  b.expect("product identities l2 x l1",
           check_simple_product_identities(Norm::l2(), 2, Norm::l1(), 1, kRatio, b.trials(1000), b.seed(), grid),
           Verdict::pass);
  const Norm max_norm = Norm::max_combine(Norm::l2(), 2, Norm::l1());
  const auto combined =
      simple_space("simple-max", max_norm, 3, TriangleFunction::tau_m(), lift_of(kM), grid, SpaceClass::serstnev);
  b.expect("max-combined simple space is Serstnev", check_serstnev(combined, b.trials(1000), b.seed()), Verdict::pass);
  const auto v1 = simple_space("simple-l2", Norm::l2(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto v2 = simple_space("simple-l1", Norm::l1(), 1, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto product = tau_product(v1, v2, lift_of(kM));
  b.expect("lift:M-product axioms", verify_axioms(product.space, b.trials(500), b.seed()), Verdict::pass);
  b.expect("lift:M-product is Serstnev", check_serstnev(product.space, b.trials(500), b.seed()), Verdict::pass);
}

void thm5(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  b.expect("product identities l1 x linf",
           check_simple_product_identities(Norm::l1(), 2, Norm::linf(), 2, kRatio, b.trials(1000), b.seed(), grid),
           Verdict::pass);
  const auto v1 = simple_space("simple-l1", Norm::l1(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto v2 = simple_space("simple-linf", Norm::linf(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto product = tau_product(v1, v2, TriangleFunction::tau_m());
  b.expect("tau:M-product axioms", verify_axioms(product.space, b.trials(500), b.seed()), Verdict::pass);
  b.expect("tau:M-product is Serstnev", check_serstnev(product.space, b.trials(500), b.seed()), Verdict::pass);
}

void thm6(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const auto v1 = simple_space("simple-l2", Norm::l2(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  const auto v2 = simple_space("simple-l1", Norm::l1(), 1, TriangleFunction::tau_m(), lift_of(kM), grid);
  auto detail_is = [](const std::string& key, nlohmann::json value) {
    return [key, value](const VerificationReport& r) { return r.details.at(key) == value; };
  };
  b.expect("tau:M product", check_serstnev_product(v1, v2, TriangleFunction::tau_m(), b.trials(300), b.seed()),
           Verdict::pass, detail_is("consistent", true), "Serstnev verdict matches the dominance prediction");
  b.expect("tau:W product", check_serstnev_product(v1, v2, tau_of(kW), b.trials(300), b.seed()), Verdict::fail,
           detail_is("applicable", false), "hypothesis tau1 >> tau fails, so no prediction applies");
  // The lift(M)-product of simple spaces is Serstnev while tau_M >> lift(M)
  // fails: the "only if" direction does not hold space by space.
  b.expect("lift:M product", check_serstnev_product(v1, v2, lift_of(kM), b.trials(300), b.seed()), Verdict::fail,
           [](const VerificationReport& r) {
             return r.details.at("product_serstnev") == "pass" && r.details.at("tauM>>tau1") == "fail" &&
                    r.details.at("consistent") == false;
           },
           "product is Serstnev although tau_M >> lift:M fails");
}

void thm7(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  struct Case {
    TNorm t, t0;
    Verdict want;
  };
  for (const auto& c : {Case{kPi, kM, Verdict::pass}, Case{kW, kW, Verdict::pass}, Case{kM, kW, Verdict::fail}}) {
    const auto tau = tau_of(c.t);
    const auto tau_star = TriangleFunction::taustar(TConorm::dual_of(c.t));
    PNSpace v1 = simple_space("simple-l2", Norm::l2(), 2, tau, tau_star, grid, SpaceClass::menger);
    PNSpace v2 = simple_space("simple-l1", Norm::l1(), 1, tau, tau_star, grid, SpaceClass::menger);
    v1.menger_t = v2.menger_t = c.t;
    const auto r = check_menger_product(v1, v2, c.t, c.t0, b.trials(300), b.seed());
    if (c.want == Verdict::pass)
      b.expect("T0=" + c.t0.name() + ", T=" + c.t.name(), r, Verdict::pass);
    else
      b.expect("T0=" + c.t0.name() + ", T=" + c.t.name(), r, Verdict::fail,
               [](const VerificationReport& x) { return x.details.at("product") == "skipped: hypothesis unmet"; },
               "failed hypothesis skips the product campaign");
  }
}

void thm8(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const double alpha = 2.0;
  const TNorm tg = make_tg(kRatio, alpha, "ratio:1");
  const auto product = tg_product(Norm::l2(), 2, Norm::l2(), 2, kRatio, alpha, grid);
  b.expect("T_G product identity",
           check_tg_product_identity(product, Norm::l2(), Norm::l2(), kRatio, alpha, b.trials(1000), b.seed()),
           Verdict::pass);

  const Vector p{3.0, 0.0, 4.0, 0.0};
  const Norm beta_norm = Norm::lbeta(alpha / (alpha - 1.0), Norm::l2(), 2, Norm::l2());
  nlohmann::json chain{{"norm_beta", beta_norm(p)}};
  bool ok = std::abs(beta_norm(p) - 5.0) <= 1e-12;
  for (double t : {1.0, 9.0, 25.0, 100.0}) {
    const double lhs = tg(kRatio(t / 9.0), kRatio(t / 16.0));
    const double rhs = kRatio(t / 25.0);
    chain[std::to_string(static_cast<int>(t))] = {lhs, rhs};
    ok = ok && std::abs(lhs - rhs) <= 1e-9 && std::abs(product.space.value_at(p, t) - rhs) <= 1e-9;
  }
  b.expect_value("|p1|=3, |p2|=4 gives |p|_beta=5 and G(t/25)", ok, chain);

  PNSpace menger = product.space;
  menger.tau = tau_of(tg);
  menger.tau_star = lift_of(tg);
  b.expect("T_G product axioms under tau(T_G)", verify_axioms(menger, b.trials(300), b.seed()), Verdict::pass);
  b.expect("beta=2 combination is a norm", check_norm_axioms(beta_norm, 4, b.trials(1000), b.seed()), Verdict::pass);
  b.expect("beta=1/2 combination is a norm",
           check_norm_axioms(Norm::lbeta(0.5, Norm::l2(), 2, Norm::l2()), 4, b.trials(1000), b.seed()), Verdict::fail);

  const PNSpace single{"alpha2", 2, alpha_simple(Norm::l2(), kRatio, alpha), tau_of(tg), lift_of(tg),
                       SpaceClass::menger, tg, grid};
  b.expect("alpha-simple under tau(T_G)", verify_axioms(single, b.trials(1000), b.seed()), Verdict::pass);
  b.expect("Menger condition for T_G",
           menger_alpha_condition(Norm::l2(), 2, kRatio, alpha, *tg.generator(), b.trials(1000), b.seed()),
           Verdict::pass);
  PNSpace under_m = single;
  under_m.tau = TriangleFunction::tau_m();
  under_m.tau_star = lift_of(kM);
  b.expect("alpha-simple under tau(M)", verify_axioms(under_m, b.trials(1000), b.seed()), Verdict::fail,
           [](const VerificationReport& r) { return !check_passed(r, "N3"); }, "N3 fails");
  const Vector e1{1.0, 0.0};
  const auto probe = probe_n3(under_m, e1, e1, 1.0);
  b.expect_value("N3 witness p=q=(1,0), t=1: 0.2 < 1/3",
                 std::abs(probe.nu_sum - 0.2) <= 1e-9 && std::abs(probe.tau_value - 1.0 / 3.0) <= 1e-9,
                 {{"nu_2p(1)", probe.nu_sum}, {"tauM(nu_p,nu_p)(1)", probe.tau_value}});
}

void thm9(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const auto base = exp_space("exp-l2", 2, tau_of(kPi), lift_of(kPi), grid);
  b.expect("base exp space", verify_axioms(base, b.trials(300), b.seed()), Verdict::pass);
  for (const auto& m : {MbFunction::power(2.0), MbFunction::blowup(1.0)}) {
    PNSpace s = base;
    s.name = "exp-l2 o " + m.name();
    s.nu = transformed(base.nu, m);
    b.expect(s.name, verify_axioms(s, b.trials(300), b.seed()), Verdict::pass);
  }
  const auto simple_m = simple_space("simple-l2", Norm::l2(), 2, TriangleFunction::tau_m(), lift_of(kM), grid);
  for (const auto& m : {MbFunction::power(2.0), MbFunction::sqrt()}) {
    PNSpace s = simple_m;
    s.name = "simple-l2 o " + m.name();
    s.nu = transformed(simple_m.nu, m);
    const Verdict want = m.name() == "sqrt" ? Verdict::fail : Verdict::pass;
    if (want == Verdict::pass)
      b.expect(s.name, verify_axioms(s, b.trials(300), b.seed()), want);
    else
      b.expect(s.name, verify_axioms(s, b.trials(300), b.seed()), want,
               [](const VerificationReport& r) { return !check_passed(r, "N3"); }, "N3 fails");
  }
}

void thm10(Bundle& b) {
  const auto product = example5(b, 10);
  b.expect("lift:Pi product of 10 transformed factors", verify_axioms(product.space, b.trials(300), b.seed()),
           Verdict::pass);
  // Truncation is monotone: one more factor can only lower G.
  const auto shorter = example5(b, 5), longer = example5(b, 6);
  Campaign c;
  c.checks = {"monotone-truncation"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    const auto s = sample_vectors(rng, longer.space.dim, trial);
    const Vector head(s.p.begin(), s.p.begin() + static_cast<std::ptrdiff_t>(shorter.space.dim));
    double x = 0.0;
    const double v = excess_over(longer.space.at(s.p), shorter.space.at(head), 0, kClosedFormTol, &x);
    return std::vector<TrialOutcome>{{v, nlohmann::json{{"p", s.p}, {"x", x}}}};
  };
  const std::size_t n = b.trials(300);
  const std::uint64_t seed = b.seed();
  b.expect("K+1 factors below K factors", make_report("monotone-truncation", "thm10", n, seed, c.run(n, seed)),
           Verdict::pass);
}

void thm11(Bundle& b) {
  const auto product = sigma_of_simple(b, 20);
  b.expect("Sigma-product K=20 under (tau:W, liftstar:W)", verify_axioms(product.space, b.trials(1000), b.seed()),
           Verdict::pass);
}

void thm12(Bundle& b) {
  const auto product = example5(b, 10);
  const Vector center(product.space.dim, 0.0);
  b.expect("N_p(eps) inside the product of N_pi(eps)",
           tau_product_containment(product, center, 0.05, 10000, 100000, b.seed()), Verdict::pass);
}

void thm13(Bundle& b) {
  const auto product = sigma_of_simple(b, 20);
  const Vector center(product.space.dim, 0.0);
  b.expect("Sigma-product K=20: both containments",
           sigma_topology_equivalence(product, center, 0.1, 10000, 100000, b.seed()), Verdict::pass);
  const auto single = sigma_of_simple(b, 1);
  b.expect("Sigma-product K=1: both containments",
           sigma_topology_equivalence(single, Vector(single.space.dim, 0.0), 0.1, 10000, 100000, b.seed()),
           Verdict::pass);
  b.expect("member with only one close component", sigma_one_close_component(product, center, 0.6), Verdict::pass);
  b.expect("strong neighborhoods: interior and separation",
           check_neighborhood_properties(product.space, b.trials(1000), b.seed()), Verdict::pass);
}

void lemma1(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  for (const auto& t : {kM, kPi, kW})
    b.expect("tau_" + t.name() + "(eps_s, eps_t) = eps_{s+t}", check_step_identity(tau_of(t), b.trials(500), b.seed(), grid),
             Verdict::pass);
  const Grid small = b.grid(256, 8.0);
  for (const auto& m : theorem1_functions()) {
    const auto r = check_tau_superadditive(m, tau_of(kW), b.trials(300), b.seed(), small);
    const Verdict want = m.name() == "sqrt" ? Verdict::fail : Verdict::pass;
    b.expect("tau_W-superadditive implies superadditive: " + m.name(), r, want,
             [](const VerificationReport& x) {
               return x.verdict != Verdict::pass || x.details.at("superadditive") == "pass";
             },
             "tau-superadditive only when superadditive");
  }
}

void lemma23(Bundle& b, const std::string& which) {
  const auto r = lemma2_lemma3_check(b.trials(100000), 16, b.seed());
  b.expect(which == "lemma2" ? "W dyadic inequality" : "W* dyadic inequality", r, Verdict::pass,
           [which](const VerificationReport& x) { return check_passed(x, which); }, which + " holds");
}

void lemma4(Bundle& b) {
  const auto product = example5(b, 10);
  b.expect("G_p(x) = 1 beyond sigma", check_lemma4(product, b.trials(1000), b.seed()), Verdict::pass);

  const Grid grid = b.grid(2048, 1.0);
  const std::size_t k = 10;
  double sigma = 0.0;
  std::vector<Ddf> steps;
  for (std::size_t i = 0; i < k; ++i) {
    const double bi = std::ldexp(1.0, -static_cast<int>(i + 1));
    sigma += bi;
    steps.push_back(make_eps(bi, grid));
  }
  IterateOptions opt;
  opt.n_max = k - 1;
  opt.stop_early = false;
  opt.tail_sum = sigma;
  const auto res = infinite_iterate(tau_of(kW), [&](std::size_t i) { return steps[i]; }, opt);
  const Ddf target = make_eps(sigma, grid);
  bool monotone = true;
  Ddf partial = steps[0];
  for (std::size_t i = 1; i < k; ++i) {
    Ddf next = tau_of(kW)(partial, steps[i]);
    monotone = monotone && le(next, partial);
    partial = std::move(next);
  }
  b.expect_value("tau_W of eps_{2^-i}, i<=10: equals eps_sigma, bound certified, partial products decrease",
                 res.ddf == target && res.certificate.lower_bound_holds.value_or(false) && monotone,
                 {{"sigma", sigma}, {"certificate", res.certificate.to_json()}, {"monotone", monotone},
                  {"distance_to_eps_sigma", sup_distance(res.ddf, target)}});
}

void cor1(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  for (const auto& t : {kM, kPi, kW}) {
    const auto v1 = simple_space("simple-l2", Norm::l2(), 2, tau_of(t), lift_of(kM), grid, SpaceClass::serstnev);
    const auto v2 = simple_space("simple-l1", Norm::l1(), 1, tau_of(t), lift_of(kM), grid, SpaceClass::serstnev);
    b.expect("tau:M >> tau_" + t.name(), check_dominance(TriangleFunction::tau_m(), tau_of(t), b.trials(200), b.seed()),
             Verdict::pass);
    auto product = tau_product(v1, v2, TriangleFunction::tau_m());
    product.space.declared = SpaceClass::menger;
    product.space.menger_t = t;
    b.expect("tau:M-product Menger under " + t.name(), verify_axioms(product.space, b.trials(300), b.seed()),
             Verdict::pass);
    b.expect("tau:M-product Serstnev (factors tau_" + t.name() + ")", check_serstnev(product.space, b.trials(300), b.seed()),
             Verdict::pass);
  }
}

void cor2(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  for (const auto& t1 : {kW, kPi}) {
    const auto base = simple_space("simple-l2", Norm::l2(), 2, tau_of(t1), TriangleFunction::tau_m(), grid);
    b.expect("base under (tau_" + t1.name() + ", tau_M)", verify_axioms(base, b.trials(300), b.seed()), Verdict::pass);
    PNSpace s = base;
    s.name = "simple-l2 o pow:2";
    s.nu = transformed(base.nu, MbFunction::power(2.0));
    s.tau_star = lift_of(kM);
    b.expect("m-transform under (tau_" + t1.name() + ", lift:M)", verify_axioms(s, b.trials(300), b.seed()),
             Verdict::pass);
  }
}

void ex1(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const auto v1 = simple_space("simple-l2", Norm::l2(), 2, tau_of(kPi), lift_of(kM), grid);
  const auto v2 = simple_space("simple-l1", Norm::l1(), 1, tau_of(kPi), lift_of(kM), grid);
  b.expect("lift:M >> lift:Pi", check_dominance(lift_of(kM), lift_of(kPi), b.trials(200), b.seed()), Verdict::pass);
  b.expect("lift:Pi >> tau:Pi", check_dominance(lift_of(kPi), tau_of(kPi), b.trials(200), b.seed()), Verdict::pass);
  const auto product = tau_product(v1, v2, lift_of(kPi));
  b.expect("lift:Pi-product under (tau:Pi, lift:M)", verify_axioms(product.space, b.trials(500), b.seed()),
           Verdict::pass);
}

void ex2(Bundle& b) {
  const Grid grid = b.grid(256, 16.0);
  const Ddf f = AnalyticDdf::ratio(1.0).sample(grid);
  const Ddf g = AnalyticDdf::exp_complement(2.0).sample(grid);
  const auto lift_m = lift_of(kM);
  const PNSpace ef{"equilateral(F)", 2, equilateral(f), lift_m, lift_m, SpaceClass::pn, std::nullopt, grid};
  b.expect("equilateral space under lift:M", verify_axioms(ef, b.trials(300), b.seed()), Verdict::pass);
  const PNSpace eg{"equilateral(G)", 2, equilateral(g), lift_m, lift_m, SpaceClass::pn, std::nullopt, grid};
  b.expect("lift:M-product of equilateral spaces", verify_axioms(tau_product(ef, eg, lift_m).space, b.trials(300), b.seed()),
           Verdict::pass);
  // With F != G the product equals M(F,G) only off the axes.
  b.expect("F != G", check_equilateral_product(f, g, 2, b.trials(300), b.seed()), Verdict::fail,
           [](const VerificationReport& r) {
             return check_passed(r, "nonzero-components") && check_passed(r, "one-theta-component") &&
                    !check_passed(r, "equilateral-M(F,G)");
           },
           "M(F,G) off the axes, F or G on them");
  b.expect("F = G", check_equilateral_product(f, f, 2, b.trials(300), b.seed()), Verdict::pass);
}

void ex3(Bundle& b) {
  const TNorm tg = make_tg(kRatio, 2.0, "ratio:1");
  const auto as_op = [](const TNorm& t) { return [t](double x, double y) { return t(x, y); }; };
  const auto as_conorm = [](const TConorm& s) { return [s](double x, double y) { return s(x, y); }; };
  const TConorm m_star = TConorm::maximum();
  for (const auto& t : {kM, kPi, kW, tg}) {
    b.expect("M >> " + t.name(), check_number_dominance("M", as_op(kM), t.name(), as_op(t), b.trials(10000), b.seed()),
             Verdict::pass);
    const TConorm ts = TConorm::dual_of(t);
    b.expect(ts.name() + " >> M*",
             check_number_dominance(ts.name(), as_conorm(ts), "M*", as_conorm(m_star), b.trials(10000), b.seed()),
             Verdict::pass);
  }
  b.expect("W >> M", check_number_dominance("W", as_op(kW), "M", as_op(kM), b.trials(10000), b.seed()),
           Verdict::fail);
}

void ex4(Bundle& b) {
  const Grid grid = b.grid(256, 2.0);
  const auto f = exp_space("exp-l2", 2, tau_of(kPi), lift_of(kPi), grid);
  const auto product = countable_product({f, f}, {0.5, 0.25}, {MbFunction::blowup(0.5), MbFunction::blowup(0.25)}, kPi,
                                         CountableMode::tau, 1000, b.seed());
  b.expect("lift:Pi >> tau:Pi", check_dominance(lift_of(kPi), tau_of(kPi), b.trials(200), b.seed()), Verdict::pass);
  b.expect("tau:Pi combination of two transformed factors", verify_axioms(product.space, b.trials(300), b.seed()),
           Verdict::pass);
}

void ex5(Bundle& b) {
  const Grid grid = b.grid(2048, 1.0);
  b.expect("exp norm under (lift:Pi, lift:Pi)",
           verify_axioms(exp_space("exp-l2", 2, lift_of(kPi), lift_of(kPi), grid), b.trials(300), b.seed()),
           Verdict::pass);
  const auto product = example5(b, 10);
  for (std::size_t i = 0; i < product.size(); ++i)
    b.expect("transformed factor " + std::to_string(i + 1), verify_axioms(product.factors[i], b.trials(100), b.seed()),
             Verdict::pass);
  b.expect("lift:Pi product, K=10", verify_axioms(product.space, b.trials(300), b.seed()), Verdict::pass);
  b.expect("lemma4 tail bound", check_lemma4(product, b.trials(1000), b.seed()), Verdict::pass);
}

using BundleFn = std::function<void(Bundle&)>;

const std::vector<std::pair<std::string, BundleFn>>& registry() {
  static const std::vector<std::pair<std::string, BundleFn>> r{
      {"thm1", thm1},
      {"thm2", thm2},
      {"thm3", thm3},
      {"thm4", thm4},
      {"thm5", thm5},
      {"thm6", thm6},
      {"thm7", thm7},
      {"thm8", thm8},
      {"thm9", thm9},
      {"thm10", thm10},
      {"thm11", thm11},
      {"thm12", thm12},
      {"thm13", thm13},
      {"lemma1", lemma1},
      {"lemma2", [](Bundle& b) { lemma23(b, "lemma2"); }},
      {"lemma3", [](Bundle& b) { lemma23(b, "lemma3"); }},
      {"lemma4", lemma4},
      {"cor1", cor1},
      {"cor2", cor2},
      {"ex1", ex1},
      {"ex2", ex2},
      {"ex3", ex3},
      {"ex4", ex4},
      {"ex5", ex5},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

bool is_theorem_id(const std::string& id) {
  const auto& ids = theorem_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

VerificationReport run_theorem(const std::string& id, const TheoremOptions& options) {
  for (const auto& [name, fn] : registry()) {
    if (name != id) continue;
    Bundle b(id, options);
    fn(b);
    return b.finish();
  }
  throw std::invalid_argument("unknown theorem id: " + id);
}

}  // namespace pnspace
