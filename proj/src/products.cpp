#include "pnspace/products.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pnspace/sampling.hpp"

namespace pnspace {

namespace {

double worst_abs_diff(const Ddf& a, const Ddf& b) {
  const auto [x, y] = align(a, b);
  double d = std::max(std::abs(x.tail() - y.tail()), std::abs(x.at_infinity() - y.at_infinity()));
  for (std::size_t k = 0; k < x.values().size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
  return d;
}

double two_sided_excess(const Ddf& a, const Ddf& b, std::size_t cells, double vtol, double* where) {
  double xa = 0.0, xb = 0.0;
  const double ea = excess_over(a, b, cells, vtol, &xa);
  const double eb = excess_over(b, a, cells, vtol, &xb);
  if (where) *where = ea >= eb ? xa : xb;
  return std::max(ea, eb);
}

std::vector<std::size_t> offsets_of(const std::vector<PNSpace>& factors) {
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (const auto& f : factors) {
    off.push_back(acc);
    acc += f.dim;
  }
  return off;
}

std::size_t total_dim(const std::vector<PNSpace>& factors) {
  std::size_t d = 0;
  for (const auto& f : factors) d += f.dim;
  return d;
}

void require_common_grid(const std::vector<PNSpace>& factors) {
  for (const auto& f : factors)
    if (!(f.grid == factors.front().grid)) throw std::invalid_argument("product factors must share one grid");
}

class CombinedNorm final : public ProbNorm {
 public:
  enum class Mode { fold, iterate, sigma };

  CombinedNorm(std::vector<PNSpace> factors, Mode mode, std::optional<TriangleFunction> tri,
               std::optional<double> sigma, std::string name)
      : factors_(std::move(factors)),
        offsets_(offsets_of(factors_)),
        mode_(mode),
        tri_(std::move(tri)),
        sigma_(sigma),
        name_(std::move(name)) {}

  std::string name() const override { return name_; }

  Ddf eval(std::span<const double> p, const Grid& grid) const override {
    if (mode_ == Mode::iterate) return iterate(p, grid).ddf;
    const auto parts = factor_values(p, grid);
    if (mode_ == Mode::fold) return serial_iterate(*tri_, parts);
    std::vector<double> w;
    std::vector<Ddf> fs = parts;
    for (std::size_t i = 0; i < parts.size(); ++i) w.push_back(std::ldexp(1.0, -static_cast<int>(i + 1)));
    w.push_back(std::ldexp(1.0, -static_cast<int>(parts.size())));
    fs.push_back(make_eps(0.0, grid));
    return mixture(w, fs, grid).ddf;
  }

  double value_at(std::span<const double> p, double t, const Grid& grid) const override {
    if (mode_ == Mode::sigma) {
      double v = 0.0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        v += std::ldexp(factors_[i].nu->value_at(component(p, i), t, grid), -static_cast<int>(i + 1));
      return v + (t > 0.0 ? std::ldexp(1.0, -static_cast<int>(factors_.size())) : 0.0);
    }
    if (tri_->kind() == TriangleFunction::Kind::lift) {
      const TNorm& t_norm = *tri_->tnorm();
      double v = factors_[0].nu->value_at(component(p, 0), t, grid);
      for (std::size_t i = 1; i < factors_.size(); ++i)
        v = t_norm(v, factors_[i].nu->value_at(component(p, i), t, grid));
      return v;
    }
    return eval(p, grid)(t);
  }

  std::size_t margin_cells() const override {
    std::size_t widest = 0, total = 0;
    for (const auto& f : factors_) {
      widest = std::max(widest, f.nu->margin_cells());
      total += f.nu->margin_cells();
    }
    if (mode_ == Mode::sigma || tri_->cell_slack() == 0) return widest;
    return total + (factors_.size() - 1) * tri_->cell_slack();
  }

  IterateResult iterate(std::span<const double> p, const Grid& grid) const {
    const auto parts = factor_values(p, grid);
    if (parts.size() == 1) {
      IterateResult r{parts.front(), {}};
      r.certificate.converged = true;
      return r;
    }
    IterateOptions opt;
    opt.n_max = parts.size() - 1;
    opt.stop_early = false;
    opt.tail_sum = sigma_;
    return infinite_iterate(*tri_, [&](std::size_t i) { return parts[i]; }, opt);
  }

 private:
  std::span<const double> component(std::span<const double> p, std::size_t i) const {
    return p.subspan(offsets_[i], factors_[i].dim);
  }

  std::vector<Ddf> factor_values(std::span<const double> p, const Grid& grid) const {
    if (p.size() != offsets_.back() + factors_.back().dim)
      throw std::invalid_argument("product vector has the wrong dimension");
    std::vector<Ddf> parts;
    parts.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(factors_[i].nu->eval(component(p, i), grid));
    return parts;
  }

  std::vector<PNSpace> factors_;
  std::vector<std::size_t> offsets_;
  Mode mode_;
  std::optional<TriangleFunction> tri_;
  std::optional<double> sigma_;
  std::string name_;
};

std::vector<Vector> sample_components(Rng& rng, const std::vector<std::size_t>& dims) {
  std::vector<Vector> parts;
  for (auto d : dims) parts.push_back(sample_vector(rng, d));
  return parts;
}

}  // namespace

std::string to_string(Combiner c) {
  switch (c) {
    case Combiner::tau1: return "tau1";
    case Combiner::sigma: return "sigma";
    case Combiner::countable_lift: return "countable-lift";
    case Combiner::countable_tau: return "countable-tau";
  }
  return "tau1";
}

std::span<const double> ProductSpace::component(std::span<const double> p, std::size_t i) const {
  return p.subspan(offsets.at(i), factors.at(i).dim);
}

Vector ProductSpace::concat(const std::vector<Vector>& parts) const {
  if (parts.size() != factors.size()) throw std::invalid_argument("concat: wrong number of components");
  Vector v;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].size() != factors[i].dim) throw std::invalid_argument("concat: component has the wrong dimension");
    v.insert(v.end(), parts[i].begin(), parts[i].end());
  }
  return v;
}

ProductSpace tau_product(const PNSpace& v1, const PNSpace& v2, const TriangleFunction& tau1,
                         std::size_t certificate_trials, std::uint64_t seed) {
  if (v1.tau.name() != v2.tau.name() || v1.tau_star.name() != v2.tau_star.name())
    throw std::invalid_argument("tau-product: factors must share (tau, tau*)");
  if (!(v1.grid == v2.grid)) throw std::invalid_argument("tau-product: factors must share one grid");
  std::vector<PNSpace> factors{v1, v2};
  const std::string name = v1.name + "*" + v2.name + "[" + tau1.name() + "]";
  auto nu = std::make_shared<CombinedNorm>(factors, CombinedNorm::Mode::fold, tau1, std::nullopt, name);
  ProductSpace p{PNSpace{name, v1.dim + v2.dim, nu, v1.tau, v1.tau_star, SpaceClass::pn, std::nullopt, v1.grid,
                         std::max(v1.vtol, v2.vtol)},
                 factors, Combiner::tau1, offsets_of(factors)};
  if (certificate_trials > 0) {
    const auto a = check_dominance(v1.tau_star, tau1, certificate_trials, seed);
    const auto b = check_dominance(tau1, v1.tau, certificate_trials, seed);
    p.evidence = {{a.campaign, to_string(a.verdict)}, {b.campaign, to_string(b.verdict)}};
  }
  return p;
}

VerificationReport check_simple_product_identities(const Norm& norm1, std::size_t dim1, const Norm& norm2,
                                                   std::size_t dim2, const AnalyticDdf& g, std::size_t trials,
                                                   std::uint64_t seed, const Grid& grid) {
  const auto nu1 = simple(norm1, g), nu2 = simple(norm2, g);
  const auto nu_max = simple(Norm::max_combine(norm1, dim1, norm2), g);
  const auto nu_sum = simple(Norm::sum_combine(norm1, dim1, norm2), g);
  const auto m = TNorm::minimum();
  Campaign c;
  c.checks = {"max-combine", "sum-combine"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    Vector p1 = sample_vector(rng, dim1), p2 = sample_vector(rng, dim2);
    if (trial % 4 == 0) std::fill(p1.begin(), p1.end(), 0.0);
    if (trial % 4 == 1) std::fill(p2.begin(), p2.end(), 0.0);
    Vector p = p1;
    p.insert(p.end(), p2.begin(), p2.end());
    const Ddf a = nu1->eval(p1, grid), b = nu2->eval(p2, grid);
    double x1 = 0.0, x2 = 0.0;
    const double v1 = two_sided_excess(lift(m, a, b), nu_max->eval(p, grid), 1, kClosedFormTol, &x1);
    const double v2 = two_sided_excess(sup_convolve(m, a, b), nu_sum->eval(p, grid), 1, kClosedFormTol, &x2);
    return std::vector<TrialOutcome>{{v1, nlohmann::json{{"p1", p1}, {"p2", p2}, {"x", x1}}},
                                     {v2, nlohmann::json{{"p1", p1}, {"p2", p2}, {"x", x2}}}};
  };
  auto r = make_report("simple-product-identities", "thm4,thm5", trials, seed, c.run(trials, seed));
  r.details = {{"norm1", norm1.name()}, {"norm2", norm2.name()}, {"G", g.name()}, {"grid_n", grid.n}};
  return r;
}

VerificationReport check_serstnev_product(const PNSpace& v1, const PNSpace& v2, const TriangleFunction& tau1,
                                          std::size_t trials, std::uint64_t seed, std::size_t dominance_trials) {
  const auto product = tau_product(v1, v2, tau1);
  const auto tau_m = TriangleFunction::tau_m();
  const auto serstnev = check_serstnev(product.space, trials, seed);
  const auto forward = check_dominance(tau1, tau_m, dominance_trials, seed);
  const auto backward = check_dominance(tau_m, tau1, dominance_trials, seed);
  const bool same_tau = v1.tau.name() == tau_m.name();
  const auto hypothesis = same_tau ? forward : check_dominance(tau1, v1.tau, dominance_trials, seed);

  std::vector<CheckResult> checks;
  for (auto c : serstnev.checks) {
    c.name = "product:" + c.name;
    checks.push_back(std::move(c));
  }
  checks.push_back(forward.checks.front());
  checks.push_back(backward.checks.front());
  if (!same_tau) checks.push_back(hypothesis.checks.front());

  auto r = make_report("serstnev-product:" + tau1.name(), "thm6", trials, seed, std::move(checks));
  const bool predicted = forward.passed() && backward.passed();
  const bool applicable = hypothesis.passed();
  r.details = {{"tau1", tau1.name()},
               {"factor_tau", v1.tau.name()},
               {"product_serstnev", to_string(serstnev.verdict)},
               {"tau1>>tauM", to_string(forward.verdict)},
               {"tauM>>tau1", to_string(backward.verdict)},
               {"hypothesis tau1>>tau", to_string(hypothesis.verdict)},
               {"applicable", applicable},
               {"dominance_trials", dominance_trials}};
  if (applicable)
    r.details["consistent"] = serstnev.passed() == predicted;
  else
    r.details["consistent"] = "not-applicable";
  return r;
}

VerificationReport check_menger_product(const PNSpace& v1, const PNSpace& v2, const TNorm& t, const TNorm& t0,
                                        std::size_t trials, std::uint64_t seed) {
  const auto ts = TConorm::dual_of(t), t0s = TConorm::dual_of(t0);
  const auto h1 = check_number_dominance(t0.name(), [&](double x, double y) { return t0(x, y); }, t.name(),
                                         [&](double x, double y) { return t(x, y); }, trials, seed);
  const auto h2 = check_number_dominance(ts.name(), [&](double x, double y) { return ts(x, y); }, t0s.name(),
                                         [&](double x, double y) { return t0s(x, y); }, trials, seed);
  std::vector<CheckResult> checks{h1.checks.front(), h2.checks.front()};
  nlohmann::json details{{"T", t.name()}, {"T0", t0.name()}};
  if (h1.passed() && h2.passed()) {
    const auto product = tau_product(v1, v2, TriangleFunction::tau(t0));
    auto space = product.space;
    space.tau = TriangleFunction::tau(t);
    space.tau_star = TriangleFunction::taustar(ts);
    const auto axioms = verify_axioms(space, trials, seed);
    for (auto c : axioms.checks) {
      c.name = "product:" + c.name;
      checks.push_back(std::move(c));
    }
    details["product"] = to_string(axioms.verdict);
  } else {
    details["product"] = "skipped: hypothesis unmet";
  }
  auto r = make_report("menger-product:" + t0.name() + ":" + t.name(), "thm7", trials, seed, std::move(checks));
  r.details = std::move(details);
  return r;
}

ProductSpace tg_product(const Norm& norm1, std::size_t dim1, const Norm& norm2, std::size_t dim2,
                        const AnalyticDdf& g, double alpha, const Grid& grid) {
  if (!(alpha > 1.0)) throw std::domain_error("T_G product needs alpha > 1");
  const TNorm tg = make_tg(g, alpha);
  auto factor = [&](const Norm& n, std::size_t d, const std::string& name) {
    return PNSpace{name, d, alpha_simple(n, g, alpha), TriangleFunction::tau(tg), TriangleFunction::lift(tg),
                   SpaceClass::menger, tg, grid};
  };
  auto p = tau_product(factor(norm1, dim1, "V1"), factor(norm2, dim2, "V2"), TriangleFunction::lift(tg));
  p.space.declared = SpaceClass::menger;
  p.space.menger_t = tg;
  p.evidence = {{"beta", alpha / (alpha - 1.0)}};
  return p;
}

VerificationReport check_tg_product_identity(const ProductSpace& product, const Norm& norm1, const Norm& norm2,
                                             const AnalyticDdf& g, double alpha, std::size_t trials,
                                             std::uint64_t seed) {
  const double beta = alpha / (alpha - 1.0);
  const std::size_t d1 = product.factors.at(0).dim, d2 = product.factors.at(1).dim;
  const Norm beta_norm = Norm::lbeta(beta, norm1, d1, norm2);
  const auto target = alpha_simple(beta_norm, g, alpha);
  const TNorm tg = make_tg(g, alpha);
  const Grid& grid = product.space.grid;
  auto g_at = [&](double t, double s) { return s == 0.0 ? 1.0 : g(t / s); };

  Campaign c;
  c.checks = {"pointwise", "grid"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    Vector p1 = sample_vector(rng, d1), p2 = sample_vector(rng, d2);
    if (trial % 5 == 1) std::fill(p2.begin(), p2.end(), 0.0);
    if (trial % 5 == 2) std::fill(p1.begin(), p1.end(), 0.0);
    const double t = log_uniform(rng, 1e-2, 1e2);
    Vector p = p1;
    p.insert(p.end(), p2.begin(), p2.end());
    const double a = std::pow(norm1(p1), alpha), b = std::pow(norm2(p2), alpha);
    const double lhs = tg(g_at(t, a), g_at(t, b));
    const double rhs = g_at(t, std::pow(beta_norm(p), alpha));
    const double grid_gap = worst_abs_diff(product.space.at(p), target->eval(p, grid));
    return std::vector<TrialOutcome>{
        {std::abs(lhs - rhs) - kClosedFormTol, nlohmann::json{{"p1", p1}, {"p2", p2}, {"t", t}, {"lhs", lhs}, {"rhs", rhs}}},
        {grid_gap - kClosedFormTol, nlohmann::json{{"p1", p1}, {"p2", p2}}}};
  };
  auto r = make_report("tg-product-identity", "thm8", trials, seed, c.run(trials, seed));
  r.details = {{"alpha", alpha}, {"beta", beta}, {"G", g.name()}};
  return r;
}

ProductSpace countable_product(const std::vector<PNSpace>& factors, const std::vector<double>& b,
                               const std::vector<MbFunction>& m, const TNorm& t, CountableMode mode,
                               std::size_t superadditive_trials, std::uint64_t seed) {
  const std::size_t k = factors.size();
  if (k == 0) throw std::invalid_argument("countable product: no factors");
  if (b.size() != k || m.size() != k) throw std::invalid_argument("countable product: K, b and m lengths differ");
  require_common_grid(factors);

  nlohmann::json evidence = nlohmann::json::object();
  double sigma = 0.0;
  std::vector<PNSpace> transformed_factors;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string label = "m_" + std::to_string(i + 1) + " (" + m[i].name() + ")";
    if (!(b[i] > 0.0) || m[i].b() != b[i])
      throw std::invalid_argument("countable product: b_" + std::to_string(i + 1) + " does not match " + label);
    const auto sa = check_superadditive(m[i], superadditive_trials, seed + i);
    if (!sa.passed()) throw std::invalid_argument("countable product: " + label + " is not superadditive");
    evidence["superadditive"][m[i].name()] = to_string(sa.verdict);
    sigma += b[i];
    const auto& f = factors[i];
    transformed_factors.push_back(PNSpace{f.name + "o" + m[i].name(), f.dim, transformed(f.nu, m[i]), f.tau,
                                          f.tau_star, f.declared, f.menger_t, f.grid, f.vtol});
  }
  if (!std::isfinite(sigma)) throw std::invalid_argument("countable product: sum of b_i diverges");

  const auto tri = mode == CountableMode::lift ? TriangleFunction::lift(t) : TriangleFunction::tau(t);
  const std::string name = (mode == CountableMode::lift ? "lift-product:" : "tau-product:") + t.name() + "[" +
                           std::to_string(k) + "]";
  auto nu = std::make_shared<CombinedNorm>(transformed_factors, CombinedNorm::Mode::iterate, tri, sigma, name);
  const auto& grid = factors.front().grid;
  PNSpace space{name,
                total_dim(factors),
                nu,
                mode == CountableMode::lift ? TriangleFunction::lift(t) : TriangleFunction::tau(t),
                TriangleFunction::lift(t),
                SpaceClass::pn,
                std::nullopt,
                grid,
                factors.front().vtol};
  ProductSpace p{std::move(space), transformed_factors,
                 mode == CountableMode::lift ? Combiner::countable_lift : Combiner::countable_tau,
                 offsets_of(transformed_factors)};
  p.sigma = sigma;
  evidence["sigma"] = sigma;
  p.evidence = std::move(evidence);
  return p;
}

IterateResult countable_eval(const ProductSpace& product, std::span<const double> p) {
  const auto* nu = dynamic_cast<const CombinedNorm*>(product.space.nu.get());
  if (!nu || (product.combiner != Combiner::countable_lift && product.combiner != Combiner::countable_tau))
    throw std::invalid_argument("countable_eval: not a countable product");
  return nu->iterate(p, product.space.grid);
}

VerificationReport check_lemma4(const ProductSpace& product, std::size_t trials, std::uint64_t seed) {
  if (!product.sigma) throw std::invalid_argument("lemma4: product has no tail sum");
  const double sigma = *product.sigma;
  Campaign c;
  c.checks = {"lemma4", "certificate"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    const auto s = sample_vectors(rng, product.space.dim, trial);
    const auto res = countable_eval(product, s.p);
    const Ddf& g = res.ddf;
    double worst = 1.0 - g.tail();
    double where = kInf;
    for (std::size_t k = 0; k < g.grid().size(); ++k)
      if (g.grid().at(k) > sigma && 1.0 - g[k] > worst) {
        worst = 1.0 - g[k];
        where = g.grid().at(k);
      }
    const bool cert = res.certificate.lower_bound_holds.value_or(false);
    const nlohmann::json w{{"p", s.p}, {"x", std::isinf(where) ? -1.0 : where}, {"G(x)", 1.0 - worst}};
    return std::vector<TrialOutcome>{{worst - 1e-12, w}, {cert ? -1.0 : 1.0, w}};
  };
  auto r = make_report("lemma4:" + product.space.name, "lemma4", trials, seed, c.run(trials, seed));
  r.details = {{"sigma", sigma}, {"grid_n", product.space.grid.n}, {"x_max", product.space.grid.x_max}};
  return r;
}

ProductSpace sigma_product(const std::vector<PNSpace>& factors, std::size_t hypothesis_trials, std::uint64_t seed) {
  const std::size_t k = factors.size();
  if (k == 0) throw std::invalid_argument("sigma product: no factors");
  require_common_grid(factors);
  const auto tau_w = TriangleFunction::tau(TNorm::lukasiewicz());
  const auto wstar_lift = TriangleFunction::liftstar(TConorm::bounded_sum());

  nlohmann::json evidence = nlohmann::json::object();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = factors[i];
    const std::string key = f.tau.name() + "|" + f.tau_star.name();
    if (!seen.insert(key).second) continue;
    const auto lower = check_triangle_order(tau_w, f.tau, hypothesis_trials, seed);
    const auto upper = check_triangle_order(f.tau_star, wstar_lift, hypothesis_trials, seed);
    evidence[key] = {{lower.campaign, to_string(lower.verdict)}, {upper.campaign, to_string(upper.verdict)}};
    if (!lower.passed() || !upper.passed())
      throw std::invalid_argument("sigma product: factor " + std::to_string(i + 1) + " (" + f.name +
                                  ") violates tau_i >= tau_W or tau_i* <= W*-lift");
  }

  const std::string name = "sigma-product[" + std::to_string(k) + "]";
  auto nu = std::make_shared<CombinedNorm>(factors, CombinedNorm::Mode::sigma, std::nullopt, std::nullopt, name);
  const double deficit = std::ldexp(1.0, -static_cast<int>(k));
  PNSpace space{name,       total_dim(factors), nu, tau_w, wstar_lift, SpaceClass::menger, TNorm::lukasiewicz(),
                factors.front().grid, deficit + kClosedFormTol};
  ProductSpace p{std::move(space), factors, Combiner::sigma, offsets_of(factors)};
  p.tail_deficit = deficit;
  p.evidence = std::move(evidence);
  return p;
}

PmView pm_view(const PNSpace& space) {
  return [space](std::span<const double> p, std::span<const double> q) { return space.at(subtract(p, q)); };
}

VerificationReport check_pm_coincidence(const ProductSpace& product, const TriangleFunction& tau1,
                                        std::size_t trials, std::uint64_t seed) {
  if (product.size() != 2) throw std::invalid_argument("pm coincidence: binary products only");
  const auto whole = pm_view(product.space);
  const auto first = pm_view(product.factors[0]), second = pm_view(product.factors[1]);
  Campaign c;
  c.checks = {"coincidence", "F(p,p)=eps0", "symmetry"};
  const Ddf eps0 = make_eps(0.0, product.space.grid);
  c.trial = [&](std::size_t trial, Rng& rng) {
    const auto s = sample_vectors(rng, product.space.dim, trial);
    const Ddf direct = whole(s.p, s.q);
    const Ddf composed = tau1(first(product.component(s.p, 0), product.component(s.q, 0)),
                              second(product.component(s.p, 1), product.component(s.q, 1)));
    const nlohmann::json w{{"p", s.p}, {"q", s.q}};
    auto gap = [](const Ddf& a, const Ddf& b) { return a == b ? -1.0 : std::max(worst_abs_diff(a, b), 1e-300); };
    return std::vector<TrialOutcome>{
        {gap(direct, composed), w}, {gap(whole(s.p, s.p), eps0), w}, {gap(direct, whole(s.q, s.p)), w}};
  };
  return make_report("pm-coincidence:" + product.space.name, "thm3", trials, seed, c.run(trials, seed));
}

VerificationReport check_equilateral_product(const Ddf& f, const Ddf& g, std::size_t dim, std::size_t trials,
                                             std::uint64_t seed) {
  const auto lift_m = TriangleFunction::lift(TNorm::minimum());
  const PNSpace v1{"equilateral(F)", dim, equilateral(f), lift_m, lift_m, SpaceClass::pn, std::nullopt, f.grid()};
  const PNSpace v2{"equilateral(G)", dim, equilateral(g), lift_m, lift_m, SpaceClass::pn, std::nullopt, f.grid()};
  const auto product = tau_product(v1, v2, lift_m);
  const Ddf mfg = lift(TNorm::minimum(), f, g);
  Campaign c;
  c.checks = {"nonzero-components", "one-theta-component", "equilateral-M(F,G)"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    Vector p1 = sample_vector(rng, dim), p2 = sample_vector(rng, dim);
    if (trial % 3 == 1) std::fill(p1.begin(), p1.end(), 0.0);
    if (trial % 3 == 2) std::fill(p2.begin(), p2.end(), 0.0);
    const Vector p = product.concat({p1, p2});
    const Ddf nu = product.space.at(p);
    const bool z1 = is_zero(p1), z2 = is_zero(p2);
    const nlohmann::json w{{"p1", p1}, {"p2", p2}};
    auto gap = [](const Ddf& a, const Ddf& b) { return a == b ? -1.0 : std::max(worst_abs_diff(a, b), 1e-300); };
    TrialOutcome both = TrialOutcome::skipped(), one = TrialOutcome::skipped();
    if (!z1 && !z2) both = {gap(nu, mfg), w};
    if (z1 != z2) one = {gap(nu, z1 ? g : f), w};
    return std::vector<TrialOutcome>{both, one, {gap(nu, mfg), w}};
  };
  return make_report("equilateral-product", "ex2", trials, seed, c.run(trials, seed));
}

}  // namespace pnspace
