#include "pnspace/trifn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pnspace/sampling.hpp"

namespace pnspace {

namespace {

template <class Op>
std::vector<double> sup_kernel(std::span<const double> f, std::span<const double> g, Op op) {
  const std::size_t size = f.size();
  std::vector<double> r(size, 0.0);
  for (std::size_t k = 1; k < size; ++k) {
    double best = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double v = op(f[i], g[k + 1 - i]);
      if (v > best) best = v;
    }
    r[k] = best;
  }
  return r;
}

// Strict t-norms: max T(f_i, g_j) = f^{-1}(min f(f_i) + f(g_j)), with the
// identity cases kept exact.
std::vector<double> sup_kernel_generator(std::span<const double> f, std::span<const double> g,
                                         const AdditiveGenerator& gen) {
  const std::size_t size = f.size();
  std::vector<double> a(size), b(size);
  for (std::size_t i = 0; i < size; ++i) {
    a[i] = gen.f(f[i]);
    b[i] = gen.f(g[i]);
  }
  std::vector<double> r(size, 0.0);
  for (std::size_t k = 1; k < size; ++k) {
    double exact = 0.0;
    double least = kInf;
    for (std::size_t i = 1; i <= k; ++i) {
      const std::size_t j = k + 1 - i;
      if (a[i] == 0.0) {
        exact = std::max(exact, g[j]);
      } else if (b[j] == 0.0) {
        exact = std::max(exact, f[i]);
      } else {
        least = std::min(least, a[i] + b[j]);
      }
    }
    r[k] = std::max(exact, std::isinf(least) ? 0.0 : gen.f_inv(least));
  }
  return r;
}

std::string strip_star(std::string s) {
  if (!s.empty() && s.back() == '*') s.pop_back();
  return s;
}

}  // namespace

Ddf sup_convolve(const TNorm& t, const Ddf& f0, const Ddf& g0) {
  const auto [f, g] = align(f0, g0);
  if (f.is_infinite_step() || g.is_infinite_step()) return make_eps(kInf, f.grid());
  std::vector<double> r;
  if (t.kind() == TNorm::Kind::tg)
    r = sup_kernel_generator(f.values(), g.values(), *t.generator());
  else
    r = t.visit([&](auto op) { return sup_kernel(f.values(), g.values(), op); });
  return left_regularize(f.grid(), r, t.eval_unchecked(f.tail(), g.tail()),
                         t.eval_unchecked(f.at_infinity(), g.at_infinity()));
}

Ddf inf_convolve(const TConorm& s, const Ddf& f0, const Ddf& g0) {
  const auto [f, g] = align(f0, g0);
  const std::size_t size = f.grid().size();
  std::vector<double> r(size, 0.0);
  for (std::size_t k = 1; k < size; ++k) {
    double least = 1.0;
    for (std::size_t i = 0; i <= k; ++i) least = std::min(least, s.eval_unchecked(f[i], g[k - i]));
    r[k] = least;
  }
  return left_regularize(f.grid(), r, std::min(f.tail(), g.tail()), std::min(f.at_infinity(), g.at_infinity()));
}

Ddf lift(const TNorm& t, const Ddf& f0, const Ddf& g0) {
  const auto [f, g] = align(f0, g0);
  if (f.is_infinite_step() || g.is_infinite_step()) return make_eps(kInf, f.grid());
  std::vector<double> r(f.grid().size());
  t.visit([&](auto op) {
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = op(f[k], g[k]);
    return 0;
  });
  return left_regularize(f.grid(), r, t.eval_unchecked(f.tail(), g.tail()),
                         t.eval_unchecked(f.at_infinity(), g.at_infinity()));
}

Ddf lift(const TConorm& s, const Ddf& f0, const Ddf& g0) {
  const auto [f, g] = align(f0, g0);
  std::vector<double> r(f.grid().size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = s.eval_unchecked(f[k], g[k]);
  return left_regularize(f.grid(), r, s.eval_unchecked(f.tail(), g.tail()),
                         s.eval_unchecked(f.at_infinity(), g.at_infinity()));
}

TriangleFunction TriangleFunction::tau(const TNorm& t) {
  TriangleFunction r;
  r.kind_ = Kind::tau;
  r.name_ = "tau:" + t.name();
  r.tnorm_ = t;
  return r;
}

TriangleFunction TriangleFunction::lift(const TNorm& t) {
  TriangleFunction r;
  r.kind_ = Kind::lift;
  r.name_ = "lift:" + t.name();
  r.tnorm_ = t;
  return r;
}

TriangleFunction TriangleFunction::taustar(const TConorm& s) {
  TriangleFunction r;
  r.kind_ = Kind::taustar;
  r.name_ = "taustar:" + strip_star(s.name());
  r.conorm_ = s;
  return r;
}

TriangleFunction TriangleFunction::liftstar(const TConorm& s) {
  TriangleFunction r;
  r.kind_ = Kind::liftstar;
  r.name_ = "liftstar:" + strip_star(s.name());
  r.conorm_ = s;
  return r;
}

Ddf TriangleFunction::operator()(const Ddf& f, const Ddf& g) const {
  switch (kind_) {
    case Kind::tau: return sup_convolve(*tnorm_, f, g);
    case Kind::lift: return pnspace::lift(*tnorm_, f, g);
    case Kind::taustar: return inf_convolve(*conorm_, f, g);
    case Kind::liftstar: return pnspace::lift(*conorm_, f, g);
  }
  throw std::logic_error("unknown triangle function kind");
}

Ddf serial_iterate(const TriangleFunction& tau, std::span<const Ddf> fs) {
  if (fs.empty()) throw std::invalid_argument("serial_iterate: empty sequence");
  Ddf acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = tau(acc, fs[i]);
  return acc;
}

nlohmann::json IterateCertificate::to_json() const {
  nlohmann::json j{{"steps", steps}, {"final_delta", final_delta}, {"converged", converged}};
  if (sigma) j["sigma"] = *sigma;
  if (lower_bound_holds) j["lower_bound_holds"] = *lower_bound_holds;
  return j;
}

IterateResult infinite_iterate(const TriangleFunction& tau, const std::function<Ddf(std::size_t)>& provider,
                               const IterateOptions& options) {
  if (options.n_max == 0) throw std::invalid_argument("infinite_iterate: n_max must be at least 1");
  Ddf acc = provider(0);
  IterateCertificate cert;
  for (std::size_t n = 1; n <= options.n_max; ++n) {
    Ddf next = tau(acc, provider(n));
    cert.final_delta = sup_distance(acc, next);
    cert.steps = n;
    acc = std::move(next);
    if (options.stop_early && cert.final_delta < options.tol) {
      cert.converged = true;
      break;
    }
  }
  if (!options.stop_early) cert.converged = true;
  acc = left_regularize(acc);

  if (options.tail_sum) {
    const double sigma = *options.tail_sum;
    cert.sigma = sigma;
    bool holds = acc.tail() >= 1.0 - 1e-12;
    const Grid& grid = acc.grid();
    for (std::size_t k = 0; k < grid.size() && holds; ++k)
      if (grid.at(k) > sigma && acc[k] < 1.0 - 1e-12) holds = false;
    cert.lower_bound_holds = holds;
  }
  return IterateResult{std::move(acc), cert};
}

VerificationReport check_dominance(const TriangleFunction& tau1, const TriangleFunction& tau2,
                                   std::size_t trials, std::uint64_t seed, const Grid& grid) {
  Campaign c;
  c.checks = {tau1.name() + ">>" + tau2.name()};
  c.trial = [&](std::size_t, Rng& rng) {
    const Ddf f1 = sample_ddf(rng, grid), f2 = sample_ddf(rng, grid);
    const Ddf g1 = sample_ddf(rng, grid), g2 = sample_ddf(rng, grid);
    const Ddf lhs = tau1(tau2(f1, g1), tau2(f2, g2));
    const Ddf rhs = tau2(tau1(f1, f2), tau1(g1, g2));
    double x = 0.0;
    const double v = excess_over(rhs, lhs, 2, kIteratedTol, &x);
    nlohmann::json w;
    if (v > 0.0)
      w = {{"x", x}, {"F1", f1.to_json()}, {"F2", f2.to_json()}, {"G1", g1.to_json()}, {"G2", g2.to_json()}};
    return std::vector<TrialOutcome>{{v, std::move(w)}};
  };
  auto r = make_report("dominance:" + tau1.name() + ">>" + tau2.name(), "def4", trials, seed, c.run(trials, seed));
  r.details = {{"grid_n", grid.n}, {"x_max", grid.x_max}, {"margin_cells", 2}, {"vtol", kIteratedTol}};
  return r;
}

VerificationReport check_proper(const TriangleFunction& tau, std::size_t trials, std::uint64_t seed,
                                const Grid& grid) {
  Campaign c;
  c.checks = {"proper"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, grid.n / 2);
    std::size_t s = pick(rng), t = pick(rng);
    if (trial == 0) s = t = grid.nearest(1.0);
    const Ddf got = tau(make_eps(grid.at(s), grid), make_eps(grid.at(t), grid));
    const Ddf want = make_eps(grid.at(s + t), grid);
    double x = 0.0;
    const double v = excess_over(want, got, 1, kClosedFormTol, &x);
    return std::vector<TrialOutcome>{{v, nlohmann::json{{"s", grid.at(s)}, {"t", grid.at(t)}, {"x", x}}}};
  };
  auto r = make_report("proper:" + tau.name(), "def10", trials, seed, c.run(trials, seed));
  r.details = {{"grid_n", grid.n}, {"x_max", grid.x_max}};
  return r;
}

VerificationReport check_step_identity(const TriangleFunction& tau, std::size_t trials, std::uint64_t seed,
                                       const Grid& grid) {
  Campaign c;
  c.checks = {"step-identity"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, grid.n / 2);
    std::size_t s = pick(rng), t = pick(rng);
    if (trial == 0) s = t = grid.nearest(1.0);
    const Ddf got = tau(make_eps(grid.at(s), grid), make_eps(grid.at(t), grid));
    const Ddf want = make_eps(grid.at(s + t), grid);
    double x1 = 0.0, x2 = 0.0;
    const double a = excess_over(want, got, 1, kClosedFormTol, &x1);
    const double b = excess_over(got, want, 1, kClosedFormTol, &x2);
    return std::vector<TrialOutcome>{
        {std::max(a, b), nlohmann::json{{"s", grid.at(s)}, {"t", grid.at(t)}, {"x", a >= b ? x1 : x2}}}};
  };
  auto r = make_report("step-identity:" + tau.name(), "lemma1", trials, seed, c.run(trials, seed));
  r.details = {{"grid_n", grid.n}, {"x_max", grid.x_max}};
  return r;
}

VerificationReport check_triangle_order(const TriangleFunction& tau1, const TriangleFunction& tau2,
                                        std::size_t trials, std::uint64_t seed, const Grid& grid) {
  Campaign c;
  c.checks = {tau1.name() + "<=" + tau2.name()};
  c.trial = [&](std::size_t, Rng& rng) {
    const Ddf f = sample_ddf(rng, grid), g = sample_ddf(rng, grid);
    double x = 0.0;
    const double v = excess_over(tau1(f, g), tau2(f, g), 1, kIteratedTol, &x);
    nlohmann::json w;
    if (v > 0.0) w = {{"x", x}, {"F", f.to_json()}, {"G", g.to_json()}};
    return std::vector<TrialOutcome>{{v, std::move(w)}};
  };
  return make_report("order:" + tau1.name() + "<=" + tau2.name(), "def2", trials, seed, c.run(trials, seed));
}

}  // namespace pnspace
