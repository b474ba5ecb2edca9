#include "pnspace/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "pnspace/sampling.hpp"

namespace pnspace {

bool in_strong(const PNSpace& space, std::span<const double> p, std::span<const double> q, double t) {
  if (!(t > 0.0)) throw std::domain_error("strong neighborhood: t must be positive");
  return space.value_at(subtract(q, p), t) > 1.0 - t;
}

namespace {

constexpr double kFar = 1e6;

/// Largest r in [0, hi] with value(r) > level, for value nonincreasing in r;
/// kInf when value(hi) > level already.
double largest_radius(const std::function<double(double)>& value, double level, double hi = 1e3) {
  if (value(hi) > level) return kInf;
  double lo = 0.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) > level ? lo : hi) = mid;
  }
  return lo;
}

Vector along_component(const ProductSpace& product, std::size_t i, double r) {
  Vector v(product.space.dim, 0.0);
  v[product.offsets[i]] = r;
  return v;
}

Vector perturb(Rng& rng, std::span<const double> p, const ProductSpace& product, std::span<const double> scales) {
  Vector q(p.begin(), p.end());
  for (std::size_t i = 0; i < product.size(); ++i)
    for (std::size_t k = 0; k < product.factors[i].dim; ++k)
      q[product.offsets[i] + k] += scales[i] * standard_normal(rng);
  return q;
}

void require_point(const ProductSpace& product, std::span<const double> p, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("topology: eps must be positive");
  if (p.size() != product.space.dim) throw std::invalid_argument("topology: center has the wrong dimension");
}

/// Scale of the proposal on component i: half the radius at which that
/// component alone uses a 1/K share of the deficit allowed at level t.
std::vector<double> proposal_scales(const ProductSpace& product, double t) {
  const double share = t / static_cast<double>(product.size());
  std::vector<double> scales;
  for (std::size_t i = 0; i < product.size(); ++i) {
    const double r = largest_radius(
        [&](double x) { return product.space.value_at(along_component(product, i, x), t); }, 1.0 - share);
    scales.push_back(std::isinf(r) ? 1.0 : r / 2.0);
  }
  return scales;
}

void mark_insufficient(VerificationReport& r, std::size_t samples, std::size_t sampled_checks) {
  for (std::size_t i = 0; i < sampled_checks; ++i) {
    auto& c = r.checks[i];
    if (c.counted < samples && c.verdict == Verdict::pass) c.verdict = Verdict::insufficient_samples;
  }
  r.summarize();
}

/// A point of N_center(t) found by shrinking a Gaussian step; empty if none.
std::optional<Vector> sample_in(const PNSpace& space, Rng& rng, std::span<const double> center, double t) {
  const Vector dir = sample_vector(rng, space.dim);
  double s = 1.0;
  for (int i = 0; i < 80; ++i, s *= 0.5) {
    Vector r(center.begin(), center.end());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += s * dir[k];
    if (in_strong(space, center, r, t)) return r;
  }
  return std::nullopt;
}

}  // namespace

VerificationReport tau_product_containment(const ProductSpace& product, std::span<const double> p, double eps,
                                           std::size_t samples, std::size_t budget, std::uint64_t seed) {
  require_point(product, p, eps);
  const auto scales = proposal_scales(product, eps);
  const Vector center(p.begin(), p.end());

  Campaign c;
  c.checks = {"forward"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    const Vector q = trial == 0 ? center : perturb(rng, center, product, scales);
    if (!in_strong(product.space, center, q, eps)) return std::vector<TrialOutcome>{TrialOutcome::skipped()};
    double worst = -kInf;
    std::size_t index = 0;
    for (std::size_t i = 0; i < product.size(); ++i) {
      const double v = product.factors[i].value_at(subtract(product.component(q, i), product.component(center, i)), eps);
      const double gap = (1.0 - eps) - v;
      if (gap > worst) {
        worst = gap;
        index = i + 1;
      }
    }
    if (worst >= 0.0) worst = std::max(worst, 1e-300);
    nlohmann::json w;
    if (worst > 0.0) w = {{"q", q}, {"component", index}};
    return std::vector<TrialOutcome>{{worst, std::move(w)}};
  };
  auto checks = c.run(budget, seed);

  // Reverse containment: the last component whose distance alone can push q
  // out of N_p(eps); the product neighborhood over components 1..j-1 is not
  // inside N_p(eps).
  CheckResult reverse;
  reverse.name = "reverse-witness";
  reverse.trials = reverse.counted = product.size();
  reverse.worst_violation = 1.0;
  for (std::size_t j = product.size(); j-- > 0;) {
    Vector q = add(center, along_component(product, j, kFar));
    if (!in_strong(product.space, center, q, eps)) {
      reverse.worst_violation = -1.0;
      reverse.witness = {{"q", q}, {"m", j}, {"far_component", j + 1}};
      break;
    }
  }
  reverse.verdict = reverse.worst_violation > 0.0 ? Verdict::fail : Verdict::pass;
  if (reverse.worst_violation > 0.0) reverse.witness = {{"note", "no component can leave N_p(eps) on its own"}};
  checks.push_back(std::move(reverse));

  auto r = make_report("tau-product-containment:" + product.space.name, "thm12", budget, seed, std::move(checks));
  mark_insufficient(r, samples, 1);
  r.details = {{"eps", eps}, {"samples", samples}, {"budget", budget}, {"accepted", r.checks[0].counted},
               {"proposal_scales", scales}};
  if (r.checks[1].passed()) r.details["reverse_witness"] = r.checks[1].witness;
  return r;
}

VerificationReport sigma_topology_equivalence(const ProductSpace& product, std::span<const double> p, double eps,
                                              std::size_t samples, std::size_t budget, std::uint64_t seed) {
  require_point(product, p, eps);
  const std::size_t k = product.size();
  const std::size_t n = std::min<std::size_t>(k, static_cast<std::size_t>(std::ceil(std::log2(2.0 / eps))));
  const double delta = std::ldexp(eps, -static_cast<int>(n));
  const Vector center(p.begin(), p.end());

  // (a): each of the first n components independently inside N_{p_i}(eps/2).
  std::vector<double> scales_a(k, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = largest_radius(
        [&](double x) {
          Vector v(product.factors[i].dim, 0.0);
          v[0] = x;
          return product.factors[i].value_at(v, eps / 2.0);
        },
        1.0 - eps / 2.0);
    scales_a[i] = std::isinf(r) ? 1.0 : r / 3.0;
  }
  const auto scales_b = proposal_scales(product, delta);

  auto in_factor = [&](const Vector& q, std::size_t i, double t) {
    return in_strong(product.factors[i], product.component(center, i), product.component(q, i), t);
  };

  Campaign c;
  c.checks = {"product-in-sigma", "sigma-in-product"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    std::vector<TrialOutcome> out(2, TrialOutcome::skipped());
    const Vector qa = trial == 0 ? center : perturb(rng, center, product, scales_a);
    bool in_u = true;
    for (std::size_t i = 0; i < n && in_u; ++i) in_u = in_factor(qa, i, eps / 2.0);
    if (in_u) {
      const double gap = (1.0 - eps) - product.space.value_at(subtract(qa, center), eps);
      out[0] = {gap >= 0.0 ? std::max(gap, 1e-300) : gap, gap >= 0.0 ? nlohmann::json{{"q", qa}} : nlohmann::json{}};
    }
    const Vector qb = trial == 0 ? center : perturb(rng, center, product, scales_b);
    if (in_strong(product.space, center, qb, delta)) {
      double worst = -kInf;
      for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, (1.0 - eps) - product.factors[i].value_at(
                                                   subtract(product.component(qb, i), product.component(center, i)), eps));
      out[1] = {worst >= 0.0 ? std::max(worst, 1e-300) : worst,
                worst >= 0.0 ? nlohmann::json{{"q", qb}} : nlohmann::json{}};
    }
    return out;
  };
  auto r = make_report("sigma-topology:" + product.space.name, "thm13", budget, seed, c.run(budget, seed));
  mark_insufficient(r, samples, 2);
  r.details = {{"eps", eps},
               {"n", n},
               {"radius_a", eps / 2.0},
               {"delta", delta},
               {"samples", samples},
               {"budget", budget},
               {"accepted_a", r.checks[0].counted},
               {"accepted_b", r.checks[1].counted}};
  return r;
}

VerificationReport sigma_one_close_component(const ProductSpace& product, std::span<const double> p, double eps) {
  require_point(product, p, eps);
  const Vector center(p.begin(), p.end());
  Vector q = center;
  for (std::size_t i = 1; i < product.size(); ++i) q[product.offsets[i]] += kFar;
  const double value = product.space.value_at(subtract(q, center), eps);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < product.size(); ++i)
    if (!in_strong(product.factors[i], product.component(center, i), product.component(q, i), eps)) ++outside;

  CheckResult member;
  member.name = "member-with-one-close-component";
  member.trials = member.counted = 1;
  member.worst_violation = (1.0 - eps) - value;
  member.verdict = member.worst_violation < 0.0 ? Verdict::pass : Verdict::fail;
  CheckResult far;
  far.name = "other-components-outside";
  far.trials = far.counted = 1;
  far.worst_violation = outside + 1 >= product.size() ? -1.0 : 1.0;
  far.verdict = far.worst_violation < 0.0 ? Verdict::pass : Verdict::fail;
  auto r = make_report("sigma-one-close-component", "sec5", 1, 0, {member, far});
  r.details = {{"eps", eps}, {"nu(eps)", value}, {"components_outside", outside}, {"q", q}};
  return r;
}

VerificationReport check_neighborhood_properties(const PNSpace& space, std::size_t trials, std::uint64_t seed) {
  Campaign c;
  c.checks = {"interior", "separation", "monotone-in-t", "symmetric"};
  c.trial = [&](std::size_t, Rng& rng) {
    std::vector<TrialOutcome> out(4, TrialOutcome::skipped());
    if (space.dim == 0) return out;
    const Vector p = sample_vector(rng, space.dim);
    const double t = uniform(rng, 0.05, 0.95);

    if (auto q = sample_in(space, rng, p, t)) {
      const Vector d = subtract(*q, p);
      const double eta = space.value_at(d, t) - (1.0 - t);
      const double level = 1.0 - t + eta / 2.0;
      double lo = 0.0, hi = t;
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (space.value_at(d, mid) > level ? hi : lo) = mid;
      }
      const double t_prime = std::min(t - hi, eta / 2.0);
      if (t_prime > 0.0) {
        if (auto r = sample_in(space, rng, *q, t_prime)) {
          const double gap = (1.0 - t) - space.value_at(subtract(*r, p), t);
          out[0] = {gap >= 0.0 ? std::max(gap, 1e-300) : gap,
                    nlohmann::json{{"p", p}, {"q", *q}, {"r", *r}, {"t", t}, {"t'", t_prime}}};
        }
      }
      const double t2 = std::min(1.0, t + uniform(rng, 0.0, 1.0));
      out[2] = {in_strong(space, p, *q, t2) ? -1.0 : 1.0, nlohmann::json{{"p", p}, {"q", *q}, {"t", t}, {"t2", t2}}};
      out[3] = {in_strong(space, *q, p, t) ? -1.0 : 1.0, nlohmann::json{{"p", p}, {"q", *q}, {"t", t}}};
    }

    const Vector q = add(p, sample_vector(rng, space.dim));
    if (!is_zero(subtract(q, p))) {
      const Vector d = subtract(q, p);
      double s = 0.5;
      for (int i = 0; i < 200 && space.value_at(d, 2.0 * s) > 1.0 - 2.0 * s; ++i) s *= 0.5;
      if (space.value_at(d, 2.0 * s) <= 1.0 - 2.0 * s) {
        if (auto r = sample_in(space, rng, p, s)) {
          out[1] = {in_strong(space, q, *r, s) ? 1.0 : -1.0, nlohmann::json{{"p", p}, {"q", q}, {"r", *r}, {"t", s}}};
        }
      }
    }
    return out;
  };
  auto r = make_report("neighborhoods:" + space.name, "sec5", trials, seed, c.run(trials, seed));
  r.details = {{"space", space.name}, {"tau", space.tau.name()}};
  return r;
}

}  // namespace pnspace
