#include "pnspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pnspace/sampling.hpp"

namespace pnspace {

Vector add(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("vector dimensions differ");
  Vector r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] + q[i];
  return r;
}

Vector subtract(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("vector dimensions differ");
  Vector r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] - q[i];
  return r;
}

Vector scale(double lambda, std::span<const double> p) {
  Vector r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = lambda * p[i];
  return r;
}

bool is_zero(std::span<const double> p) {
  return std::all_of(p.begin(), p.end(), [](double x) { return x == 0.0; });
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double worst_abs_diff(const Ddf& a, const Ddf& b) {
  double d = std::max(std::abs(a.tail() - b.tail()), std::abs(a.at_infinity() - b.at_infinity()));
  for (std::size_t k = 0; k < a.values().size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

Norm Norm::l1() {
  Norm n;
  n.kind_ = Kind::l1;
  n.name_ = "l1";
  return n;
}

Norm Norm::l2() {
  Norm n;
  n.kind_ = Kind::l2;
  n.name_ = "l2";
  return n;
}

Norm Norm::linf() {
  Norm n;
  n.kind_ = Kind::linf;
  n.name_ = "linf";
  return n;
}

Norm Norm::parse(const std::string& name) {
  if (name == "l1") return l1();
  if (name == "l2") return l2();
  if (name == "linf") return linf();
  throw std::invalid_argument("unknown norm: " + name);
}

Norm Norm::combine(Kind kind, std::string name, double beta, const Norm& first, std::size_t split,
                   const Norm& second) {
  Norm n;
  n.kind_ = kind;
  n.name_ = std::move(name);
  n.beta_ = beta;
  n.split_ = split;
  n.first_ = std::make_shared<const Norm>(first);
  n.second_ = std::make_shared<const Norm>(second);
  return n;
}

Norm Norm::lbeta(double beta, const Norm& first, std::size_t split, const Norm& second) {
  if (!(beta > 0.0)) throw std::domain_error("lbeta: beta must be positive");
  return combine(Kind::lbeta, "lbeta:" + format_double(beta) + "(" + first.name() + "," + second.name() + ")",
                 beta, first, split, second);
}

Norm Norm::max_combine(const Norm& first, std::size_t split, const Norm& second) {
  return combine(Kind::max_combine, "max(" + first.name() + "," + second.name() + ")", 1.0, first, split, second);
}

Norm Norm::sum_combine(const Norm& first, std::size_t split, const Norm& second) {
  return combine(Kind::sum_combine, "sum(" + first.name() + "," + second.name() + ")", 1.0, first, split, second);
}

double Norm::operator()(std::span<const double> p) const {
  switch (kind_) {
    case Kind::l1: {
      double s = 0.0;
      for (double x : p) s += std::abs(x);
      return s;
    }
    case Kind::l2: {
      double s = 0.0;
      for (double x : p) s = std::hypot(s, x);
      return s;
    }
    case Kind::linf: {
      double s = 0.0;
      for (double x : p) s = std::max(s, std::abs(x));
      return s;
    }
    default: break;
  }
  if (split_ > p.size()) throw std::invalid_argument("combined norm: vector shorter than split");
  const double a = (*first_)(p.subspan(0, split_));
  const double b = (*second_)(p.subspan(split_));
  switch (kind_) {
    case Kind::max_combine: return std::max(a, b);
    case Kind::sum_combine: return a + b;
    case Kind::lbeta:
      if (beta_ == 1.0) return a + b;
      if (a == 0.0) return b;
      if (b == 0.0) return a;
      return std::pow(std::pow(a, beta_) + std::pow(b, beta_), 1.0 / beta_);
    default: break;
  }
  return 0.0;
}

VerificationReport check_norm_axioms(const Norm& norm, std::size_t dim, std::size_t trials, std::uint64_t seed) {
  Campaign c;
  c.checks = {"positivity", "homogeneity", "triangle"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    if (dim == 0) return std::vector<TrialOutcome>(3, TrialOutcome::skipped());
    Vector p = sample_vector(rng, dim), q = sample_vector(rng, dim);
    if (trial == 0 && dim > 1) {
      // Vectors living in different blocks of a combined norm.
      std::fill(p.begin() + 1, p.end(), 0.0);
      std::fill(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(dim - 1), 0.0);
      p[0] = 1.0;
      q[dim - 1] = 1.0;
    }
    const double lambda = (uniform(rng) < 0.5 ? -1.0 : 1.0) * log_uniform(rng, 1e-3, 1e3);
    const double np = norm(p), nq = norm(q);
    const Vector zero(dim, 0.0);
    const nlohmann::json w{{"p", p}, {"q", q}, {"lambda", lambda}};

    const double positivity = norm(zero) != 0.0 || !(np > 0.0) ? 1.0 : -1.0;
    const double scaled = norm(scale(lambda, p));
    const double homogeneity = std::abs(scaled - std::abs(lambda) * np) / std::max(1.0, scaled) - 1e-12;
    const double sum = norm(add(p, q));
    const double triangle = (sum - np - nq) / std::max(1.0, sum) - 1e-12;
    return std::vector<TrialOutcome>{{positivity, w}, {homogeneity, w}, {triangle, w}};
  };
  auto r = make_report("norm-axioms:" + norm.name(), "def9", trials, seed, c.run(trials, seed));
  r.details = {{"norm", norm.name()}, {"dim", dim}};
  return r;
}

// ---------------------------------------------------------------------------

double ProbNorm::value_at(std::span<const double> p, double t, const Grid& grid) const { return eval(p, grid)(t); }

namespace {

class AlphaSimpleNorm final : public ProbNorm {
 public:
  AlphaSimpleNorm(Norm norm, AnalyticDdf g, double alpha) : norm_(std::move(norm)), g_(std::move(g)), alpha_(alpha) {}

  std::string name() const override {
    return (alpha_ == 1.0 ? "simple(" : "alpha-simple(") + norm_.name() + "," + g_.name() +
           (alpha_ == 1.0 ? "" : "," + format_double(alpha_)) + ")";
  }

  Ddf eval(std::span<const double> p, const Grid& grid) const override {
    const double s = scale_of(p);
    if (s == 0.0) return make_eps(0.0, grid);
    return g_.scaled(s).sample(grid);
  }

  double value_at(std::span<const double> p, double t, const Grid&) const override {
    if (t <= 0.0) return 0.0;
    const double s = scale_of(p);
    if (s == 0.0 || std::isinf(t)) return 1.0;
    return g_(t / s);
  }

 private:
  double scale_of(std::span<const double> p) const {
    const double n = norm_(p);
    return alpha_ == 1.0 ? n : std::pow(n, alpha_);
  }

  Norm norm_;
  AnalyticDdf g_;
  double alpha_;
};

class EquilateralNorm final : public ProbNorm {
 public:
  explicit EquilateralNorm(Ddf f) : f_(std::move(f)) {}

  std::string name() const override { return "equilateral"; }

  Ddf eval(std::span<const double> p, const Grid& grid) const override {
    if (is_zero(p)) return make_eps(0.0, grid);
    return f_.resample(grid);
  }

  double value_at(std::span<const double> p, double t, const Grid&) const override {
    if (is_zero(p)) return t > 0.0 ? 1.0 : 0.0;
    return f_(t);
  }

 private:
  Ddf f_;
};

class ExpNorm final : public ProbNorm {
 public:
  explicit ExpNorm(Norm norm) : norm_(std::move(norm)) {}

  std::string name() const override { return "exp(" + norm_.name() + ")"; }

  Ddf eval(std::span<const double> p, const Grid& grid) const override {
    const double level = std::exp(-norm_(p));
    std::vector<double> v(grid.size(), level);
    v[0] = 0.0;
    return Ddf(grid, std::move(v), level, 1.0);
  }

  double value_at(std::span<const double> p, double t, const Grid&) const override {
    if (t <= 0.0) return 0.0;
    if (std::isinf(t)) return 1.0;
    return std::exp(-norm_(p));
  }

 private:
  Norm norm_;
};

class TransformedNorm final : public ProbNorm {
 public:
  TransformedNorm(ProbNormPtr base, MbFunction m) : base_(std::move(base)), m_(std::move(m)) {}

  std::string name() const override { return base_->name() + "o" + m_.name(); }

  Ddf eval(std::span<const double> p, const Grid& grid) const override {
    const Ddf base = base_->eval(p, grid);
    if (base.is_infinite_step()) return m_transform(base, m_);
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t k = 1; k < v.size(); ++k) {
      const double x = grid.at(k);
      if (x < m_.b())
        v[k] = base_->value_at(p, m_(x), grid);
      else
        v[k] = x == m_.b() ? base.tail() : 1.0;
    }
    if (m_.finite_b()) return left_regularize(grid, v, 1.0, 1.0);
    return left_regularize(grid, v, base.tail(), base.at_infinity());
  }

  double value_at(std::span<const double> p, double t, const Grid& grid) const override {
    if (t <= 0.0) return 0.0;
    if (std::isinf(t) || t > m_.b()) return 1.0;
    if (t == m_.b()) return base_->eval(p, grid).tail();
    return base_->value_at(p, m_(t), grid);
  }

  std::size_t margin_cells() const override { return base_->margin_cells(); }

 private:
  ProbNormPtr base_;
  MbFunction m_;
};

}  // namespace

ProbNormPtr alpha_simple(const Norm& norm, const AnalyticDdf& g, double alpha) {
  if (!(alpha > 0.0) || std::isinf(alpha)) throw std::domain_error("alpha-simple: alpha must be positive");
  if (alpha == 1.0) throw std::invalid_argument("alpha-simple with alpha = 1: use simple()");
  if (g.kind() == AnalyticDdf::Kind::step) throw std::invalid_argument("alpha-simple: G must not be a step");
  return std::make_shared<AlphaSimpleNorm>(norm, g, alpha);
}

ProbNormPtr simple(const Norm& norm, const AnalyticDdf& g) {
  if (g.kind() == AnalyticDdf::Kind::step) throw std::invalid_argument("simple: G must not be a step");
  return std::make_shared<AlphaSimpleNorm>(norm, g, 1.0);
}

ProbNormPtr equilateral(const Ddf& f) {
  if (f == make_eps(0.0, f.grid())) throw std::invalid_argument("equilateral: F must differ from eps_0");
  return std::make_shared<EquilateralNorm>(f);
}

ProbNormPtr exp_norm(const Norm& norm) { return std::make_shared<ExpNorm>(norm); }

ProbNormPtr transformed(ProbNormPtr base, const MbFunction& m) {
  return std::make_shared<TransformedNorm>(std::move(base), m);
}

std::string to_string(SpaceClass c) {
  switch (c) {
    case SpaceClass::pn: return "PN";
    case SpaceClass::ppn: return "PPN";
    case SpaceClass::serstnev: return "Serstnev";
    case SpaceClass::menger: return "Menger";
  }
  return "PN";
}

// ---------------------------------------------------------------------------

VectorSample sample_vectors(Rng& rng, std::size_t dim, std::size_t trial) {
  VectorSample s;
  s.p = sample_vector(rng, dim);
  s.q = sample_vector(rng, dim);
  switch (trial % 8) {
    case 0:
      s.q = s.p;
      s.mode = "p=q";
      break;
    case 1:
      s.q = scale(-1.0, s.p);
      s.mode = "p=-q";
      break;
    case 2:
      std::fill(s.p.begin(), s.p.end(), 0.0);
      s.mode = "p=theta";
      break;
    case 3:
      std::fill(s.q.begin(), s.q.end(), 0.0);
      s.mode = "q=theta";
      break;
    case 4: {
      if (dim == 0) break;
      std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
      const std::size_t i = axis(rng), j = axis(rng);
      const double a = s.p[0], b = s.q[0];
      std::fill(s.p.begin(), s.p.end(), 0.0);
      std::fill(s.q.begin(), s.q.end(), 0.0);
      s.p[i] = a;
      s.q[j] = b;
      s.mode = "axes";
      break;
    }
    default: s.mode = "normal";
  }
  const double r = uniform(rng);
  s.alpha = r < 0.1 ? 0.0 : r < 0.2 ? 1.0 : uniform(rng);
  const double sign = uniform(rng) < 0.5 ? -1.0 : 1.0;
  s.lambda = uniform(rng) < 0.1 ? -1.0 : sign * log_uniform(rng, 1e-3, 1e3);
  return s;
}

VerificationReport verify_axioms(const PNSpace& space, std::size_t trials, std::uint64_t seed) {
  const std::size_t margin = space.nu->margin_cells();
  const Ddf eps0 = make_eps(0.0, space.grid);
  Campaign c;
  c.checks = {"N1", "N2", "N3", "N4", "tau<=tau*"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    if (space.dim == 0) return std::vector<TrialOutcome>(5, TrialOutcome::skipped());
    const auto s = sample_vectors(rng, space.dim, trial);
    const Ddf np = space.at(s.p), nq = space.at(s.q);
    auto witness = [&](double x) {
      return nlohmann::json{{"p", s.p}, {"q", s.q}, {"alpha", s.alpha}, {"mode", s.mode}, {"x", x}};
    };
    std::vector<TrialOutcome> out;

    // N1: nu_theta is eps_0 exactly, and nu_p < 1 somewhere for p != theta.
    const double theta_gap = sup_distance(space.at(Vector(space.dim, 0.0)), eps0);
    double n1 = theta_gap > 0.0 ? theta_gap : -1.0;
    if (!is_zero(s.p)) {
      bool below = np.tail() < 1.0;
      for (std::size_t k = 1; k < np.values().size() && !below; ++k) below = np[k] < 1.0;
      if (!below) n1 = std::max(n1, 1.0);
    }
    out.push_back({n1, witness(0.0)});

    out.push_back({sup_distance(space.at(scale(-1.0, s.p)), np), witness(0.0)});

    double x = 0.0;
    const Ddf sum = space.at(add(s.p, s.q));
    const double n3 = excess_over(space.tau(np, nq), sum, 2 * margin + space.tau.cell_slack(), space.vtol, &x);
    out.push_back({n3, witness(x)});

    const Ddf split = space.tau_star(space.at(scale(s.alpha, s.p)), space.at(scale(1.0 - s.alpha, s.p)));
    const double n4 = excess_over(np, split, margin + space.tau_star.cell_slack(), space.vtol, &x);
    out.push_back({n4, witness(x)});

    const double order = excess_over(space.tau(np, nq), space.tau_star(np, nq), 0, space.vtol, &x);
    out.push_back({order, witness(x)});
    return out;
  };
  auto r = make_report("verify-axioms:" + space.name, "def2", trials, seed, c.run(trials, seed));
  r.details = {{"space", space.name},
               {"nu", space.nu->name()},
               {"tau", space.tau.name()},
               {"tau_star", space.tau_star.name()},
               {"declared", to_string(space.declared)},
               {"dim", space.dim},
               {"grid_n", space.grid.n},
               {"x_max", space.grid.x_max},
               {"vtol", space.vtol}};
  return r;
}

VerificationReport check_serstnev(const PNSpace& space, std::size_t trials, std::uint64_t seed) {
  const std::size_t cells = 2 * space.nu->margin_cells() + 1;
  const auto tau_m = TriangleFunction::tau_m();
  Campaign c;
  c.checks = {"serstnev-equality", "scaling"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    if (space.dim == 0) return std::vector<TrialOutcome>(2, TrialOutcome::skipped());
    const auto s = sample_vectors(rng, space.dim, trial);
    const Ddf np = space.at(s.p);
    const Ddf split = tau_m(space.at(scale(s.alpha, s.p)), space.at(scale(1.0 - s.alpha, s.p)));
    double x1 = 0.0, x2 = 0.0;
    const double a = excess_over(np, split, cells, space.vtol, &x1);
    const double b = excess_over(split, np, cells, space.vtol, &x2);
    const nlohmann::json w1{{"p", s.p}, {"alpha", s.alpha}, {"x", a >= b ? x1 : x2}};

    const Ddf scaled = space.nu->eval(scale(s.lambda, s.p), space.grid);
    const Ddf stretched = space.nu->eval(s.p, space.grid.scaled(1.0 / std::abs(s.lambda)));
    const double d = worst_abs_diff(scaled, stretched) - space.vtol;
    const nlohmann::json w2{{"p", s.p}, {"lambda", s.lambda}};
    return std::vector<TrialOutcome>{{std::max(a, b), w1}, {d, w2}};
  };
  auto r = make_report("serstnev:" + space.name, "def2", trials, seed, c.run(trials, seed));
  r.details = {{"space", space.name}, {"margin_cells", cells}};
  return r;
}

N3Probe probe_n3(const PNSpace& space, std::span<const double> p, std::span<const double> q, double t) {
  const Ddf tau_pq = space.tau(space.at(p), space.at(q));
  return N3Probe{space.at(add(p, q))(t), tau_pq(t)};
}

VerificationReport menger_alpha_condition(const Norm& norm, std::size_t dim, const AnalyticDdf& g, double alpha,
                                          const AdditiveGenerator& f, std::size_t trials, std::uint64_t seed) {
  if (!(alpha > 1.0)) throw std::domain_error("Menger condition: alpha must exceed 1");
  auto h = [&](double s) { return g.inverse(f.f_inv(s)); };
  Campaign c;
  c.checks = {"menger-condition"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    if (dim == 0) return std::vector<TrialOutcome>{TrialOutcome::skipped()};
    Vector p = sample_vector(rng, dim);
    Vector q = sample_vector(rng, dim);
    double s = log_uniform(rng, 1e-6, 1e3);
    double t = log_uniform(rng, 1e-6, 1e3);
    if (trial % 4 == 0) {
      // Collinear, same direction, with s : t matched to the norms: the equality case.
      q = scale(log_uniform(rng, 0.1, 10.0), p);
      t = s * norm(q) / norm(p);
    }
    if (is_zero(p) || is_zero(q) || is_zero(add(p, q))) return std::vector<TrialOutcome>{TrialOutcome::skipped()};
    const double lhs = std::pow(norm(add(p, q)), alpha) * h(s + t);
    const double rhs = std::pow(norm(p), alpha) * h(s) + std::pow(norm(q), alpha) * h(t);
    const double v = (lhs - rhs) / std::max(1.0, std::abs(rhs)) - 1e-9;
    return std::vector<TrialOutcome>{
        {v, nlohmann::json{{"p", p}, {"q", q}, {"s", s}, {"t", t}, {"lhs", lhs}, {"rhs", rhs}}}};
  };
  auto r = make_report("menger-alpha-condition", "sec3-menger", trials, seed, c.run(trials, seed));
  r.details = {{"norm", norm.name()}, {"G", g.name()}, {"alpha", alpha}};
  return r;
}

TNorm make_tg(const AnalyticDdf& g, double alpha, std::string g_name) { return TNorm::tg(g, alpha, std::move(g_name)); }

}  // namespace pnspace
