#include "pnspace/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pnspace {

namespace {

constexpr std::size_t kLattice = 256;

void require_unit(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::domain_error("t-norm argument outside [0,1]");
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Mostly uniform, sometimes a corner value: corners are where identities bite.
double unit_sample(Rng& rng) {
  const double r = uniform01(rng);
  if (r < 0.05) return 0.0;
  if (r < 0.10) return 1.0;
  if (r < 0.13) return 0.5;
  return uniform01(rng);
}

}  // namespace

TNorm TNorm::minimum() {
  TNorm t;
  t.kind_ = Kind::minimum;
  t.name_ = "M";
  return t;
}

TNorm TNorm::product() {
  TNorm t;
  t.kind_ = Kind::product;
  t.name_ = "Pi";
  t.generator_ = AdditiveGenerator{[](double x) { return x <= 0.0 ? kInf : -std::log(x); },
                                   [](double s) { return std::exp(-s); }};
  return t;
}

TNorm TNorm::lukasiewicz() {
  TNorm t;
  t.kind_ = Kind::lukasiewicz;
  t.name_ = "W";
  return t;
}

TNorm TNorm::tg(const AnalyticDdf& g, double alpha, std::string g_name) {
  if (!(alpha > 1.0) || std::isinf(alpha)) throw std::domain_error("T_G needs alpha > 1");
  if (!g.has_inverse() || !g.strictly_increasing())
    throw std::invalid_argument("T_G needs a strictly increasing d.d.f. with closed-form inverse");
  TNorm t;
  t.kind_ = Kind::tg;
  t.name_ = "TG:" + (g_name.empty() ? g.name() : g_name) + ":" + format_double(alpha);
  t.tg_g_ = g;
  t.tg_alpha_ = alpha;
  const double expo = 1.0 / (1.0 - alpha);
  t.generator_ = AdditiveGenerator{
      [g, expo](double x) {
        if (x <= 0.0) return kInf;
        if (x >= 1.0) return 0.0;
        return std::pow(g.inverse(x), expo);
      },
      [g, alpha](double s) {
        if (s <= 0.0) return 1.0;
        if (std::isinf(s)) return 0.0;
        return g(std::pow(s, 1.0 - alpha));
      }};
  return t;
}

TNorm TNorm::table(std::string name, const std::function<double(double, double)>& op) {
  TNorm t;
  t.kind_ = Kind::table;
  t.name_ = std::move(name);
  auto values = std::make_shared<std::vector<double>>(kLattice * kLattice);
  for (std::size_t i = 0; i < kLattice; ++i)
    for (std::size_t j = 0; j < kLattice; ++j) {
      const double x = static_cast<double>(i) / (kLattice - 1);
      const double y = static_cast<double>(j) / (kLattice - 1);
      (*values)[i * kLattice + j] = op(x, y);
    }
  t.table_ = std::move(values);
  return t;
}

TNorm TNorm::dual_of(const TConorm& s) {
  TNorm t;
  t.kind_ = Kind::dual_of;
  t.name_ = "dual(" + s.name() + ")";
  t.dual_ = std::make_shared<const TConorm>(s);
  return t;
}

double TNorm::operator()(double x, double y) const {
  require_unit(x, y);
  return eval_unchecked(x, y);
}

double TNorm::eval_unchecked(double x, double y) const {
  switch (kind_) {
    case Kind::minimum: return std::min(x, y);
    case Kind::product: return x * y;
    case Kind::lukasiewicz: return std::max(x < y ? x - (1.0 - y) : y - (1.0 - x), 0.0);
    case Kind::tg: {
      if (x == 1.0) return y;
      if (y == 1.0) return x;
      if (x == 0.0 || y == 0.0) return 0.0;
      const auto& gen = *generator_;
      return gen.f_inv(gen.f(x) + gen.f(y));
    }
    case Kind::table: {
      const double fx = x * (kLattice - 1);
      const double fy = y * (kLattice - 1);
      const auto i = std::min<std::size_t>(static_cast<std::size_t>(fx), kLattice - 2);
      const auto j = std::min<std::size_t>(static_cast<std::size_t>(fy), kLattice - 2);
      const double tx = fx - static_cast<double>(i);
      const double ty = fy - static_cast<double>(j);
      const auto& v = *table_;
      const double a = v[i * kLattice + j];
      const double b = v[(i + 1) * kLattice + j];
      const double c = v[i * kLattice + j + 1];
      const double d = v[(i + 1) * kLattice + j + 1];
      return (1 - tx) * (1 - ty) * a + tx * (1 - ty) * b + (1 - tx) * ty * c + tx * ty * d;
    }
    case Kind::dual_of: return 1.0 - dual_->eval_unchecked(1.0 - x, 1.0 - y);
  }
  return 0.0;
}

TConorm TConorm::maximum() {
  TConorm s;
  s.kind_ = Kind::maximum;
  s.name_ = "M*";
  return s;
}

TConorm TConorm::probabilistic_sum() {
  TConorm s;
  s.kind_ = Kind::probabilistic_sum;
  s.name_ = "Pi*";
  return s;
}

TConorm TConorm::bounded_sum() {
  TConorm s;
  s.kind_ = Kind::bounded_sum;
  s.name_ = "W*";
  return s;
}

TConorm TConorm::dual_of(const TNorm& t) {
  TConorm s;
  s.kind_ = Kind::dual_of;
  s.name_ = t.name() + "*";
  s.dual_ = std::make_shared<const TNorm>(t);
  return s;
}

double TConorm::operator()(double x, double y) const {
  require_unit(x, y);
  return eval_unchecked(x, y);
}

double TConorm::eval_unchecked(double x, double y) const {
  switch (kind_) {
    case Kind::maximum: return std::max(x, y);
    case Kind::probabilistic_sum: return x + y - x * y;
    case Kind::bounded_sum: return std::min(x + y, 1.0);
    case Kind::dual_of: return 1.0 - dual_->eval_unchecked(1.0 - x, 1.0 - y);
  }
  return 1.0;
}

double eval_t(const TNorm& t, double x, double y) { return t(x, y); }
double eval_conorm(const TConorm& s, double x, double y) { return s(x, y); }

VerificationReport check_tnorm_axioms(const TNorm& t, std::size_t trials, std::uint64_t seed) {
  const bool lattice = t.is_table();
  const double tol = lattice ? 1.0 / (kLattice - 1) : 1e-12;
  auto draw = [&](Rng& rng) {
    if (!lattice) return unit_sample(rng);
    const auto i = std::uniform_int_distribution<std::size_t>(0, kLattice - 1)(rng);
    return static_cast<double>(i) / (kLattice - 1);
  };

  Campaign c;
  c.checks = {"commutativity", "monotonicity", "identity", "associativity"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    double x = draw(rng), y = draw(rng), z = draw(rng);
    if (trial == 0) x = 0.5, y = 0.5, z = 0.5;
    double x2 = draw(rng);
    if (x2 < x) std::swap(x, x2);
    std::vector<TrialOutcome> out(4);
    const nlohmann::json w{{"x", x}, {"y", y}, {"z", z}, {"x_upper", x2}};

    const double txy = t(x, y);
    out[0] = {std::abs(txy - t(y, x)) - tol, w};
    out[1] = {txy - t(x2, y) - tol, w};
    out[2] = {std::abs(t(x, 1.0) - x) - tol, nlohmann::json{{"x", x}, {"T(x,1)", t(x, 1.0)}}};
    const double left = t(txy, z);
    const double right = t(x, t(y, z));
    out[3] = {std::abs(left - right) - tol, w};
    return out;
  };
  auto r = make_report("check-tnorm:" + t.name(), "def5", trials, seed, c.run(trials, seed));
  r.details = {{"tnorm", t.name()}, {"tolerance", tol}, {"lattice_level", lattice}};
  return r;
}

DyadicSides dyadic_sides(std::span<const double> a, std::span<const double> b) {
  const auto w = TNorm::lukasiewicz();
  const auto ws = TConorm::bounded_sum();
  double sa = 0.0, sb = 0.0, rw = 0.0, rws = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::ldexp(1.0, -static_cast<int>(i + 1));
    sa += scale * a[i];
    sb += scale * b[i];
    rw += scale * w(a[i], b[i]);
    rws += scale * ws(a[i], b[i]);
  }
  sa = std::min(sa, 1.0);
  sb = std::min(sb, 1.0);
  return DyadicSides{w(sa, sb), rw, ws(sa, sb), rws};
}

VerificationReport lemma2_lemma3_check(std::size_t trials, std::size_t prefix_len, std::uint64_t seed,
                                       double tol) {
  if (prefix_len == 0) throw std::invalid_argument("prefix length must be at least 1");
  Campaign c;
  c.checks = {"lemma2", "lemma3"};
  c.trial = [&](std::size_t trial, Rng& rng) {
    std::vector<double> a(prefix_len), b(prefix_len);
    const double mode = uniform01(rng);
    for (std::size_t i = 0; i < prefix_len; ++i) {
      if (trial == 0) {
        a[i] = b[i] = 1.0;
      } else if (trial == 1) {
        a[i] = b[i] = 0.0;
      } else if (mode < 0.25) {
        // Binary sequences reach the extreme cases of W and W*.
        a[i] = uniform01(rng) < 0.5 ? 0.0 : 1.0;
        b[i] = uniform01(rng) < 0.5 ? 0.0 : 1.0;
      } else {
        a[i] = uniform01(rng);
        b[i] = uniform01(rng);
      }
    }
    const auto s = dyadic_sides(a, b);
    const nlohmann::json w{{"a", a}, {"b", b}, {"sides", {s.w_lhs, s.w_rhs, s.wstar_lhs, s.wstar_rhs}}};
    return std::vector<TrialOutcome>{{s.w_lhs - s.w_rhs - tol, w}, {s.wstar_rhs - s.wstar_lhs - tol, w}};
  };
  auto r = make_report("lemma2-lemma3", "lemma2,lemma3", trials, seed, c.run(trials, seed));
  r.details = {{"prefix_len", prefix_len}, {"tolerance", tol}};
  return r;
}

VerificationReport check_number_dominance(const std::string& a_name, const BinaryOp& a,
                                          const std::string& b_name, const BinaryOp& b,
                                          std::size_t trials, std::uint64_t seed, double tol) {
  Campaign c;
  c.checks = {a_name + ">>" + b_name};
  c.trial = [&](std::size_t, Rng& rng) {
    const double x = unit_sample(rng), u = unit_sample(rng), y = unit_sample(rng), v = unit_sample(rng);
    const double lhs = a(b(x, u), b(y, v));
    const double rhs = b(a(x, y), a(u, v));
    return std::vector<TrialOutcome>{
        {rhs - lhs - tol, nlohmann::json{{"x", x}, {"u", u}, {"y", y}, {"v", v}, {"lhs", lhs}, {"rhs", rhs}}}};
  };
  return make_report("number-dominance:" + a_name + ">>" + b_name, "def4", trials, seed, c.run(trials, seed));
}

}  // namespace pnspace
