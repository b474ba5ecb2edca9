#include "pnspace/ddf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnspace {

std::size_t Grid::cell_of(double x) const {
  if (x <= 0.0) return 0;
  if (x > x_max) return n + 1;
  auto k = static_cast<std::size_t>(std::ceil(x / step()));
  k = std::min(k, n);
  // Guard against rounding in x / step() for spacings that are not powers of two.
  while (k > 0 && at(k - 1) >= x) --k;
  while (k < n && at(k) < x) ++k;
  return k;
}

std::size_t Grid::nearest(double a) const {
  if (!(a > 0.0)) return 0;
  if (a >= x_max) return n;
  return std::min(n, static_cast<std::size_t>(std::lround(a / step())));
}

Grid finest_common(const Grid& a, const Grid& b) {
  if (a == b) return a;
  const double h = std::min(a.step(), b.step());
  const double x_max = std::max(a.x_max, b.x_max);
  return Grid{static_cast<std::size_t>(std::ceil(x_max / h - 1e-9)), x_max};
}

Ddf::Ddf(Grid grid, std::vector<double> values, double tail, double at_infinity,
         bool infinite_step)
    : grid_(grid),
      values_(std::move(values)),
      tail_(tail),
      at_infinity_(at_infinity),
      infinite_step_(infinite_step) {
  if (grid_.n == 0 || !(grid_.x_max > 0.0)) throw std::domain_error("ddf: degenerate grid");
  if (values_.size() != grid_.size()) throw std::domain_error("ddf: value count does not match grid");
  if (values_[0] != 0.0) throw std::domain_error("ddf: F(0) must be 0");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double v = values_[k];
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("ddf: value outside [0,1]");
    if (k > 0 && v < values_[k - 1]) throw std::domain_error("ddf: values must be nondecreasing");
  }
  if (!(tail_ >= values_.back() && tail_ <= 1.0)) throw std::domain_error("ddf: tail below last grid value");
  if (!(at_infinity_ >= tail_ && at_infinity_ <= 1.0)) throw std::domain_error("ddf: value at infinity below tail");
  if (infinite_step_ && (values_.back() != 0.0 || tail_ != 0.0 || at_infinity_ != 0.0))
    throw std::domain_error("ddf: eps_inf must vanish everywhere");
}

double Ddf::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("ddf: negative argument");
  if (std::isinf(x)) return at_infinity_;
  const std::size_t k = grid_.cell_of(x);
  return k > grid_.n ? tail_ : values_[k];
}

Ddf Ddf::resample(const Grid& target) const {
  if (target == grid_) return *this;
  std::vector<double> v(target.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (*this)(target.at(k));
  v[0] = 0.0;
  return Ddf(target, std::move(v), tail_, at_infinity_, infinite_step_);
}

nlohmann::json Ddf::to_json() const {
  return {{"kind", "grid"},
          {"grid",
           {{"x_max", grid_.x_max},
            {"n", grid_.n},
            {"values", values_},
            {"tail", tail_},
            {"at_inf", at_infinity_},
            {"infinite_step", infinite_step_}}}};
}

Ddf Ddf::from_json(const nlohmann::json& j) {
  const auto& g = j.at("grid");
  const double at_inf = g.at("at_inf").get<double>();
  return Ddf(Grid{g.at("n").get<std::size_t>(), g.at("x_max").get<double>()},
             g.at("values").get<std::vector<double>>(), g.value("tail", at_inf), at_inf,
             g.value("infinite_step", false));
}

// ---------------------------------------------------------------------------

AnalyticDdf AnalyticDdf::step(double a) {
  if (!(a >= 0.0) || std::isinf(a)) throw std::domain_error("step: location must be finite and nonnegative");
  AnalyticDdf g;
  g.kind_ = Kind::step;
  g.param_ = a;
  g.name_ = "step";
  g.strictly_increasing_ = false;
  return g;
}

AnalyticDdf AnalyticDdf::ratio(double c) {
  if (!(c > 0.0) || std::isinf(c)) throw std::domain_error("ratio: c must be positive");
  AnalyticDdf g;
  g.kind_ = Kind::ratio;
  g.param_ = c;
  g.name_ = "ratio";
  return g;
}

AnalyticDdf AnalyticDdf::exp_complement(double c) {
  if (!(c > 0.0) || std::isinf(c)) throw std::domain_error("exp: c must be positive");
  AnalyticDdf g;
  g.kind_ = Kind::exp_complement;
  g.param_ = c;
  g.name_ = "exp";
  return g;
}

AnalyticDdf AnalyticDdf::user(std::string name, std::function<double(double)> eval,
                              std::function<double(double)> inverse, bool strictly_increasing) {
  if (!eval) throw std::invalid_argument("user ddf needs an evaluator");
  AnalyticDdf g;
  g.kind_ = Kind::user;
  g.name_ = std::move(name);
  g.eval_ = std::move(eval);
  g.inverse_ = std::move(inverse);
  g.strictly_increasing_ = strictly_increasing;
  return g;
}

double AnalyticDdf::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("ddf: negative argument");
  if (std::isinf(x)) return 1.0;
  const double u = x / scale_;
  switch (kind_) {
    case Kind::step: return u > param_ ? 1.0 : 0.0;
    case Kind::ratio: return u / (u + param_);
    case Kind::exp_complement: return -std::expm1(-u / param_);
    case Kind::user: return x == 0.0 ? 0.0 : eval_(u);
  }
  return 0.0;
}

bool AnalyticDdf::has_inverse() const {
  switch (kind_) {
    case Kind::ratio:
    case Kind::exp_complement: return true;
    case Kind::user: return static_cast<bool>(inverse_);
    case Kind::step: return false;
  }
  return false;
}

double AnalyticDdf::inverse(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("inverse: argument outside [0,1]");
  if (!has_inverse()) throw std::logic_error("ddf " + name_ + " has no closed-form inverse");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return kInf;
  switch (kind_) {
    case Kind::ratio: return scale_ * param_ * y / (1.0 - y);
    case Kind::exp_complement: return -scale_ * param_ * std::log1p(-y);
    case Kind::user: return scale_ * inverse_(y);
    case Kind::step: break;
  }
  return 0.0;
}

AnalyticDdf AnalyticDdf::scaled(double s) const {
  if (!(s > 0.0) || std::isinf(s)) throw std::domain_error("scaled: factor must be positive and finite");
  AnalyticDdf g = *this;
  g.scale_ *= s;
  return g;
}

Ddf AnalyticDdf::sample(const Grid& grid) const {
  std::vector<double> v(grid.size());
  for (std::size_t k = 1; k < v.size(); ++k) v[k] = (*this)(grid.at(k));
  return left_regularize(grid, v, 1.0, 1.0);
}

nlohmann::json AnalyticDdf::to_json() const {
  nlohmann::json j{{"kind", name_}};
  if (kind_ != Kind::user) j["parameters"] = {{"c", param_}, {"scale", scale_}};
  else j["parameters"] = {{"scale", scale_}};
  return j;
}

// ---------------------------------------------------------------------------

Ddf make_eps(double a, const Grid& grid) {
  if (std::isnan(a) || a < 0.0) throw std::domain_error("make_eps: negative location");
  std::vector<double> v(grid.size(), 0.0);
  if (std::isinf(a)) return Ddf(grid, std::move(v), 0.0, 0.0, true);
  const std::size_t j = grid.nearest(a);
  for (std::size_t k = j + 1; k < v.size(); ++k) v[k] = 1.0;
  return Ddf(grid, std::move(v), 1.0, 1.0);
}

Ddf zero_function(const Grid& grid) {
  return Ddf(grid, std::vector<double>(grid.size(), 0.0), 0.0, 0.0);
}

Mixture mixture(std::span<const double> weights, std::span<const Ddf> fs, std::optional<Grid> grid) {
  if (weights.size() != fs.size()) throw std::invalid_argument("mixture: weights and functions differ in length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) throw std::domain_error("mixture: negative weight");
    total += w;
  }
  if (total > 1.0 + 1e-12) throw std::domain_error("mixture: weights sum above 1");

  Grid target = grid.value_or(fs.empty() ? Grid{} : fs.front().grid());
  if (!grid)
    for (const auto& f : fs) target = finest_common(target, f.grid());

  std::vector<double> v(target.size(), 0.0);
  double tail = 0.0;
  double at_inf = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Ddf f = fs[i].resample(target);
    const auto fv = f.values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += weights[i] * fv[k];
    tail += weights[i] * f.tail();
    at_inf += weights[i] * f.at_infinity();
  }
  return Mixture{left_regularize(target, v, tail, at_inf), std::max(0.0, 1.0 - total)};
}

std::pair<Ddf, Ddf> align(const Ddf& f, const Ddf& g) {
  if (f.grid() == g.grid()) return {f, g};
  const Grid target = finest_common(f.grid(), g.grid());
  return {f.resample(target), g.resample(target)};
}

OrderCheck le(const Ddf& f0, const Ddf& g0, double tol) {
  const auto [f, g] = align(f0, g0);
  OrderCheck r;
  auto consider = [&](double x, double excess) {
    if (excess > r.worst_violation) {
      r.worst_violation = excess;
      r.worst_x = x;
    }
  };
  for (std::size_t k = 0; k < f.grid().size(); ++k) consider(f.grid().at(k), f[k] - g[k]);
  consider(f.grid().x_max * 2.0, f.tail() - g.tail());
  consider(kInf, f.at_infinity() - g.at_infinity());
  r.holds = r.worst_violation <= tol;
  return r;
}

Ddf left_regularize(const Grid& grid, std::span<const double> raw, double tail, double at_infinity) {
  if (raw.size() != grid.size()) throw std::invalid_argument("left_regularize: size mismatch");
  std::vector<double> v(raw.size());
  double running = 0.0;
  for (std::size_t k = 1; k < raw.size(); ++k) {
    const double x = std::isnan(raw[k]) ? 0.0 : std::clamp(raw[k], 0.0, 1.0);
    running = std::max(running, x);
    v[k] = running;
  }
  v[0] = 0.0;
  tail = std::max(std::clamp(std::isnan(tail) ? 0.0 : tail, 0.0, 1.0), running);
  at_infinity = std::max(std::clamp(std::isnan(at_infinity) ? 0.0 : at_infinity, 0.0, 1.0), tail);
  return Ddf(grid, std::move(v), tail, at_infinity);
}

Ddf left_regularize(const Ddf& f) {
  if (f.is_infinite_step()) return f;
  return left_regularize(f.grid(), f.values(), f.tail(), f.at_infinity());
}

bool dist_to_eps0(const Ddf& f, double t) {
  if (!(t > 0.0)) throw std::domain_error("dist_to_eps0: t must be positive");
  return f(t) > 1.0 - t;
}

bool dist_to_eps0(const AnalyticDdf& f, double t) {
  if (!(t > 0.0)) throw std::domain_error("dist_to_eps0: t must be positive");
  return f(t) > 1.0 - t;
}

double sup_distance(const Ddf& f0, const Ddf& g0) {
  const auto [f, g] = align(f0, g0);
  double d = std::max(std::abs(f.tail() - g.tail()), std::abs(f.at_infinity() - g.at_infinity()));
  for (std::size_t k = 0; k < f.grid().size(); ++k) d = std::max(d, std::abs(f[k] - g[k]));
  return d;
}

double excess_over(const Ddf& lower0, const Ddf& upper0, std::size_t cells, double vtol, double* where) {
  const auto [lower, upper] = align(lower0, upper0);
  const Grid& grid = lower.grid();
  double worst = -kInf;
  double worst_x = 0.0;
  auto consider = [&](double x, double excess) {
    if (excess > worst) {
      worst = excess;
      worst_x = x;
    }
  };
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::size_t j = k + cells;
    const double up = j <= grid.n ? upper[j] : upper.tail();
    consider(grid.at(k), lower[k] - up);
  }
  consider(grid.x_max * 2.0, lower.tail() - upper.tail());
  consider(kInf, lower.at_infinity() - upper.at_infinity());
  if (where) *where = worst_x;
  return worst - vtol;
}

}  // namespace pnspace
