#ifndef PNSPACE_DDF_HPP
#define PNSPACE_DDF_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace pnspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Vertical tolerances used throughout.
inline constexpr double kClosedFormTol = 1e-9;
inline constexpr double kIteratedTol = 1e-6;

/// Uniform abscissae x_k = k * x_max / n, k = 0..n.
struct Grid {
  std::size_t n = 1024;
  double x_max = 16.0;

  double step() const { return x_max / static_cast<double>(n); }
  double at(std::size_t k) const { return static_cast<double>(k) * step(); }
  std::size_t size() const { return n + 1; }

  /// Index of the cell (x_{k-1}, x_k] holding x, i.e. the smallest k with x_k >= x.
  /// Returns n + 1 when x lies beyond x_max.
  std::size_t cell_of(double x) const;

  /// Nearest grid index to a (a clamped into [0, x_max]).
  std::size_t nearest(double a) const;

  Grid scaled(double factor) const { return Grid{n, x_max * factor}; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Finest common grid of two grids: the smaller spacing, then the larger extent.
Grid finest_common(const Grid& a, const Grid& b);

/// A distance distribution function stored on a uniform grid.
///
/// values[k] is the value on the cell (x_{k-1}, x_k]; since every member of
/// Delta+ is left-continuous, this is also the value at x_k itself and the
/// left limit at a jump. Beyond x_max the function takes `tail` for every
/// finite argument and `at_infinity` at +inf.
class Ddf {
 public:
  /// Validates the Delta+ invariants and throws std::domain_error otherwise.
  Ddf(Grid grid, std::vector<double> values, double tail, double at_infinity,
      bool infinite_step = false);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double tail() const { return tail_; }
  double at_infinity() const { return at_infinity_; }

  /// True only for the encoding of eps_{+inf}, the minimum of the order.
  bool is_infinite_step() const { return infinite_step_; }

  /// F(x) under the left-continuous convention; throws on x < 0 or NaN.
  double operator()(double x) const;

  /// Value as x -> +inf through finite arguments.
  double limit() const { return tail_; }

  /// Same function, re-sampled on another grid by step-convention evaluation.
  Ddf resample(const Grid& target) const;

  nlohmann::json to_json() const;
  static Ddf from_json(const nlohmann::json& j);

  friend bool operator==(const Ddf&, const Ddf&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
  double tail_;
  double at_infinity_;
  bool infinite_step_;
};

/// Closed-form generator d.d.f.s.
class AnalyticDdf {
 public:
  enum class Kind { step, ratio, exp_complement, user };

  /// Unit step at a (0 at a, 1 beyond).
  static AnalyticDdf step(double a);
  /// x / (x + c).
  static AnalyticDdf ratio(double c);
  /// 1 - exp(-x / c).
  static AnalyticDdf exp_complement(double c);
  /// User closed form. `inverse`, when given, must be the exact inverse on ]0,1[.
  static AnalyticDdf user(std::string name, std::function<double(double)> eval,
                          std::function<double(double)> inverse = {},
                          bool strictly_increasing = true);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  const std::string& name() const { return name_; }

  double operator()(double x) const;

  bool has_inverse() const;
  /// Closed-form inverse on [0,1]; G^{-1}(0) = 0 and G^{-1}(1) = +inf.
  double inverse(double y) const;
  bool strictly_increasing() const { return strictly_increasing_; }

  /// x -> G(x / s).
  AnalyticDdf scaled(double s) const;

  /// values[k] = G(x_k); tail and at_infinity = 1.
  Ddf sample(const Grid& grid) const;

  nlohmann::json to_json() const;

 private:
  AnalyticDdf() = default;

  Kind kind_ = Kind::ratio;
  double param_ = 1.0;
  double scale_ = 1.0;
  std::string name_;
  std::function<double(double)> eval_;
  std::function<double(double)> inverse_;
  bool strictly_increasing_ = true;
};

/// eps_a snapped to the nearest grid abscissa; a = +inf gives eps_{+inf}.
Ddf make_eps(double a, const Grid& grid = {});

/// All zeros, tail and limit 0 (the zero function, not a member of D+).
Ddf zero_function(const Grid& grid = {});

struct Mixture {
  Ddf ddf;
  /// 1 - sum(weights); the mass a truncated infinite sum leaves out.
  double tail_deficit;
};

/// Pointwise weighted sum. Inputs on different grids are first resampled to
/// the finest common grid. Throws std::domain_error when a weight is negative
/// or the weights sum to more than 1.
Mixture mixture(std::span<const double> weights, std::span<const Ddf> fs,
                std::optional<Grid> grid = std::nullopt);

struct OrderCheck {
  bool holds = true;
  double worst_x = 0.0;
  double worst_violation = 0.0;

  explicit operator bool() const { return holds; }
};

/// F <= G at every grid abscissa, beyond the grid and at infinity, up to tol.
OrderCheck le(const Ddf& f, const Ddf& g, double tol = kClosedFormTol);

/// Running max, clamp to [0,1], F(0) = 0. Idempotent.
Ddf left_regularize(const Grid& grid, std::span<const double> raw, double tail,
                    double at_infinity);
Ddf left_regularize(const Ddf& f);

/// d_S(F, eps_0) < t, i.e. F(t) > 1 - t.
bool dist_to_eps0(const Ddf& f, double t);
bool dist_to_eps0(const AnalyticDdf& f, double t);

/// Bring two d.d.f.s onto a common grid (no copy when they already agree).
std::pair<Ddf, Ddf> align(const Ddf& f, const Ddf& g);

/// sup_k |F(x_k) - G(x_k)| including tail and limit, after alignment.
double sup_distance(const Ddf& f, const Ddf& g);

/// Largest amount by which `lower` exceeds `upper` shifted right by `cells`
/// grid cells, less `vtol`. Positive means `lower <= upper` is violated beyond
/// the discretisation margin. Sets *where to the abscissa of the worst excess.
double excess_over(const Ddf& lower, const Ddf& upper, std::size_t cells, double vtol,
                   double* where = nullptr);

}  // namespace pnspace

#endif
