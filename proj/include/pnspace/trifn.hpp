#ifndef PNSPACE_TRIFN_HPP
#define PNSPACE_TRIFN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "pnspace/campaign.hpp"
#include "pnspace/ddf.hpp"
#include "pnspace/tnorm.hpp"

namespace pnspace {

/// tau_T(F,G)(x) = sup_{u+v=x} T(F(u), G(v)).
///
/// On the grid, with F and G constant on every cell (x_{k-1}, x_k], the sup is
/// attained on index pairs with i + j = k + 1:
///   result_k = max_{i=1..k} T(f_i, g_{k+1-i}).
/// This is exact for cell-constant inputs, so tau(F, eps_0) = F and
/// tau(eps_s, eps_t) = eps_{s+t} hold bit for bit on grid abscissae.
Ddf sup_convolve(const TNorm& t, const Ddf& f, const Ddf& g);

/// The conorm dual of sup_convolve, left-limit regularised:
///   result_k = min_{i=0..k} S(f_i, g_{k-i}).
Ddf inf_convolve(const TConorm& s, const Ddf& f, const Ddf& g);

/// Pointwise T(F(x), G(x)).
Ddf lift(const TNorm& t, const Ddf& f, const Ddf& g);
/// Pointwise S(F(x), G(x)).
Ddf lift(const TConorm& s, const Ddf& f, const Ddf& g);

class TriangleFunction {
 public:
  enum class Kind { tau, lift, taustar, liftstar };

  static TriangleFunction tau(const TNorm& t);
  static TriangleFunction lift(const TNorm& t);
  /// Inf-convolution under a t-conorm.
  static TriangleFunction taustar(const TConorm& s);
  /// Pointwise lift of a t-conorm.
  static TriangleFunction liftstar(const TConorm& s);
  static TriangleFunction tau_m() { return tau(TNorm::minimum()); }

  Kind kind() const { return kind_; }
  /// Config name, e.g. "tau:W", "lift:M", "taustar:W".
  const std::string& name() const { return name_; }

  const std::optional<TNorm>& tnorm() const { return tnorm_; }
  const std::optional<TConorm>& conorm() const { return conorm_; }

  Ddf operator()(const Ddf& f, const Ddf& g) const;

  /// Grid cells of horizontal slack a single application may introduce.
  std::size_t cell_slack() const { return kind_ == Kind::tau || kind_ == Kind::taustar ? 1 : 0; }

 private:
  TriangleFunction() = default;

  Kind kind_ = Kind::tau;
  std::string name_;
  std::optional<TNorm> tnorm_;
  std::optional<TConorm> conorm_;
};

/// Left fold of tau over fs.
Ddf serial_iterate(const TriangleFunction& tau, std::span<const Ddf> fs);

struct IterateOptions {
  std::size_t n_max = 64;
  double tol = 1e-6;
  /// When false every one of n_max steps is taken (finite families).
  bool stop_early = true;
  /// sum b_i; enables the lower-bound certificate G >= eps_sigma.
  std::optional<double> tail_sum;
};

struct IterateCertificate {
  std::size_t steps = 0;
  double final_delta = 0.0;
  bool converged = false;
  std::optional<double> sigma;
  /// G(x) = 1 at every grid abscissa x > sigma and beyond the grid.
  std::optional<bool> lower_bound_holds;

  nlohmann::json to_json() const;
};

struct IterateResult {
  Ddf ddf;
  IterateCertificate certificate;
};

/// l^-(lim_n tau^n(F_1, ..., F_{n+1})), with F_{i+1} = provider(i).
IterateResult infinite_iterate(const TriangleFunction& tau, const std::function<Ddf(std::size_t)>& provider,
                               const IterateOptions& options = {});

/// Samples quadruples from the mixed d.d.f. family and checks
///   tau1(tau2(F1,G1), tau2(F2,G2)) >= tau2(tau1(F1,F2), tau1(G1,G2))
/// with a margin of two grid cells and 1e-6.
VerificationReport check_dominance(const TriangleFunction& tau1, const TriangleFunction& tau2,
                                   std::size_t trials, std::uint64_t seed, const Grid& grid = Grid{256, 16.0});

/// tau(eps_s, eps_t) >= eps_{s+t} on grid steps s, t, within one cell.
VerificationReport check_proper(const TriangleFunction& tau, std::size_t trials, std::uint64_t seed,
                                const Grid& grid = Grid{256, 16.0});

/// tau(eps_s, eps_t) = eps_{s+t} on grid steps s, t, within one cell both ways.
VerificationReport check_step_identity(const TriangleFunction& tau, std::size_t trials, std::uint64_t seed,
                                       const Grid& grid = Grid{256, 16.0});

/// tau1(F,G) <= tau2(F,G) on sampled pairs, one cell of slack.
VerificationReport check_triangle_order(const TriangleFunction& tau1, const TriangleFunction& tau2,
                                        std::size_t trials, std::uint64_t seed,
                                        const Grid& grid = Grid{256, 16.0});

}  // namespace pnspace

#endif
