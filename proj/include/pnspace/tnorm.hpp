#ifndef PNSPACE_TNORM_HPP
#define PNSPACE_TNORM_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnspace/campaign.hpp"
#include "pnspace/ddf.hpp"

namespace pnspace {

/// Decreasing bijection f: [0,1] -> [0,inf] with T(x,y) = f^{-1}(f(x) + f(y)).
struct AdditiveGenerator {
  std::function<double(double)> f;
  std::function<double(double)> f_inv;
};

class TConorm;

/// A left-continuous t-norm on [0,1].
class TNorm {
 public:
  enum class Kind { minimum, product, lukasiewicz, tg, table, dual_of };

  static TNorm minimum();
  static TNorm product();
  static TNorm lukasiewicz();

  /// The strict t-norm
  ///   T_G(x,y) = G( ( [G^{-1}(x)]^{1/(1-alpha)} + [G^{-1}(y)]^{1/(1-alpha)} )^{1-alpha} ),
  /// evaluated through its generator f = (G^{-1})^{1/(1-alpha)}. Requires a
  /// strictly increasing G with closed-form inverse and alpha > 1.
  static TNorm tg(const AnalyticDdf& g, double alpha, std::string g_name = {});

  /// A user operation sampled on a 256x256 lattice of [0,1]^2 and evaluated
  /// bilinearly. Axiom checks on tables only claim lattice-level validity.
  static TNorm table(std::string name, const std::function<double(double, double)>& op);

  /// x, y -> 1 - S(1 - x, 1 - y).
  static TNorm dual_of(const TConorm& s);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Throws std::domain_error for arguments outside [0,1].
  double operator()(double x, double y) const;

  const std::optional<AdditiveGenerator>& generator() const { return generator_; }
  bool is_table() const { return kind_ == Kind::table; }

  /// Calls fn with a callable (double, double) -> double that skips the range
  /// check, so tight loops can be specialised per built-in kind.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    switch (kind_) {
      case Kind::minimum: return fn([](double x, double y) { return x < y ? x : y; });
      case Kind::product: return fn([](double x, double y) { return x * y; });
      case Kind::lukasiewicz:
        return fn([](double x, double y) {
          // min - (1 - max) keeps W(x, 1) = x exact and stays symmetric.
          const double s = x < y ? x - (1.0 - y) : y - (1.0 - x);
          return s > 0.0 ? s : 0.0;
        });
      default: return fn([this](double x, double y) { return eval_unchecked(x, y); });
    }
  }

  double eval_unchecked(double x, double y) const;

  /// The underlying generator d.d.f. of a T_G norm.
  const std::optional<AnalyticDdf>& tg_generator_ddf() const { return tg_g_; }
  double tg_alpha() const { return tg_alpha_; }

 private:
  TNorm() = default;

  Kind kind_ = Kind::minimum;
  std::string name_;
  std::optional<AdditiveGenerator> generator_;
  std::shared_ptr<const std::vector<double>> table_;
  std::shared_ptr<const TConorm> dual_;
  std::optional<AnalyticDdf> tg_g_;
  double tg_alpha_ = 0.0;
};

/// A t-conorm on [0,1].
class TConorm {
 public:
  enum class Kind { maximum, probabilistic_sum, bounded_sum, dual_of };

  static TConorm maximum();
  static TConorm probabilistic_sum();
  /// W*(x,y) = min(x + y, 1).
  static TConorm bounded_sum();
  /// x, y -> 1 - T(1 - x, 1 - y).
  static TConorm dual_of(const TNorm& t);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double operator()(double x, double y) const;
  double eval_unchecked(double x, double y) const;

 private:
  TConorm() = default;

  Kind kind_ = Kind::maximum;
  std::string name_;
  std::shared_ptr<const TNorm> dual_;
};

double eval_t(const TNorm& t, double x, double y);
double eval_conorm(const TConorm& s, double x, double y);

/// Samples [0,1]^3 and checks commutativity, monotonicity, the identity 1 and
/// associativity. Tolerance 1e-12 for closed forms, one lattice cell for
/// tables.
VerificationReport check_tnorm_axioms(const TNorm& t, std::size_t trials, std::uint64_t seed);

/// The dyadic-mixture inequalities for W and W*:
///   W(sum a_i/2^i, sum b_i/2^i)  <= sum W(a_i, b_i)/2^i
///   W*(sum a_i/2^i, sum b_i/2^i) >= sum W*(a_i, b_i)/2^i
/// on random sequences of length K extended by zeros.
VerificationReport lemma2_lemma3_check(std::size_t trials, std::size_t prefix_len, std::uint64_t seed,
                                       double tol = 1e-12);

/// Left and right sides of the two dyadic inequalities for explicit sequences.
struct DyadicSides {
  double w_lhs, w_rhs, wstar_lhs, wstar_rhs;
};
DyadicSides dyadic_sides(std::span<const double> a, std::span<const double> b);

/// Number-level dominance A >> B:
///   A(B(x,u), B(y,v)) >= B(A(x,y), A(u,v))  on sampled quadruples.
/// Operations are passed as plain binary functions so t-norms and t-conorms mix.
using BinaryOp = std::function<double(double, double)>;
VerificationReport check_number_dominance(const std::string& a_name, const BinaryOp& a,
                                          const std::string& b_name, const BinaryOp& b,
                                          std::size_t trials, std::uint64_t seed, double tol = 1e-12);

}  // namespace pnspace

#endif
