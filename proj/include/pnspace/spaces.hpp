#ifndef PNSPACE_SPACES_HPP
#define PNSPACE_SPACES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnspace/campaign.hpp"
#include "pnspace/ddf.hpp"
#include "pnspace/tnorm.hpp"
#include "pnspace/transform.hpp"
#include "pnspace/trifn.hpp"

namespace pnspace {

using Vector = std::vector<double>;

Vector add(std::span<const double> p, std::span<const double> q);
Vector subtract(std::span<const double> p, std::span<const double> q);
Vector scale(double lambda, std::span<const double> p);
bool is_zero(std::span<const double> p);

class Norm {
 public:
  enum class Kind { l1, l2, linf, lbeta, max_combine, sum_combine };

  static Norm l1();
  static Norm l2();
  static Norm linf();
  /// "l1" | "l2" | "linf".
  static Norm parse(const std::string& name);

  /// (||p1||_1^beta + ||p2||_2^beta)^{1/beta} with p1 the first `split`
  /// coordinates. Not a norm for beta < 1.
  static Norm lbeta(double beta, const Norm& first, std::size_t split, const Norm& second);
  /// ||p1||_1 v ||p2||_2.
  static Norm max_combine(const Norm& first, std::size_t split, const Norm& second);
  /// ||p1||_1 + ||p2||_2.
  static Norm sum_combine(const Norm& first, std::size_t split, const Norm& second);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double beta() const { return beta_; }

  double operator()(std::span<const double> p) const;

 private:
  Norm() = default;
  static Norm combine(Kind kind, std::string name, double beta, const Norm& first, std::size_t split,
                      const Norm& second);

  Kind kind_ = Kind::l2;
  std::string name_;
  double beta_ = 1.0;
  std::size_t split_ = 0;
  std::shared_ptr<const Norm> first_;
  std::shared_ptr<const Norm> second_;
};

/// Positivity, absolute homogeneity and the triangle inequality on sampled
/// vectors of the given dimension.
VerificationReport check_norm_axioms(const Norm& norm, std::size_t dim, std::size_t trials, std::uint64_t seed);

/// A map p -> nu_p from vectors to d.d.f.s.
class ProbNorm {
 public:
  virtual ~ProbNorm() = default;
  virtual std::string name() const = 0;
  virtual Ddf eval(std::span<const double> p, const Grid& grid) const = 0;
  /// nu_p(t). Closed-form families evaluate directly; the default reads the
  /// grid d.d.f.
  virtual double value_at(std::span<const double> p, double t, const Grid& grid) const;
  /// Grid cells by which eval may run ahead of the exact nu_p.
  virtual std::size_t margin_cells() const { return 0; }
};

using ProbNormPtr = std::shared_ptr<const ProbNorm>;

/// nu_theta = eps_0, nu_p(t) = G(t / ||p||^alpha). alpha = 1 must go through simple().
ProbNormPtr alpha_simple(const Norm& norm, const AnalyticDdf& g, double alpha);
/// nu_p(t) = G(t / ||p||).
ProbNormPtr simple(const Norm& norm, const AnalyticDdf& g);
/// nu_theta = eps_0, nu_p = F for every p != theta.
ProbNormPtr equilateral(const Ddf& f);
/// nu_theta = eps_0; otherwise exp(-||p||) on ]0, inf[, 0 at 0, 1 at infinity.
ProbNormPtr exp_norm(const Norm& norm);
/// p -> nu_p m.
ProbNormPtr transformed(ProbNormPtr base, const MbFunction& m);

enum class SpaceClass { pn, ppn, serstnev, menger };
std::string to_string(SpaceClass c);

struct PNSpace {
  std::string name;
  std::size_t dim;
  ProbNormPtr nu;
  TriangleFunction tau;
  TriangleFunction tau_star;
  SpaceClass declared = SpaceClass::pn;
  std::optional<TNorm> menger_t;
  Grid grid;
  /// Vertical tolerance for inequality checks.
  double vtol = kClosedFormTol;

  Ddf at(std::span<const double> p) const { return nu->eval(p, grid); }
  double value_at(std::span<const double> p, double t) const { return nu->value_at(p, t, grid); }
};

/// N1-N4 and tau <= tau* on sampled vectors and scalars. Vectors include the
/// adversarial set p = q, p = -q, p = theta, q = theta and axis vectors.
VerificationReport verify_axioms(const PNSpace& space, std::size_t trials, std::uint64_t seed);

/// nu_p = tau_M(nu_{alpha p}, nu_{(1-alpha) p}) and nu_{lambda p}(t) = nu_p(t/|lambda|).
VerificationReport check_serstnev(const PNSpace& space, std::size_t trials, std::uint64_t seed);

/// nu_{p+q}(t) and tau(nu_p, nu_q)(t) for one explicit pair.
struct N3Probe {
  double nu_sum;
  double tau_value;
};
N3Probe probe_n3(const PNSpace& space, std::span<const double> p, std::span<const double> q, double t);

/// The Menger condition for alpha-simple spaces under a strict t-norm with
/// generator f, h = (f o G)^{-1}:
///   ||p+q||^alpha h(s+t) <= ||p||^alpha h(s) + ||q||^alpha h(t).
VerificationReport menger_alpha_condition(const Norm& norm, std::size_t dim, const AnalyticDdf& g, double alpha,
                                          const AdditiveGenerator& f, std::size_t trials, std::uint64_t seed);

/// T_G for a strictly increasing G with closed-form inverse; alpha > 1.
TNorm make_tg(const AnalyticDdf& g, double alpha, std::string g_name = {});

/// Scalars and vector pairs used by the axiom campaigns.
struct VectorSample {
  Vector p, q;
  double alpha = 0.5;
  double lambda = 1.0;
  std::string mode;
};
VectorSample sample_vectors(Rng& rng, std::size_t dim, std::size_t trial);

}  // namespace pnspace

#endif
