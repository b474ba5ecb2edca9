#ifndef PNSPACE_TRANSFORM_HPP
#define PNSPACE_TRANSFORM_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "pnspace/campaign.hpp"
#include "pnspace/ddf.hpp"
#include "pnspace/trifn.hpp"

namespace pnspace {

/// A continuous strictly increasing map m from [0,b] onto [0,inf] with a
/// closed-form inverse.
class MbFunction {
 public:
  enum class Kind { power, blowup, user };

  /// x^gamma on [0, inf].
  static MbFunction power(double gamma);
  /// x / (b - x) on [0, b].
  static MbFunction blowup(double b);
  static MbFunction user(std::string name, std::function<double(double)> m,
                         std::function<double(double)> m_inv, double b = kInf);
  /// x^1, named "identity".
  static MbFunction identity();
  /// sqrt(x), inverse x^2.
  static MbFunction sqrt();

  /// Parses "pow:<gamma>", "blowup:<b>", "identity" or "sqrt".
  static MbFunction parse(const std::string& name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double b() const { return b_; }
  bool finite_b() const { return b_ < kInf; }

  /// m(x); +inf for x >= b.
  double operator()(double x) const;
  /// m^{-1}(y); b for y = +inf.
  double inverse(double y) const;

 private:
  MbFunction() = default;

  Kind kind_ = Kind::power;
  std::string name_;
  double param_ = 1.0;
  double b_ = kInf;
  std::function<double(double)> m_;
  std::function<double(double)> m_inv_;
};

/// (Fm)(x) = F(m(x)) on [0,b[, lim_{y->inf} F(y) at b, and 1 beyond b.
/// For b = inf it is plain composition. Evaluated at the grid abscissae of F.
Ddf m_transform(const Ddf& f, const MbFunction& m);

/// m(x + y) >= m(x) + m(y) on sampled x, y with x + y <= b.
VerificationReport check_superadditive(const MbFunction& m, std::size_t trials, std::uint64_t seed);

/// tau(F,G)m >= tau(Fm, Gm) on pairs from the mixed family, two cells of
/// slack. The report details carry the plain superadditivity verdict for the
/// same trials and seed, and whether the two agree.
VerificationReport check_tau_superadditive(const MbFunction& m, const TriangleFunction& tau, std::size_t trials,
                                           std::uint64_t seed, const Grid& grid = Grid{256, 8.0});

}  // namespace pnspace

#endif
