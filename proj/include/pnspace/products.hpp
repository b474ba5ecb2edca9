#ifndef PNSPACE_PRODUCTS_HPP
#define PNSPACE_PRODUCTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnspace/spaces.hpp"

namespace pnspace {

enum class Combiner { tau1, sigma, countable_lift, countable_tau };
std::string to_string(Combiner c);

/// A product of PN spaces. The carrier is the concatenation of the factor
/// carriers; `space` is the product seen as a PN space in its own right.
struct ProductSpace {
  PNSpace space;
  /// Factor spaces as combined. For countable products these are the
  /// m-transformed factors (V_i, nu^i m_i, tau_i, tau_i*).
  std::vector<PNSpace> factors;
  Combiner combiner;
  std::vector<std::size_t> offsets;
  /// sum b_i for countable products.
  std::optional<double> sigma;
  /// 2^-K for Sigma-products.
  double tail_deficit = 0.0;
  /// Hypothesis campaigns and other construction evidence.
  nlohmann::json evidence = nlohmann::json::object();

  std::size_t size() const { return factors.size(); }
  std::span<const double> component(std::span<const double> p, std::size_t i) const;
  Vector concat(const std::vector<Vector>& parts) const;
};

/// nu(p, q) = tau1(nu_1(p), nu_2(q)). Both factors must share (tau, tau*) and
/// the grid. With certificate_trials > 0 the dominance campaigns tau* >> tau1
/// and tau1 >> tau are run and attached as evidence; construction never
/// depends on them.
ProductSpace tau_product(const PNSpace& v1, const PNSpace& v2, const TriangleFunction& tau1,
                         std::size_t certificate_trials = 0, std::uint64_t seed = 0);

/// (a) lift(M) of two simple norms equals the simple norm over the max-combined
/// norm; (b) tau(M) of them equals the simple norm over the sum-combined norm.
VerificationReport check_simple_product_identities(const Norm& norm1, std::size_t dim1, const Norm& norm2,
                                                   std::size_t dim2, const AnalyticDdf& g, std::size_t trials,
                                                   std::uint64_t seed, const Grid& grid = Grid{});

/// Runs check_serstnev on the tau1-product together with the dominance
/// campaigns tau1 >> tau_M and tau_M >> tau1, and records whether the outcomes
/// co-occur. The hypothesis tau1 >> tau (tau of the factors) is campaigned too;
/// when it fails the equivalence is reported as not applicable.
VerificationReport check_serstnev_product(const PNSpace& v1, const PNSpace& v2, const TriangleFunction& tau1,
                                          std::size_t trials, std::uint64_t seed,
                                          std::size_t dominance_trials = 200);

/// Number-level hypotheses T0 >> T and T* >> T0*, then verify_axioms on the
/// tau_{T0}-product under (tau_T, tau_{T*}). The product campaign is skipped
/// when a hypothesis fails.
VerificationReport check_menger_product(const PNSpace& v1, const PNSpace& v2, const TNorm& t, const TNorm& t0,
                                        std::size_t trials, std::uint64_t seed);

/// lift(T_G)-product of the alpha-simple factors (norm_i, G; alpha) under
/// (tau(T_G), lift(T_G)). alpha <= 1 is rejected.
ProductSpace tg_product(const Norm& norm1, std::size_t dim1, const Norm& norm2, std::size_t dim2,
                        const AnalyticDdf& g, double alpha, const Grid& grid = Grid{});

/// T_G(G(t/||p1||^alpha), G(t/||p2||^alpha)) = G(t/||p||_beta^alpha), beta = alpha/(alpha-1),
/// pointwise and on the grid, to 1e-9.
VerificationReport check_tg_product_identity(const ProductSpace& product, const Norm& norm1, const Norm& norm2,
                                             const AnalyticDdf& g, double alpha, std::size_t trials,
                                             std::uint64_t seed);

enum class CountableMode { lift, tau };

/// Product of K factors transformed by m_i: G_p = tau^inf over nu^i_{p_i} m_i,
/// with tau = lift(T) (under (lift T, lift T)) or tau(T) (under (tau T, lift T)).
/// Every m_i must be superadditive and have b(m_i) = b_i; otherwise throws
/// std::invalid_argument naming the offending index.
ProductSpace countable_product(const std::vector<PNSpace>& factors, const std::vector<double>& b,
                               const std::vector<MbFunction>& m, const TNorm& t,
                               CountableMode mode = CountableMode::lift, std::size_t superadditive_trials = 1000,
                               std::uint64_t seed = 0);

/// The iterate behind a countable product, with its certificate.
IterateResult countable_eval(const ProductSpace& product, std::span<const double> p);

/// G_p(x) = 1 for every grid abscissa x > sigma on sampled p.
VerificationReport check_lemma4(const ProductSpace& product, std::size_t trials, std::uint64_t seed);

/// nu = sum_{i<=K} 2^-i nu^i(p_i) + 2^-K eps_0 under (tau_W, W*-lift). Each
/// factor must satisfy tau_i >= tau_W and tau_i* <= W*-lift on sampled pairs;
/// otherwise throws std::invalid_argument.
ProductSpace sigma_product(const std::vector<PNSpace>& factors, std::size_t hypothesis_trials = 200,
                           std::uint64_t seed = 0);

/// The probabilistic metric F(p, q) = nu_{p-q}.
using PmView = std::function<Ddf(std::span<const double>, std::span<const double>)>;
PmView pm_view(const PNSpace& space);

/// pm_view of a binary tau1-product equals tau1 of the factor views, exactly.
VerificationReport check_pm_coincidence(const ProductSpace& product, const TriangleFunction& tau1,
                                        std::size_t trials, std::uint64_t seed);

/// lift(M)-product of equilateral(F) and equilateral(G): nu = M(F,G) when both
/// components are nonzero, F or G when one of them is theta.
VerificationReport check_equilateral_product(const Ddf& f, const Ddf& g, std::size_t dim, std::size_t trials,
                                             std::uint64_t seed);

}  // namespace pnspace

#endif
