#ifndef PNSPACE_TOPOLOGY_HPP
#define PNSPACE_TOPOLOGY_HPP

#include <cstdint>
#include <span>

#include "pnspace/products.hpp"

namespace pnspace {

/// q in N_p(t), i.e. nu_{q-p}(t) > 1 - t. One evaluation of nu.
bool in_strong(const PNSpace& space, std::span<const double> p, std::span<const double> q, double t);

/// Strong neighborhood N_center(t).
struct StrongNbhd {
  const PNSpace* space;
  Vector center;
  double radius;

  bool contains(std::span<const double> q) const { return in_strong(*space, center, q, radius); }
};

/// Countable product: rejection-samples q in N_p(eps) from `budget` Gaussian
/// proposals and checks q_i in N_{p_i}(eps) for every factor. Fewer than
/// `samples` accepted proposals gives insufficient_samples. Also searches for
/// q agreeing with p on components 1..m and far on m+1 that lies outside
/// N_p(eps), i.e. a product neighborhood not contained in N_p(eps).
VerificationReport tau_product_containment(const ProductSpace& product, std::span<const double> p, double eps,
                                           std::size_t samples, std::size_t budget, std::uint64_t seed);

/// Sigma-product, both directions with n = ceil(log2(2/eps)) (capped at K):
///   (a) q_i in N_{p_i}(eps/2) for i <= n  implies  q in N_p(eps);
///   (b) q in N_p(delta), delta = eps 2^-n  implies  q_i in N_{p_i}(eps) for i <= n.
VerificationReport sigma_topology_equivalence(const ProductSpace& product, std::span<const double> p, double eps,
                                              std::size_t samples, std::size_t budget, std::uint64_t seed);

/// Sigma-product: q equal to p on the first component and far on every other
/// one still lies in N_p(eps) once eps > 1/2.
VerificationReport sigma_one_close_component(const ProductSpace& product, std::span<const double> p, double eps);

/// Strong neighborhoods of a space whose nu satisfies N3 under tau_W:
///   interior:   q in N_p(t) gives t' > 0 with N_q(t') inside N_p(t);
///   separation: p != q gives t with N_p(t) and N_q(t) disjoint;
/// plus monotonicity in t and symmetry, on sampled points.
VerificationReport check_neighborhood_properties(const PNSpace& space, std::size_t trials, std::uint64_t seed);

}  // namespace pnspace

#endif
