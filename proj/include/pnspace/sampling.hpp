#ifndef PNSPACE_SAMPLING_HPP
#define PNSPACE_SAMPLING_HPP

#include <vector>

#include "pnspace/campaign.hpp"
#include "pnspace/ddf.hpp"

namespace pnspace {

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
double log_uniform(Rng& rng, double lo, double hi);
double standard_normal(Rng& rng);

/// Mixed d.d.f. family: eps_0, single steps, convex mixtures of one to four
/// steps, and sampled ratio / exponential laws with log-uniform scale.
Ddf sample_ddf(Rng& rng, const Grid& grid);

/// Step or mixture of steps only, all breakpoints on the grid.
Ddf sample_step_ddf(Rng& rng, const Grid& grid);

/// Standard normal coordinates.
std::vector<double> sample_vector(Rng& rng, std::size_t dim);

}  // namespace pnspace

#endif
