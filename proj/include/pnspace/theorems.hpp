#ifndef PNSPACE_THEOREMS_HPP
#define PNSPACE_THEOREMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnspace/campaign.hpp"

namespace pnspace {

struct TheoremOptions {
  /// Overrides the trial count of every campaign in a bundle.
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  /// Overrides the grid resolution of every grid a bundle builds.
  std::optional<std::size_t> grid_n;
};

/// thm1..thm13, lemma1..lemma4, cor1..cor2, ex1..ex5, in that order.
const std::vector<std::string>& theorem_ids();
bool is_theorem_id(const std::string& id);

/// Runs the bundled campaigns for one id. Each campaign carries an expected
/// verdict (negative controls expect a failure); the bundle passes when every
/// campaign lands on its expectation. Sub-reports are kept under
/// details.reports. Throws std::invalid_argument for an unknown id.
VerificationReport run_theorem(const std::string& id, const TheoremOptions& options = {});

}  // namespace pnspace

#endif
