#ifndef PNSPACE_CAMPAIGN_HPP
#define PNSPACE_CAMPAIGN_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace pnspace {

using Rng = std::mt19937_64;

/// Deterministic per-trial generator derived from (seed, trial index).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

enum class Verdict { pass, fail, insufficient_samples };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Outcome of one property on one trial. `violation` > 0 means the property
/// failed by that much beyond its tolerance.
struct TrialOutcome {
  double violation = -std::numeric_limits<double>::infinity();
  nlohmann::json witness;
  bool counted = true;

  static TrialOutcome skipped() { return TrialOutcome{-std::numeric_limits<double>::infinity(), {}, false}; }
};

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::size_t trials = 0;
  std::size_t counted = 0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::size_t worst_trial = 0;
  nlohmann::json witness;

  bool passed() const { return verdict == Verdict::pass; }
  nlohmann::json to_json() const;
};

/// Result of a randomized property campaign. A pass only says that no
/// counterexample was found among the sampled trials.
struct VerificationReport {
  std::string campaign;
  std::string anchor;
  Verdict verdict = Verdict::pass;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<CheckResult> checks;
  nlohmann::json witness;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return verdict == Verdict::pass; }
  const CheckResult& check(const std::string& name) const;
  const CheckResult* find(const std::string& name) const;

  /// Recomputes verdict, worst violation and witness from `checks`.
  void summarize();

  nlohmann::json to_json() const;
};

/// A campaign is a list of named properties and a trial function producing one
/// outcome per property for a given trial index. Trials run on worker threads;
/// merging keeps the largest violation (lowest trial index on ties), so the
/// result does not depend on scheduling.
struct Campaign {
  std::vector<std::string> checks;
  std::function<std::vector<TrialOutcome>(std::size_t trial, Rng& rng)> trial;

  std::vector<CheckResult> run(std::size_t trials, std::uint64_t seed) const;
  /// Re-executes a single trial with the same derived generator.
  std::vector<TrialOutcome> replay(std::size_t trial, std::uint64_t seed) const;
};

VerificationReport make_report(std::string campaign, std::string anchor, std::size_t trials,
                               std::uint64_t seed, std::vector<CheckResult> checks);

/// Number of worker threads campaigns use (defaults to hardware concurrency).
void set_worker_threads(unsigned n);
unsigned worker_threads();

}  // namespace pnspace

#endif
