#include "pnspace/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pnspace {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::atomic<unsigned> g_workers{0};

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

struct Best {
  double violation = -std::numeric_limits<double>::infinity();
  std::size_t trial = 0;
  nlohmann::json witness;
  std::size_t counted = 0;
  bool seen = false;

  void merge(double v, std::size_t t, const nlohmann::json& w) {
    if (!seen || v > violation || (v == violation && t < trial)) {
      violation = v;
      trial = t;
      witness = w;
      seen = true;
    }
  }
};

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::insufficient_samples: return "insufficient-samples";
  }
  return "fail";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "insufficient-samples") return Verdict::insufficient_samples;
  throw std::invalid_argument("unknown verdict: " + s);
}

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j{{"name", name},
                   {"verdict", to_string(verdict)},
                   {"trials", trials},
                   {"counted", counted},
                   {"worst_violation", finite_or_null(worst_violation)}};
  if (verdict == Verdict::fail) {
    j["witness"] = witness;
    j["witness_trial"] = worst_trial;
  }
  return j;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  if (const auto* c = find(name)) return *c;
  throw std::out_of_range("report " + campaign + " has no check " + name);
}

void VerificationReport::summarize() {
  verdict = Verdict::pass;
  worst_violation = -std::numeric_limits<double>::infinity();
  witness = nullptr;
  bool insufficient = false;
  for (const auto& c : checks) {
    worst_violation = std::max(worst_violation, c.worst_violation);
    if (c.verdict == Verdict::fail && verdict != Verdict::fail) {
      verdict = Verdict::fail;
      witness = {{"check", c.name}, {"trial", c.worst_trial}, {"inputs", c.witness}};
    }
    if (c.verdict == Verdict::insufficient_samples) insufficient = true;
  }
  if (verdict == Verdict::pass && insufficient) verdict = Verdict::insufficient_samples;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) cs.push_back(c.to_json());
  nlohmann::json j{{"campaign", campaign},
                   {"anchor", anchor},
                   {"verdict", to_string(verdict)},
                   {"trials", trials},
                   {"seed", seed},
                   {"worst_violation", finite_or_null(worst_violation)},
                   {"checks", cs},
                   {"note", "pass means no counterexample was found in the sampled trials"}};
  if (verdict == Verdict::fail) j["witness"] = witness;
  if (!details.empty()) j["details"] = details;
  return j;
}

VerificationReport make_report(std::string campaign, std::string anchor, std::size_t trials,
                               std::uint64_t seed, std::vector<CheckResult> checks) {
  VerificationReport r;
  r.campaign = std::move(campaign);
  r.anchor = std::move(anchor);
  r.trials = trials;
  r.seed = seed;
  r.checks = std::move(checks);
  r.summarize();
  return r;
}

void set_worker_threads(unsigned n) { g_workers = n; }

unsigned worker_threads() {
  const unsigned n = g_workers.load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialOutcome> Campaign::replay(std::size_t trial_index, std::uint64_t seed) const {
  Rng rng = trial_rng(seed, trial_index);
  return trial(trial_index, rng);
}

std::vector<CheckResult> Campaign::run(std::size_t trials, std::uint64_t seed) const {
  if (trials == 0) throw std::invalid_argument("campaign: trials must be at least 1");
  const std::size_t m = checks.size();
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_threads(), trials));

  std::vector<std::vector<Best>> local(workers, std::vector<Best>(m));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&](unsigned w) {
    try {
      for (std::size_t t = next++; t < trials; t = next++) {
        Rng rng = trial_rng(seed, t);
        auto outcomes = trial(t, rng);
        if (outcomes.size() != m) throw std::logic_error("campaign: trial returned wrong outcome count");
        for (std::size_t c = 0; c < m; ++c) {
          auto& b = local[w][c];
          if (!outcomes[c].counted) continue;
          ++b.counted;
          b.merge(outcomes[c].violation, t, outcomes[c].witness);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = trials;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<CheckResult> out(m);
  for (std::size_t c = 0; c < m; ++c) {
    Best merged;
    for (unsigned w = 0; w < workers; ++w) {
      const auto& b = local[w][c];
      merged.counted += b.counted;
      if (b.seen) merged.merge(b.violation, b.trial, b.witness);
    }
    auto& r = out[c];
    r.name = checks[c];
    r.trials = trials;
    r.counted = merged.counted;
    r.worst_violation = merged.violation;
    r.worst_trial = merged.trial;
    if (merged.counted == 0) {
      r.verdict = Verdict::insufficient_samples;
    } else if (merged.violation > 0.0) {
      r.verdict = Verdict::fail;
      r.witness = merged.witness;
      r.witness["trial"] = merged.trial;
      r.witness["seed"] = seed;
    } else {
      r.verdict = Verdict::pass;
    }
  }
  return out;
}

}  // namespace pnspace
