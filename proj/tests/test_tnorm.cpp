#include <gtest/gtest.h>

#include <cmath>

#include "pnspace/sampling.hpp"
#include "pnspace/spaces.hpp"
#include "pnspace/tnorm.hpp"

using namespace pnspace;

TEST(TNorm, BuiltinValues) {
  const auto m = TNorm::minimum(), p = TNorm::product(), w = TNorm::lukasiewicz();
  EXPECT_EQ(m(0.3, 0.7), 0.3);
  EXPECT_DOUBLE_EQ(p(0.5, 0.4), 0.2);
  EXPECT_DOUBLE_EQ(w(0.7, 0.6), 0.3);
  EXPECT_EQ(w(0.3, 0.6), 0.0);
  EXPECT_THROW(m(1.2, 0.5), std::domain_error);
  EXPECT_THROW(p(-0.1, 0.5), std::domain_error);
}

TEST(TConorm, BuiltinValuesAndDuals) {
  EXPECT_EQ(TConorm::maximum()(0.3, 0.7), 0.7);
  EXPECT_DOUBLE_EQ(TConorm::probabilistic_sum()(0.5, 0.4), 0.7);
  EXPECT_DOUBLE_EQ(TConorm::bounded_sum()(0.7, 0.6), 1.0);
  EXPECT_DOUBLE_EQ(TConorm::bounded_sum()(0.2, 0.3), 0.5);
  const auto ws = TConorm::dual_of(TNorm::lukasiewicz());
  const auto w = TNorm::dual_of(TConorm::bounded_sum());
  for (double x : {0.0, 0.1, 0.45, 0.9, 1.0})
    for (double y : {0.0, 0.3, 0.5, 1.0}) {
      EXPECT_NEAR(ws(x, y), TConorm::bounded_sum()(x, y), 1e-15);
      EXPECT_NEAR(w(x, y), TNorm::lukasiewicz()(x, y), 1e-15);
    }
}

TEST(TNorm, AxiomCampaignsPassForBuiltins) {
  for (const auto& t : {TNorm::minimum(), TNorm::product(), TNorm::lukasiewicz(),
                        make_tg(AnalyticDdf::ratio(1.0), 2.0, "ratio:1")})
    EXPECT_TRUE(check_tnorm_axioms(t, 2000, 3).passed()) << t.name();
}

TEST(TNorm, AxiomCampaignCatchesANonAssociativeOperation) {
  const auto bad = TNorm::table("mean-ish", [](double x, double y) { return x * y * (1.0 + (1.0 - x) * (1.0 - y)); });
  const auto r = check_tnorm_axioms(bad, 2000, 3);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.check("associativity").passed());
}

TEST(TNorm, TgMatchesItsClosedForm) {
  // G(x) = x/(x+1), alpha = 2: G^{-1}(y) = y/(1-y), exponent 1/(1-alpha) = -1.
  const auto g = AnalyticDdf::ratio(1.0);
  const TNorm tg = make_tg(g, 2.0, "ratio:1");
  for (double x : {0.1, 0.4, 0.8})
    for (double y : {0.2, 0.5, 0.95}) {
      const double a = 1.0 / (x / (1.0 - x)), b = 1.0 / (y / (1.0 - y));
      EXPECT_NEAR(tg(x, y), g(1.0 / (a + b)), 1e-12);
    }
  EXPECT_NEAR(tg(0.7, 1.0), 0.7, 1e-12);
  EXPECT_EQ(tg(0.0, 0.7), 0.0);
  EXPECT_EQ(tg.name(), "TG:ratio:1:2");
  EXPECT_THROW(make_tg(g, 1.0), std::domain_error);
}

TEST(TNorm, TgIsStrictlyBelowMinimumInside) {
  const TNorm tg = make_tg(AnalyticDdf::ratio(1.0), 2.0);
  EXPECT_LT(tg(0.5, 0.5), 0.5);
}

TEST(Dyadic, HandComputedSides) {
  const std::vector<double> ones{1.0, 1.0}, a{1.0, 0.0}, b{0.0, 1.0};
  auto s = dyadic_sides(ones, ones);
  EXPECT_DOUBLE_EQ(s.w_lhs, 0.5);
  EXPECT_DOUBLE_EQ(s.w_rhs, 0.75);
  EXPECT_DOUBLE_EQ(s.wstar_lhs, 1.0);
  EXPECT_DOUBLE_EQ(s.wstar_rhs, 0.75);
  s = dyadic_sides(a, b);
  EXPECT_DOUBLE_EQ(s.w_lhs, 0.0);
  EXPECT_DOUBLE_EQ(s.w_rhs, 0.0);
  EXPECT_DOUBLE_EQ(s.wstar_lhs, 0.75);
  EXPECT_DOUBLE_EQ(s.wstar_rhs, 0.75);
}

TEST(Dyadic, InequalitiesHoldOnRandomSequences) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng = trial_rng(11, i);
    std::vector<double> a(12), b(12);
    for (auto& x : a) x = uniform(rng);
    for (auto& x : b) x = uniform(rng);
    const auto s = dyadic_sides(a, b);
    EXPECT_LE(s.w_lhs, s.w_rhs + 1e-12);
    EXPECT_GE(s.wstar_lhs, s.wstar_rhs - 1e-12);
  }
  EXPECT_TRUE(lemma2_lemma3_check(5000, 16, 1).passed());
}

TEST(NumberDominance, MinimumDominatesEverything) {
  const auto op = [](const TNorm& t) { return BinaryOp([t](double x, double y) { return t(x, y); }); };
  const auto m = TNorm::minimum();
  for (const auto& t : {TNorm::product(), TNorm::lukasiewicz()})
    EXPECT_TRUE(check_number_dominance("M", op(m), t.name(), op(t), 5000, 2).passed());
  EXPECT_TRUE(check_number_dominance("Pi", op(TNorm::product()), "Pi", op(TNorm::product()), 5000, 2).passed());
  const auto r = check_number_dominance("W", op(TNorm::lukasiewicz()), "M", op(m), 5000, 2);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.witness.is_null());
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  const auto a = check_tnorm_axioms(TNorm::lukasiewicz(), 3000, 9).to_json();
  const unsigned before = worker_threads();
  set_worker_threads(3);
  const auto b = check_tnorm_axioms(TNorm::lukasiewicz(), 3000, 9).to_json();
  set_worker_threads(before);
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Campaign, ReplayReproducesTheWitnessTrial) {
  Campaign c;
  c.checks = {"below-half"};
  c.trial = [](std::size_t, Rng& rng) {
    const double x = uniform(rng);
    return std::vector<TrialOutcome>{{x - 0.9, nlohmann::json{{"x", x}}}};
  };
  const auto results = c.run(200, 5);
  ASSERT_EQ(results[0].verdict, Verdict::fail);
  const auto again = c.replay(results[0].worst_trial, 5);
  EXPECT_EQ(again[0].violation, results[0].worst_violation);
}

TEST(Campaign, NoCountedTrialsIsInsufficient) {
  Campaign c;
  c.checks = {"never"};
  c.trial = [](std::size_t, Rng&) { return std::vector<TrialOutcome>{TrialOutcome::skipped()}; };
  const auto results = c.run(10, 0);
  EXPECT_EQ(results[0].verdict, Verdict::insufficient_samples);
}
