#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "pnspace/spaces.hpp"

using namespace pnspace;

namespace {

const Grid kGrid{256, 16.0};
const AnalyticDdf kRatio = AnalyticDdf::ratio(1.0);

PNSpace simple_space(const TriangleFunction& tau, const TriangleFunction& tau_star) {
  return PNSpace{"simple-l2", 2, simple(Norm::l2(), kRatio), tau, tau_star, SpaceClass::pn, std::nullopt, kGrid};
}

}  // namespace

TEST(Norm, Values) {
  const Vector p{3.0, -4.0};
  EXPECT_DOUBLE_EQ(Norm::l1()(p), 7.0);
  EXPECT_DOUBLE_EQ(Norm::l2()(p), 5.0);
  EXPECT_DOUBLE_EQ(Norm::linf()(p), 4.0);
  const Vector q{3.0, 0.0, 0.0, 4.0};
  EXPECT_DOUBLE_EQ(Norm::max_combine(Norm::l2(), 2, Norm::l2())(q), 4.0);
  EXPECT_DOUBLE_EQ(Norm::sum_combine(Norm::l2(), 2, Norm::l2())(q), 7.0);
  EXPECT_DOUBLE_EQ(Norm::lbeta(2.0, Norm::l2(), 2, Norm::l2())(q), 5.0);
  EXPECT_THROW(Norm::parse("l3"), std::invalid_argument);
}

TEST(Norm, AxiomCampaigns) {
  EXPECT_TRUE(check_norm_axioms(Norm::l2(), 3, 1000, 1).passed());
  EXPECT_TRUE(check_norm_axioms(Norm::lbeta(3.0, Norm::l1(), 1, Norm::l2()), 3, 1000, 1).passed());
  // beta < 1: ((1,0) + (0,1)) has combined size 4 > 1 + 1.
  const Norm half = Norm::lbeta(0.5, Norm::l2(), 1, Norm::l2());
  EXPECT_DOUBLE_EQ(half(Vector{1.0, 1.0}), 4.0);
  EXPECT_FALSE(check_norm_axioms(half, 2, 1000, 1).passed());
}

TEST(ProbNorm, SimpleHandValues) {
  const auto nu = simple(Norm::l2(), kRatio);
  const Vector p{3.0, 4.0};
  EXPECT_DOUBLE_EQ(nu->value_at(p, 5.0, kGrid), 0.5);
  EXPECT_DOUBLE_EQ(nu->value_at(p, 15.0, kGrid), 0.75);
  const Ddf d = nu->eval(p, kGrid);
  EXPECT_DOUBLE_EQ(d(5.0), 0.5);
  const Vector zero{0.0, 0.0};
  EXPECT_EQ(nu->eval(zero, kGrid), make_eps(0.0, kGrid));
}

TEST(ProbNorm, AlphaSimpleAndExp) {
  const auto nu = alpha_simple(Norm::l2(), kRatio, 2.0);
  const Vector e1{1.0, 0.0}, two{2.0, 0.0};
  EXPECT_DOUBLE_EQ(nu->value_at(two, 1.0, kGrid), 0.2);
  EXPECT_DOUBLE_EQ(nu->value_at(e1, 1.0, kGrid), 0.5);
  EXPECT_THROW(alpha_simple(Norm::l2(), kRatio, 1.0), std::invalid_argument);
  const auto ex = exp_norm(Norm::l2());
  EXPECT_NEAR(ex->value_at(e1, 3.0, kGrid), std::exp(-1.0), 1e-15);
  EXPECT_EQ(ex->value_at(e1, 0.0, kGrid), 0.0);
}

TEST(ProbNorm, EquilateralIsConstantOffTheOrigin) {
  const Ddf f = kRatio.sample(kGrid);
  const auto nu = equilateral(f);
  EXPECT_EQ(nu->eval(Vector{0.1, 0.0}, kGrid), f);
  EXPECT_EQ(nu->eval(Vector{100.0, -3.0}, kGrid), f);
  EXPECT_EQ(nu->eval(Vector{0.0, 0.0}, kGrid), make_eps(0.0, kGrid));
}

TEST(ProbNorm, TransformedSamplesTheBaseClosedForm) {
  const auto base = simple(Norm::l2(), kRatio);
  const auto nu = transformed(base, MbFunction::power(2.0));
  const Vector p{1.0, 0.0};
  // nu_p(x) = G(x^2 / 1)
  EXPECT_DOUBLE_EQ(nu->value_at(p, 2.0, kGrid), 0.8);
  EXPECT_DOUBLE_EQ(nu->eval(p, kGrid)(2.0), 0.8);
}

TEST(Axioms, SimpleSpacesUnderTauM) {
  const auto s = simple_space(TriangleFunction::tau_m(), TriangleFunction::lift(TNorm::minimum()));
  EXPECT_TRUE(verify_axioms(s, 500, 1).passed());
  EXPECT_TRUE(check_serstnev(s, 500, 1).passed());
}

TEST(Axioms, SimpleSpaceUnderTauWWithTauStarTauM) {
  const auto s = simple_space(TriangleFunction::tau(TNorm::lukasiewicz()), TriangleFunction::tau_m());
  EXPECT_TRUE(verify_axioms(s, 300, 1).passed());
}

TEST(Axioms, AlphaSimpleFailsN3UnderTauM) {
  const PNSpace s{"alpha2", 2, alpha_simple(Norm::l2(), kRatio, 2.0), TriangleFunction::tau_m(),
                  TriangleFunction::lift(TNorm::minimum()), SpaceClass::pn, std::nullopt, kGrid};
  const auto r = verify_axioms(s, 500, 1);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.check("N3").passed());
  EXPECT_TRUE(r.check("N1").passed());
  const Vector e1{1.0, 0.0};
  const auto probe = probe_n3(s, e1, e1, 1.0);
  EXPECT_NEAR(probe.nu_sum, 0.2, 1e-9);
  EXPECT_NEAR(probe.tau_value, 1.0 / 3.0, 1e-9);
}

TEST(Axioms, AlphaSimpleIsMengerUnderTg) {
  const TNorm tg = make_tg(kRatio, 2.0, "ratio:1");
  const PNSpace s{"alpha2", 2, alpha_simple(Norm::l2(), kRatio, 2.0), TriangleFunction::tau(tg),
                  TriangleFunction::lift(tg), SpaceClass::menger, tg, kGrid};
  EXPECT_TRUE(verify_axioms(s, 500, 1).passed());
  EXPECT_TRUE(menger_alpha_condition(Norm::l2(), 2, kRatio, 2.0, *tg.generator(), 1000, 1).passed());
}

TEST(Axioms, ExpNormNeedsTheRightTriangleFunctions) {
  const auto lp = TriangleFunction::lift(TNorm::product());
  const PNSpace under_pi{"exp", 2, exp_norm(Norm::l2()), lp, lp, SpaceClass::pn, std::nullopt, kGrid};
  EXPECT_TRUE(verify_axioms(under_pi, 300, 1).passed());
  // p = q: exp(-2|p|) < min(exp(-|p|), exp(-|p|)).
  const auto lm = TriangleFunction::lift(TNorm::minimum());
  const PNSpace under_m{"exp", 2, exp_norm(Norm::l2()), lm, lm, SpaceClass::pn, std::nullopt, kGrid};
  EXPECT_FALSE(verify_axioms(under_m, 300, 1).passed());
}

TEST(Axioms, SerstnevFailsForTheAlphaSimpleSpace) {
  const PNSpace s{"alpha2", 2, alpha_simple(Norm::l2(), kRatio, 2.0), TriangleFunction::tau_m(),
                  TriangleFunction::lift(TNorm::minimum()), SpaceClass::pn, std::nullopt, kGrid};
  EXPECT_FALSE(check_serstnev(s, 300, 1).passed());
}

TEST(SampleVectors, AdversarialModesComeFirst) {
  Rng rng = trial_rng(0, 0);
  const auto s0 = sample_vectors(rng, 3, 0);
  EXPECT_EQ(s0.p.size(), 3u);
  std::set<std::string> modes;
  for (std::size_t i = 0; i < 12; ++i) {
    Rng r = trial_rng(0, i);
    modes.insert(sample_vectors(r, 3, i).mode);
  }
  EXPECT_TRUE(modes.count("p=q"));
}
