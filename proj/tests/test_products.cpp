#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pnspace/products.hpp"

using namespace pnspace;

namespace {

const Grid kGrid{256, 16.0};
const AnalyticDdf kRatio = AnalyticDdf::ratio(1.0);
const TriangleFunction kTauM = TriangleFunction::tau_m();
const TriangleFunction kLiftM = TriangleFunction::lift(TNorm::minimum());
const TriangleFunction kLiftPi = TriangleFunction::lift(TNorm::product());

PNSpace simple_space(const Norm& norm, std::size_t dim, const TriangleFunction& tau = kTauM,
                     const TriangleFunction& tau_star = kLiftM) {
  return PNSpace{"simple-" + norm.name(), dim, simple(norm, kRatio), tau, tau_star, SpaceClass::pn, std::nullopt,
                 kGrid};
}

PNSpace exp_space(const Grid& grid, const TriangleFunction& tau = kLiftPi) {
  return PNSpace{"exp-l2", 2, exp_norm(Norm::l2()), tau, kLiftPi, SpaceClass::pn, std::nullopt, grid};
}

ProductSpace dyadic_lift_product(std::size_t k) {
  const Grid grid{2048, 1.0};
  std::vector<PNSpace> fs(k, exp_space(grid));
  std::vector<double> bs;
  std::vector<MbFunction> ms;
  for (std::size_t i = 0; i < k; ++i) {
    bs.push_back(std::ldexp(1.0, -static_cast<int>(i + 1)));
    ms.push_back(MbFunction::blowup(bs.back()));
  }
  return countable_product(fs, bs, ms, TNorm::product(), CountableMode::lift, 200, 0);
}

}  // namespace

TEST(TauProduct, LiftMOfSimpleSpacesIsTheMaxNormSpace) {
  const auto product = tau_product(simple_space(Norm::l2(), 2), simple_space(Norm::l1(), 1), kLiftM);
  EXPECT_EQ(product.space.dim, 3u);
  const Vector p{3.0, 4.0, 2.0};
  // max(5, 2) = 5
  EXPECT_DOUBLE_EQ(product.space.value_at(p, 5.0), 0.5);
  EXPECT_DOUBLE_EQ(product.space.at(p)(5.0), 0.5);
}

TEST(TauProduct, TauMOfSimpleSpacesIsTheSumNormSpace) {
  const auto product = tau_product(simple_space(Norm::l2(), 2), simple_space(Norm::l1(), 1), kTauM);
  const Vector p{3.0, 4.0, 2.0};
  // 5 + 2 = 7, on the grid within a cell
  const Ddf d = product.space.at(p);
  const Ddf expected = simple(Norm::l1(), kRatio)->eval(Vector{7.0}, kGrid);
  EXPECT_LE(excess_over(d, expected, 1, 1e-9), 0.0);
  EXPECT_LE(excess_over(expected, d, 1, 1e-9), 0.0);
  EXPECT_TRUE(check_simple_product_identities(Norm::l2(), 2, Norm::l1(), 1, kRatio, 500, 1, kGrid).passed());
}

TEST(TauProduct, RejectsMismatchedFactors) {
  const auto a = simple_space(Norm::l2(), 2);
  auto b = simple_space(Norm::l1(), 1, TriangleFunction::tau(TNorm::product()));
  EXPECT_THROW(tau_product(a, b, kLiftM), std::invalid_argument);
}

TEST(TauProduct, ConcatAndComponents) {
  const auto product = tau_product(simple_space(Norm::l2(), 2), simple_space(Norm::l1(), 1), kLiftM);
  const Vector p = product.concat({Vector{1.0, 2.0}, Vector{3.0}});
  ASSERT_EQ(p.size(), 3u);
  const auto c1 = product.component(p, 1);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1[0], 3.0);
}

TEST(TauProduct, PmViewCoincides) {
  const auto product = tau_product(simple_space(Norm::l2(), 2), simple_space(Norm::l1(), 1), kTauM);
  EXPECT_TRUE(check_pm_coincidence(product, kTauM, 300, 1).passed());
}

TEST(TauProduct, SerstnevProductVerdicts) {
  const auto a = simple_space(Norm::l2(), 2), b = simple_space(Norm::l1(), 1);
  const auto tm = check_serstnev_product(a, b, kTauM, 200, 1);
  EXPECT_TRUE(tm.passed());
  EXPECT_EQ(tm.details.at("consistent"), true);
  const auto lm = check_serstnev_product(a, b, kLiftM, 200, 1);
  EXPECT_EQ(lm.details.at("product_serstnev"), "pass");
  EXPECT_EQ(lm.details.at("tauM>>tau1"), "fail");
}

TEST(TgProduct, WorkedValue) {
  const auto product = tg_product(Norm::l2(), 2, Norm::l2(), 2, kRatio, 2.0, kGrid);
  const Vector p{3.0, 0.0, 0.0, 4.0};
  // ||p||_beta = 5 for beta = 2: G(t / 25)
  for (double t : {1.0, 25.0, 50.0}) EXPECT_NEAR(product.space.value_at(p, t), kRatio(t / 25.0), 1e-9);
  EXPECT_THROW(tg_product(Norm::l2(), 2, Norm::l2(), 2, kRatio, 1.0, kGrid), std::domain_error);
}

TEST(CountableProduct, FactorsAreTransformedAndChecked) {
  const auto product = dyadic_lift_product(4);
  ASSERT_EQ(product.size(), 4u);
  EXPECT_DOUBLE_EQ(product.sigma.value(), 0.9375);
  EXPECT_EQ(product.space.dim, 8u);
  EXPECT_EQ(product.space.tau.name(), "lift:Pi");
  // A non-superadditive m is rejected by index.
  const Grid grid{256, 2.0};
  std::vector<PNSpace> fs(2, exp_space(grid));
  try {
    countable_product(fs, {kInf, kInf}, {MbFunction::power(2.0), MbFunction::sqrt()}, TNorm::product(),
                      CountableMode::lift, 500, 0);
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("m_2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(countable_product(fs, {0.5, 0.5}, {MbFunction::blowup(0.5), MbFunction::blowup(0.25)},
                                 TNorm::product(), CountableMode::lift, 100, 0),
               std::invalid_argument);
}

TEST(CountableProduct, SingleFactorIsTheTransformedFactor) {
  const auto product = dyadic_lift_product(1);
  const Vector p{0.3, -0.4};
  EXPECT_EQ(product.space.at(p), product.factors[0].at(p));
}

TEST(CountableProduct, TailBoundBeyondSigma) {
  const auto product = dyadic_lift_product(6);
  EXPECT_TRUE(check_lemma4(product, 300, 1).passed());
  const Vector p(product.space.dim, 5.0);
  const auto res = countable_eval(product, p);
  EXPECT_TRUE(res.certificate.lower_bound_holds.value_or(false));
  EXPECT_EQ(res.ddf(product.sigma.value() + 0.01), 1.0);
}

TEST(CountableProduct, LiftProductMatchesDirectProductOfFactors) {
  const auto product = dyadic_lift_product(3);
  const Vector p{0.1, 0.2, 1.0, 0.0, 0.0, 3.0};
  const Ddf g = product.space.at(p);
  for (std::size_t k = 1; k < g.grid().size(); k += 97) {
    const double x = g.grid().at(k);
    double expected = 1.0;
    for (std::size_t i = 0; i < 3; ++i) expected *= product.factors[i].at(product.component(p, i))(x);
    EXPECT_NEAR(g[k], expected, 1e-12) << "x=" << x;
  }
}

TEST(SigmaProduct, WeightsAndTail) {
  std::vector<PNSpace> fs(3, simple_space(Norm::l2(), 2));
  const auto product = sigma_product(fs, 100, 0);
  EXPECT_DOUBLE_EQ(product.tail_deficit, 0.125);
  EXPECT_EQ(product.space.tau.name(), "tau:W");
  EXPECT_EQ(product.space.tau_star.name(), "liftstar:W");
  const Vector p{3.0, 4.0, 0.0, 0.0, 0.0, 1.0};
  // 1/2 G(5/5) + 1/4 * 1 + 1/8 G(5/1) + 1/8
  const double expected = 0.5 * 0.5 + 0.25 + 0.125 * (5.0 / 6.0) + 0.125;
  EXPECT_NEAR(product.space.value_at(p, 5.0), expected, 1e-12);
}

TEST(SigmaProduct, AxiomsHoldForSmallK) {
  std::vector<PNSpace> fs(4, simple_space(Norm::l2(), 2));
  EXPECT_TRUE(verify_axioms(sigma_product(fs, 100, 0).space, 300, 2).passed());
}

TEST(SigmaProduct, RejectsFactorsOutsideTheHypothesis) {
  // tau of the drastic t-norm lies below tau_W.
  const auto drastic = TNorm::table("drastic", [](double x, double y) { return std::max(x, y) == 1.0 ? std::min(x, y) : 0.0; });
  const PNSpace below{"simple-l2", 2, simple(Norm::l2(), kRatio), TriangleFunction::tau(drastic),
                      TriangleFunction::liftstar(TConorm::bounded_sum()), SpaceClass::pn, std::nullopt, kGrid};
  std::vector<PNSpace> fs{simple_space(Norm::l2(), 2), below};
  EXPECT_THROW(sigma_product(fs, 100, 0), std::invalid_argument);
}

TEST(EquilateralProduct, MinOffTheAxes) {
  const Ddf f = kRatio.sample(kGrid);
  const Ddf g = AnalyticDdf::exp_complement(2.0).sample(kGrid);
  const auto r = check_equilateral_product(f, g, 2, 300, 1);
  EXPECT_TRUE(r.check("nonzero-components").passed());
  EXPECT_TRUE(r.check("one-theta-component").passed());
  EXPECT_FALSE(r.check("equilateral-M(F,G)").passed());
  EXPECT_TRUE(check_equilateral_product(f, f, 2, 300, 1).passed());
}

TEST(MengerProduct, HypothesisGatesTheProductCampaign) {
  const auto tau = TriangleFunction::tau(TNorm::product());
  const auto tau_star = TriangleFunction::taustar(TConorm::probabilistic_sum());
  auto a = simple_space(Norm::l2(), 2, tau, tau_star), b = simple_space(Norm::l1(), 1, tau, tau_star);
  a.declared = b.declared = SpaceClass::menger;
  a.menger_t = b.menger_t = TNorm::product();
  EXPECT_TRUE(check_menger_product(a, b, TNorm::product(), TNorm::minimum(), 200, 1).passed());
  const auto r = check_menger_product(a, b, TNorm::product(), TNorm::lukasiewicz(), 200, 1);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.details.at("product"), "skipped: hypothesis unmet");
}
