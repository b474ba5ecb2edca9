#include <gtest/gtest.h>

#include <cmath>

#include "pnspace/transform.hpp"

using namespace pnspace;

TEST(MbFunction, ValuesAndInverses) {
  const auto p2 = MbFunction::power(2.0);
  EXPECT_DOUBLE_EQ(p2(3.0), 9.0);
  EXPECT_DOUBLE_EQ(p2.inverse(16.0), 4.0);
  EXPECT_FALSE(p2.finite_b());
  const auto bu = MbFunction::blowup(0.5);
  EXPECT_DOUBLE_EQ(bu(0.25), 1.0);
  EXPECT_EQ(bu(0.5), kInf);
  EXPECT_EQ(bu(0.7), kInf);
  EXPECT_DOUBLE_EQ(bu.inverse(1.0), 0.25);
  EXPECT_DOUBLE_EQ(bu.inverse(kInf), 0.5);
  EXPECT_DOUBLE_EQ(bu.b(), 0.5);
  EXPECT_DOUBLE_EQ(MbFunction::sqrt()(9.0), 3.0);
  EXPECT_DOUBLE_EQ(MbFunction::identity()(2.5), 2.5);
}

TEST(MbFunction, Parse) {
  EXPECT_EQ(MbFunction::parse("pow:3").name(), "pow:3");
  EXPECT_DOUBLE_EQ(MbFunction::parse("blowup:0.25").b(), 0.25);
  EXPECT_EQ(MbFunction::parse("sqrt").name(), "sqrt");
  EXPECT_THROW(MbFunction::parse("cube"), std::invalid_argument);
  EXPECT_THROW(MbFunction::parse("pow:0"), std::domain_error);
  EXPECT_THROW(MbFunction::parse("blowup:-1"), std::domain_error);
}

TEST(Superadditivity, HandValues) {
  // m(3+4) = 49 >= 9 + 16
  const auto p2 = MbFunction::power(2.0);
  EXPECT_GE(p2(7.0), p2(3.0) + p2(4.0));
  // sqrt(1+1) < 1 + 1
  const auto s = MbFunction::sqrt();
  EXPECT_LT(s(2.0), s(1.0) + s(1.0));
}

TEST(Superadditivity, CampaignVerdicts) {
  for (const auto& m : {MbFunction::power(2.0), MbFunction::power(3.0), MbFunction::blowup(1.0),
                        MbFunction::identity()})
    EXPECT_TRUE(check_superadditive(m, 3000, 1).passed()) << m.name();
  const auto r = check_superadditive(MbFunction::sqrt(), 3000, 1);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.witness.is_null());
}

TEST(MTransform, ComposesOnTheGrid) {
  const Grid g{64, 4.0};
  const Ddf f = AnalyticDdf::ratio(1.0).sample(g);
  const Ddf fm = m_transform(f, MbFunction::power(2.0));
  // (Fm)(x) = F(x^2) at every abscissa, read from F with the cell convention.
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_DOUBLE_EQ(fm[k], f(g.at(k) * g.at(k)));
}

TEST(MTransform, FiniteBJumpsToOneAfterB) {
  const Grid g{64, 4.0};
  const Ddf f = AnalyticDdf::ratio(1.0).sample(g);
  const Ddf fm = m_transform(f, MbFunction::blowup(1.0));
  EXPECT_DOUBLE_EQ(fm(0.5), f(1.0));
  EXPECT_EQ(fm(1.0), f.tail());
  EXPECT_EQ(fm(1.1), 1.0);
  EXPECT_EQ(fm.tail(), 1.0);
}

TEST(MTransform, StepMapsToThePreimage) {
  const Grid g{64, 4.0};
  const Ddf e = make_eps(1.0, g);
  const Ddf em = m_transform(e, MbFunction::power(2.0));
  EXPECT_EQ(em(1.0), 0.0);
  EXPECT_EQ(em(1.0 + g.step()), 1.0);
}

TEST(TauSuperadditivity, AgreesWithPlainSuperadditivity) {
  for (const auto& m : {MbFunction::power(2.0), MbFunction::sqrt()}) {
    const auto r = check_tau_superadditive(m, TriangleFunction::tau(TNorm::product()), 150, 2);
    EXPECT_EQ(r.passed(), m.name() != "sqrt");
    EXPECT_TRUE(r.details.at("agrees_with_superadditive").get<bool>());
  }
}
