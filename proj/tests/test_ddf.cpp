#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pnspace/ddf.hpp"
#include "pnspace/sampling.hpp"

using namespace pnspace;

TEST(Grid, CellOfUsesLeftContinuousCells) {
  const Grid g{16, 4.0};
  EXPECT_EQ(g.cell_of(0.0), 0u);
  EXPECT_EQ(g.cell_of(0.25), 1u);
  EXPECT_EQ(g.cell_of(0.26), 2u);
  EXPECT_EQ(g.cell_of(4.0), 16u);
  EXPECT_EQ(g.cell_of(4.01), 17u);
  EXPECT_EQ(g.nearest(0.3), 1u);
  EXPECT_EQ(g.nearest(100.0), 16u);
}

TEST(Grid, FinestCommon) {
  const Grid a{16, 4.0}, b{8, 8.0};
  const Grid c = finest_common(a, b);
  EXPECT_DOUBLE_EQ(c.step(), 0.25);
  EXPECT_DOUBLE_EQ(c.x_max, 8.0);
}

TEST(Ddf, RejectsInvalidSequences) {
  const Grid g{4, 4.0};
  EXPECT_THROW(Ddf(g, {0.0, 0.5, 0.4, 0.6, 0.7}, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(Ddf(g, {0.1, 0.2, 0.3, 0.4, 0.5}, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(Ddf(g, {0.0, 0.2, 0.3, 0.4, 1.5}, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(Ddf(g, {0.0, 0.2, 0.3}, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(Ddf(g, {0.0, 0.2, 0.3, 0.4, 0.5}, 0.4, 1.0), std::domain_error);
}

TEST(Ddf, EvaluationTakesTheCellValue) {
  const Grid g{4, 4.0};
  const Ddf f(g, {0.0, 0.1, 0.2, 0.5, 0.9}, 0.95, 1.0);
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_EQ(f(1.0), 0.1);
  EXPECT_EQ(f(1.5), 0.2);
  EXPECT_EQ(f(4.0), 0.9);
  EXPECT_EQ(f(7.0), 0.95);
  EXPECT_EQ(f(kInf), 1.0);
  EXPECT_THROW(f(-1.0), std::domain_error);
  EXPECT_THROW(f(std::nan("")), std::domain_error);
}

TEST(Ddf, StepsAreLeftContinuous) {
  const Grid g{16, 4.0};
  const Ddf e = make_eps(1.0, g);
  EXPECT_EQ(e(1.0), 0.0);
  EXPECT_EQ(e(1.0001), 1.0);
  EXPECT_EQ(e(kInf), 1.0);
  const Ddf e0 = make_eps(0.0, g);
  EXPECT_EQ(e0(0.0), 0.0);
  EXPECT_EQ(e0(1e-9), 1.0);
  const Ddf einf = make_eps(kInf, g);
  EXPECT_TRUE(einf.is_infinite_step());
  EXPECT_EQ(einf(1e9), 0.0);
  // left-continuous at +inf as well
  EXPECT_EQ(einf(kInf), 0.0);
}

TEST(Ddf, JsonRoundTrip) {
  const Grid g{32, 2.0};
  const Ddf f = AnalyticDdf::ratio(0.5).sample(g);
  EXPECT_EQ(Ddf::from_json(f.to_json()), f);
  const Ddf einf = make_eps(kInf, g);
  EXPECT_EQ(Ddf::from_json(einf.to_json()), einf);
}

TEST(AnalyticDdf, ClosedForms) {
  const auto r = AnalyticDdf::ratio(2.0);
  EXPECT_DOUBLE_EQ(r(2.0), 0.5);
  EXPECT_DOUBLE_EQ(r.inverse(0.5), 2.0);
  EXPECT_EQ(r.inverse(1.0), kInf);
  const auto e = AnalyticDdf::exp_complement(1.0);
  EXPECT_NEAR(e(1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(e.inverse(e(0.7)), 0.7, 1e-12);
  const auto s = AnalyticDdf::step(1.0);
  EXPECT_EQ(s(1.0), 0.0);
  EXPECT_EQ(s(1.5), 1.0);
  EXPECT_DOUBLE_EQ(r.scaled(3.0)(6.0), r(2.0));
}

TEST(Mixture, WeightsAndDeficit) {
  const Grid g{64, 4.0};
  const std::vector<double> w{0.5, 0.25};
  const std::vector<Ddf> fs{make_eps(1.0, g), make_eps(2.0, g)};
  const auto m = mixture(w, fs);
  EXPECT_DOUBLE_EQ(m.tail_deficit, 0.25);
  EXPECT_DOUBLE_EQ(m.ddf(1.5), 0.5);
  EXPECT_DOUBLE_EQ(m.ddf(3.0), 0.75);
  const std::vector<double> bad{0.7, 0.6};
  EXPECT_THROW(mixture(bad, fs), std::domain_error);
  const std::vector<double> negative{-0.1, 0.6};
  EXPECT_THROW(mixture(negative, fs), std::domain_error);
}

TEST(Ddf, ResampleAndAlign) {
  const Ddf f = make_eps(1.0, Grid{16, 4.0});
  const Ddf g = make_eps(2.0, Grid{32, 4.0});
  const auto [a, b] = align(f, g);
  EXPECT_EQ(a.grid(), b.grid());
  EXPECT_EQ(a.grid().n, 32u);
  EXPECT_EQ(a(1.0), 0.0);
  EXPECT_EQ(a(1.2), 1.0);
  EXPECT_DOUBLE_EQ(sup_distance(f, g), 1.0);
  EXPECT_DOUBLE_EQ(sup_distance(f, f), 0.0);
}

TEST(Order, EpsStepsAreReverselyOrdered) {
  const Grid g{64, 8.0};
  EXPECT_TRUE(le(make_eps(2.0, g), make_eps(1.0, g)));
  EXPECT_FALSE(le(make_eps(1.0, g), make_eps(2.0, g)));
  EXPECT_TRUE(le(make_eps(kInf, g), make_eps(3.0, g)));
  EXPECT_TRUE(le(make_eps(3.0, g), make_eps(0.0, g)));
}

TEST(Order, ExcessOverShiftsByCells) {
  const Grid g{64, 8.0};
  const Ddf lower = make_eps(1.0, g);
  const Ddf upper = make_eps(1.0 + g.step(), g);
  EXPECT_GT(excess_over(lower, upper, 0, 1e-9), 0.0);
  EXPECT_LT(excess_over(lower, upper, 1, 1e-9), 0.0);
}

TEST(LeftRegularize, RunningMaxIsIdempotent) {
  const Grid g{4, 4.0};
  const std::vector<double> raw{0.3, 0.5, 0.2, 0.7, 1.4};
  const Ddf f = left_regularize(g, raw, 1.0, 1.0);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[2], 0.5);
  EXPECT_EQ(f[4], 1.0);
  EXPECT_EQ(left_regularize(f), f);
}

TEST(DistanceToEps0, StrongNeighborhoodTest) {
  const auto r = AnalyticDdf::ratio(1.0);
  // r(t) > 1 - t  <=>  t/(t+1) > 1 - t  <=>  t^2 + t - 1 > 0
  const double root = (std::sqrt(5.0) - 1.0) / 2.0;
  EXPECT_TRUE(dist_to_eps0(r, root + 1e-6));
  EXPECT_FALSE(dist_to_eps0(r, root - 1e-6));
}

TEST(Sampling, FamiliesStayInDeltaPlus) {
  const Grid g{128, 8.0};
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = trial_rng(7, i);
    EXPECT_TRUE(oracle::in_delta_plus(sample_ddf(rng, g)));
    EXPECT_TRUE(oracle::in_delta_plus(sample_step_ddf(rng, g)));
  }
}
