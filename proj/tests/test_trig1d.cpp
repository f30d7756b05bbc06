#include <gtest/gtest.h>

#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "statsurf/trig1d.hpp"
#include "statsurf/verification.hpp"

using namespace statsurf;

TEST(Trig1D, TwoKnotClosedForm) {
  auto t = build_trig(Knots1D{{0, 1}, {0, 1}});
  EXPECT_NEAR(t->value({0.5, 0}), 0.5, 1e-15);
  EXPECT_NEAR(t->gradient({0.5, 0}).dx, 0.5 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(t->value({0.25, 0}), 0.5 - 0.5 * std::cos(std::numbers::pi / 4), 1e-15);
}

TEST(Trig1D, FlatCellIsReported) {
  auto t = build_trig(Knots1D{{0, 1, 2, 3}, {0, 1, 1, 0}});
  ASSERT_EQ(t->flat_cells(), std::vector<std::size_t>{2});
  EXPECT_EQ(t->gradient({1.5, 0}).dx, 0.0);
  const auto rep = scan_stationary(*t, {});
  ASSERT_EQ(rep.flat_regions.size(), 1u);
  EXPECT_NEAR(rep.flat_regions[0].bounds.xmin(), 1.0, 0.02);
  EXPECT_NEAR(rep.flat_regions[0].bounds.xmax(), 2.0, 0.02);
}

TEST(Trig1D, MatchesDefinitionOnRandomCells) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = oracle::random_knots(rng, 7, 0.2, 3.0, -2.0);
    auto z = oracle::random_values(rng, 7);
    auto t = build_trig(Knots1D{x, z});
    for (std::size_t i = 1; i < x.size(); ++i)
      for (double s : {0.05, 0.3, 0.5, 0.77, 0.99}) {
        const double xx = std::lerp(x[i - 1], x[i], s);
        const auto ref = oracle::trig_cell(x[i - 1], x[i], z[i - 1], z[i], xx);
        const auto got = t->eval_cell(i, xx);
        EXPECT_NEAR(got.value, ref.v, 1e-13);
        EXPECT_NEAR(got.d1, ref.d1, 1e-12);
        EXPECT_NEAR(got.d2, ref.d2, 1e-11);
      }
  }
}

TEST(Trig1D, ProblemBAndC1) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = oracle::random_knots(rng, 12);
    auto z = oracle::random_values(rng, 12);
    auto t = build_trig(Knots1D{x, z});
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_NEAR(t->value({x[i], 0}), z[i], 1e-12);
      EXPECT_LE(std::abs(t->gradient({x[i], 0}).dx), 1e-12);
    }
    EXPECT_LE(continuity_report(*t).max_first, 1e-10);
  }
}

TEST(Trig1D, ThreeKnotScan) {
  auto t = build_trig(Knots1D{{0, 1, 2}, {0, 1, 0}});
  const auto rep = scan_stationary(*t, {{0, 0}, {1, 0}, {2, 0}});
  ASSERT_EQ(rep.found.size(), 3u);
  EXPECT_EQ(rep.found[0].kind, Classification::Min);
  EXPECT_EQ(rep.found[1].kind, Classification::Max);
  EXPECT_EQ(rep.found[2].kind, Classification::Min);
  EXPECT_TRUE(rep.spurious.empty());
}

TEST(Trig1D, ProblemCWithDistinctValues) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = oracle::random_knots(rng, 9);
    auto z = oracle::random_values(rng, 9);
    auto t = build_trig(Knots1D{x, z});
    StationarySpec s{1, {}, z, ProblemMode::C};
    for (double v : x) s.points.push_back({v, 0});
    VerifyOptions opt;
    opt.scan.resolution = 4096;
    const auto rep = verify_problem(*t, s, opt);
    EXPECT_TRUE(rep.a);
    EXPECT_TRUE(*rep.b);
    EXPECT_TRUE(rep.c) << rep.evidence.spurious.size() << " spurious, " << rep.evidence.missed.size() << " missed";
  }
}

TEST(TrigC2, GeneratedValues) {
  EXPECT_EQ(generate_c2_values({0, 1, 2}, {0, 1}), (std::vector<double>{0, -1, 0}));
  EXPECT_EQ(generate_c2_values({0, 1, 3}, {0, 1}), (std::vector<double>{0, -1, 3}));
  EXPECT_EQ(generate_c2_values({0, 1.5, 3}, {2, 0}), (std::vector<double>{2, 2, 2}));
}

TEST(TrigC2, SecondDerivativeContinuousAndAlternating) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = oracle::random_knots(rng, 10);
    const double mu = oracle::random_values(rng, 1)[0];
    auto z = generate_c2_values(x, {0.3, mu});
    auto t = build_trig(Knots1D{x, z});
    double zmax = 0;
    for (double v : z) zmax = std::max(zmax, std::abs(v));
    EXPECT_LE(continuity_report(*t).max_second, 1e-9 * std::max(1.0, zmax));
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double h = x[i] - x[i - 1];
      EXPECT_NEAR((z[i] - z[i - 1]) / (h * h), (i % 2 ? -1.0 : 1.0) * mu, 1e-12);
    }
  }
}

TEST(TrigC2, MeanDeviation) {
  EXPECT_NEAR(mean_deviation({0, 1, 2}, 1), -0.5, 1e-15);
  EXPECT_EQ(mean_deviation({0, 1, 2}, 0), 0.0);
  // non-uniform spacing: values {0,-1,3}, direct mean of deviations 1
  EXPECT_NEAR(mean_deviation({0, 1, 3}, 1), 1.0, 1e-15);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = oracle::random_knots(rng, 2 + trial % 9);
    const double mu = oracle::random_values(rng, 1)[0];
    const auto z = generate_c2_values(x, {1.7, mu});
    double direct = 0;
    for (std::size_t i = 1; i < z.size(); ++i) direct += z[i] - z[0];
    direct /= static_cast<double>(z.size() - 1);
    EXPECT_NEAR(mean_deviation(x, mu), direct, 1e-12);
  }
}

TEST(Trig1D, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(7);
  auto x = oracle::random_knots(rng, 10);
  auto t = build_trig(Knots1D{x, oracle::random_values(rng, 10)});
  std::uniform_real_distribution<double> u(x.front() + 1e-3, x.back() - 1e-3);
  for (int i = 0; i < 100; ++i) {
    const double p = u(rng);
    const double an = t->gradient({p, 0}).dx;
    EXPECT_LE(std::abs(fd_gradient(*t, {p, 0}, 1e-6).dx - an), 1e-5 * std::max(1.0, std::abs(an)));
  }
}
