#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "statsurf/quartic2d.hpp"
#include "statsurf/verification.hpp"

using namespace statsurf;

namespace {

GridKnots2D random_grid(std::mt19937_64& rng, std::size_t n) {
  return GridKnots2D(oracle::random_knots(rng, n), oracle::random_knots(rng, n), oracle::random_values(rng, n * n));
}

/// Line-matching matrix rebuilt by restricting the cell polynomial to the
/// far lines and reading off monomial coefficients with a Vandermonde solve.
Eigen::MatrixXd line_matrix_by_restriction(double dx, double dy) {
  Eigen::MatrixXd d(8, 16);
  const double nodes[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  Eigen::Matrix<double, 5, 5> V;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) V(r, c) = std::pow(nodes[r], c);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      auto s = [&](double u, double v) { return std::pow(u, i) * std::pow(v, j); };
      Eigen::Matrix<double, 5, 1> along_x, along_y;
      for (int r = 0; r < 5; ++r) {
        along_x(r) = s(nodes[r], dy);  // s(u, dy) as a polynomial in u
        along_y(r) = s(dx, nodes[r]);  // s(dx, v) as a polynomial in v
      }
      const Eigen::Matrix<double, 5, 1> cx = V.fullPivLu().solve(along_x), cy = V.fullPivLu().solve(along_y);
      const int col = (i - 1) * 4 + (j - 1);
      for (int q = 1; q <= 4; ++q) {
        d(q - 1, col) = cx(q);
        d(3 + q, col) = cy(q);
      }
    }
  return d;
}

}  // namespace

TEST(BoundarySplines, ConstantGridIsFlat) {
  GridKnots2D g({0, 1, 2}, {0, 0.5, 2}, 4.0);
  auto b = boundary_splines(g);
  for (std::size_t k = 1; k < 3; ++k)
    for (std::size_t l = 1; l < 3; ++l) {
      EXPECT_EQ(b.gamma(k, l)[0], 4.0);
      for (int i = 1; i < 5; ++i) {
        EXPECT_EQ(b.gamma(k, l)[i], 0.0);
        EXPECT_EQ(b.beta(k, l)[i], 0.0);
      }
    }
}

TEST(BoundarySplines, MonomialFormOfTwoKnotLine) {
  GridKnots2D g({0, 1}, {0, 1}, std::vector<double>{0, 0, 1, 1});
  auto b = boundary_splines(g);
  // boundary lines are C2 quartics from the first curvature 0: the cell
  // anchored at x = 1 has p''(0) = 12 dz / dx^2 with dz = 0 - 1, so
  // p(t) = 1 - 6t^2 + d t^3 + e t^4 with p(-1) = p'(-1) = 0 gives d = -8, e = -3
  const Poly4 expect{1, 0, -6, -8, -3};
  for (std::size_t l = 0; l < 2; ++l)
    for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(b.gamma(1, l)[i], expect[i]);
}

TEST(QuarticTensor, ZeroGridIsZero) {
  auto s = build_tensor_c0(GridKnots2D({0, 1, 3}, {0, 2, 3}, 0.0));
  for (Point p : {Point{0.5, 0.5}, Point{2.2, 2.9}, Point{3, 3}}) {
    EXPECT_EQ(s->value(p), 0.0);
    EXPECT_EQ(s->gradient(p).norm(), 0.0);
  }
}

TEST(QuarticTensor, SingleCellCornerData) {
  GridKnots2D g({0, 1}, {0, 1}, std::vector<double>{0, 0, 0, 1});
  auto s = build_tensor_c0(g);
  EXPECT_NEAR(s->value({1, 1}), 1.0, 1e-15);
  for (Point p : {Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}}) {
    EXPECT_NEAR(s->value(p), p.x * p.y, 1e-12);
    EXPECT_LE(s->gradient(p).norm(), 1e-10);
  }
}

TEST(QuarticTensor, VertexContractWithRandomFreeBlocks) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_grid(rng, 5);
    QuarticTensorOptions opt{0.3, -0.2, random_free_blocks(g, rng)};
    auto s = build_tensor_c0(g, opt);
    for (std::size_t k = 0; k < g.nx(); ++k)
      for (std::size_t l = 0; l < g.ny(); ++l) {
        const Point p{g.x[k], g.y[l]};
        EXPECT_NEAR(s->value(p), g.at(k, l), 1e-10);
        EXPECT_LE(s->gradient(p).norm(), 1e-9);
        // every cell touching the vertex agrees
        for (std::size_t a : {k, k + 1})
          for (std::size_t b : {l, l + 1})
            if (a >= 1 && a < g.nx() && b >= 1 && b < g.ny()) {
              EXPECT_NEAR(s->eval_cell(a, b, p), g.at(k, l), 1e-10);
              EXPECT_LE(s->gradient_cell(a, b, p).norm(), 1e-9);
            }
      }
  }
}

TEST(QuarticTensor, DependentCoefficientsSolveLineSystem) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_grid(rng, 4);
    auto blocks = random_free_blocks(g, rng);
    auto s = build_tensor_c0(g, {0, 0, blocks});
    auto b = boundary_splines(g);
    for (std::size_t k = 1; k < g.nx(); ++k)
      for (std::size_t l = 1; l < g.ny(); ++l) {
        const auto r = line_matching_residuals(s->cell(k, l), b.cell(k, l), g.x[k - 1] - g.x[k], g.y[l - 1] - g.y[l]);
        for (double v : r) EXPECT_LE(std::abs(v), 1e-10);
      }
  }
}

TEST(QuarticTensor, ValueContinuousAcrossEdgesButNotGradient) {
  std::mt19937_64 rng(7);
  auto g = random_grid(rng, 6);
  auto s = build_tensor_c0(g);
  const auto rep = continuity_report(*s, 20);
  EXPECT_LE(rep.max_value, 1e-9);
  EXPECT_GT(rep.max_first, 1e-3);
}

TEST(QuarticTensor, EdgeValuesAgreeAtRandomPoints) {
  std::mt19937_64 rng(8);
  auto g = random_grid(rng, 5);
  auto s = build_tensor_c0(g, {0, 0, random_free_blocks(g, rng)});
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    const std::size_t k = 1 + static_cast<std::size_t>(u(rng) * 3);  // interior x line k, cells k and k+1
    const std::size_t l = 1 + static_cast<std::size_t>(u(rng) * 4);
    const double y = std::lerp(g.y[l - 1], g.y[l], u(rng));
    const Point p{g.x[k], y};
    EXPECT_NEAR(s->eval_cell(k, l, p), s->eval_cell(k + 1, l, p), 1e-10);
  }
}

TEST(QuarticTensor, HessianMatchesFiniteDifferencesInsideCells) {
  std::mt19937_64 rng(9);
  auto g = random_grid(rng, 4);
  auto s = build_tensor_c0(g, {0, 0, random_free_blocks(g, rng)});
  const Point p{0.5 * (g.x[1] + g.x[2]), 0.3 * g.y[1] + 0.7 * g.y[2]};
  const auto h = *s->hessian(p);
  const double e = 1e-6;
  EXPECT_NEAR(h.xx, (s->gradient({p.x + e, p.y}).dx - s->gradient({p.x - e, p.y}).dx) / (2 * e), 1e-5);
  EXPECT_NEAR(h.xy, (s->gradient({p.x, p.y + e}).dx - s->gradient({p.x, p.y - e}).dx) / (2 * e), 1e-5);
  EXPECT_NEAR(h.yy, (s->gradient({p.x, p.y + e}).dy - s->gradient({p.x, p.y - e}).dy) / (2 * e), 1e-5);
  EXPECT_FALSE(s->hessian({g.x[1], p.y}).has_value());
}

TEST(C1Certificate, RanksForUnitCell) {
  std::mt19937_64 rng(10);
  const auto c = c1_infeasibility_certificate(1, 1, C1BoundaryData::random(rng));
  EXPECT_EQ(c.rank_line_system, 7);
  EXPECT_EQ(c.rank_dependent_minor, 7);
  EXPECT_EQ(c.rank_c1_system, 5);
  EXPECT_GT(c.rank_augmented, 5);
  EXPECT_EQ(c.verdict, Verdict::Infeasible);
}

TEST(C1Certificate, ZeroDataIsFeasible) {
  const auto c = c1_infeasibility_certificate(1.3, 0.4, C1BoundaryData{});
  EXPECT_EQ(c.rank_c1_system, 5);
  EXPECT_EQ(c.rank_augmented, 5);
  EXPECT_EQ(c.verdict, Verdict::Feasible);
}

TEST(C1Certificate, RanksAgreeWithIndependentRoute) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double dx = u(rng), dy = u(rng);
    const Eigen::MatrixXd d = line_matching_matrix(-dx, -dy);
    const Eigen::MatrixXd d2 = line_matrix_by_restriction(-dx, -dy);
    EXPECT_LE((d - d2).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_EQ(oracle::lu_rank(d2), 7);
    EXPECT_EQ(oracle::lu_rank(c1_system_matrix(-dx, -dy)), 5);
    const auto c = c1_infeasibility_certificate(dx, dy, C1BoundaryData::random(rng));
    EXPECT_EQ(c.rank_line_system, 7);
    EXPECT_EQ(c.rank_c1_system, 5);
    EXPECT_EQ(c.verdict, Verdict::Infeasible);
  }
}

TEST(C1Certificate, RejectsNonPositiveSpacing) {
  EXPECT_THROW(c1_infeasibility_certificate(0, 1, {}), SpecError);
}

TEST(QuarticTensor, RejectsWrongFreeBlockCount) {
  GridKnots2D g({0, 1, 2}, {0, 1}, 0.0);
  EXPECT_THROW(build_tensor_c0(g, {0, 0, std::vector<FreeBlock>(1)}), SpecError);
}
