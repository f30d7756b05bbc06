#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "statsurf/geometry.hpp"

namespace statsurf {

// Degree-4 splines with prescribed values and zero slope at every knot.
//
// Cell i covers [x_{i-1}, x_i] and is anchored at its right knot:
//   s_i(x) = a + b t + c t^2/2 + d t^3/6 + e t^4/24,   t = x - x_i
// with a = z_i, b = 0 and, for the signed spacings
//   dx_i = x_{i-1} - x_i  (negative)   dz_i = z_{i-1} - z_i,
//   d = -6 (c - 4 dz/dx^2) / dx,   e = 12 (c - 6 dz/dx^2) / dx^2.
// The curvature c_i = s''(x_i) is free per cell; choosing it by the
// recurrence c_i = c_{i-1} + 12 dz_i / dx_i^2 makes the spline C2.

struct QuarticCell {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
};

enum class Smoothness { C0, C1, C2 };

struct QuarticEval {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

class QuarticSpline1D final : public SurfaceModel {
 public:
  QuarticSpline1D(Knots1D knots, std::vector<QuarticCell> cells, Smoothness tag)
      : knots_(std::move(knots)),
        cells_(std::move(cells)),
        tag_(tag),
        region_(Region::interval(knots_.x.front(), knots_.x.back())) {}

  const Knots1D& knots() const { return knots_; }
  /// cells()[i - 1] is cell i, i = 1..N.
  const std::vector<QuarticCell>& cells() const { return cells_; }
  Smoothness smoothness() const { return tag_; }

  const Region& region() const override { return region_; }
  std::string method() const override { return tag_ == Smoothness::C2 ? "quartic-c2" : "quartic"; }

  /// Cells are (x_{i-1}, x_i], x_0 joins cell 1. Each knot is then read at
  /// the anchor of its cell, where value, slope and curvature are exact.
  std::size_t owning_cell(double x) const {
    if (x < knots_.x.front() || x > knots_.x.back()) throw RegionError("quartic: x outside knots");
    auto it = std::lower_bound(knots_.x.begin(), knots_.x.end(), x);
    std::size_t i = static_cast<std::size_t>(it - knots_.x.begin());
    return std::max<std::size_t>(i, 1);
  }

  /// Evaluates cell `i` (1-based) at x without range checks.
  QuarticEval eval_cell(std::size_t i, double x) const {
    const auto& q = cells_[i - 1];
    const double t = x - knots_.x[i];
    return {q.a + t * (q.b + t * (q.c / 2.0 + t * (q.d / 6.0 + t * q.e / 24.0))),
            q.b + t * (q.c + t * (q.d / 2.0 + t * q.e / 6.0)),
            q.c + t * (q.d + t * q.e / 2.0)};
  }

  QuarticEval eval(double x) const { return eval_cell(owning_cell(x), x); }

  /// Second derivative at knot k as seen from the cell that owns it (the left one).
  double knot_curvature(std::size_t k) const { return eval(knots_.x[k]).d2; }

  double value(Point p) const override { return eval(p.x).value; }
  Gradient gradient(Point p) const override { return {eval(p.x).d1, 0.0}; }
  std::optional<Hessian> hessian(Point p) const override {
    const auto r = eval(p.x);
    if (tag_ != Smoothness::C2 && is_interior_knot(p.x)) return std::nullopt;
    return Hessian{r.d2, 0.0, 0.0};
  }

  std::vector<Interface> interfaces() const override {
    std::vector<Interface> out;
    for (std::size_t k = 1; k + 1 < knots_.x.size(); ++k) {
      const double w = std::min(knots_.x[k] - knots_.x[k - 1], knots_.x[k + 1] - knots_.x[k]);
      out.push_back({Interface::Normal::X, knots_.x[k], 0.0, 0.0, w / 2.0});
    }
    return out;
  }

 private:
  bool is_interior_knot(double x) const {
    return std::binary_search(knots_.x.begin() + 1, knots_.x.end() - 1, x);
  }

  Knots1D knots_;
  std::vector<QuarticCell> cells_;
  Smoothness tag_;
  Region region_;
};

namespace detail {

inline QuarticCell quartic_cell(double x_prev, double x_cur, double z_prev, double z_cur, double c) {
  const double dx = x_prev - x_cur;
  const double dz = z_prev - z_cur;
  const double r = dz / (dx * dx);
  return {z_cur, 0.0, c, -6.0 * (c - 4.0 * r) / dx, 12.0 * (c - 6.0 * r) / (dx * dx)};
}

/// S_i = sum_{j<=i} dz_j / dx_j^2 for i = 0..N (S_0 = 0).
inline std::vector<double> curvature_partial_sums(const Knots1D& k) {
  std::vector<double> s(k.x.size(), 0.0);
  for (std::size_t i = 1; i < k.x.size(); ++i) {
    const double dx = k.x[i - 1] - k.x[i];
    s[i] = s[i - 1] + (k.z[i - 1] - k.z[i]) / (dx * dx);
  }
  return s;
}

}  // namespace detail

/// One curvature per cell; the result is C1 with arbitrary second-derivative jumps.
inline std::shared_ptr<const QuarticSpline1D> build_quartic(Knots1D knots, const std::vector<double>& c) {
  knots.validate();
  if (c.size() != knots.cells()) throw SpecError("quartic: need one curvature per cell");
  std::vector<QuarticCell> cells(knots.cells());
  for (std::size_t i = 1; i <= knots.cells(); ++i)
    cells[i - 1] = detail::quartic_cell(knots.x[i - 1], knots.x[i], knots.z[i - 1], knots.z[i], c[i - 1]);
  return std::make_shared<QuarticSpline1D>(std::move(knots), std::move(cells), Smoothness::C1);
}

/// Knot curvatures c_0..c_N of the C2 family with parameter c0.
inline std::vector<double> c2_curvatures(const Knots1D& knots, double c0) {
  knots.validate();
  auto s = detail::curvature_partial_sums(knots);
  for (double& v : s) v = c0 + 12.0 * v;
  return s;
}

inline std::shared_ptr<const QuarticSpline1D> build_quartic_c2(Knots1D knots, double c0) {
  const auto c = c2_curvatures(knots, c0);
  std::vector<QuarticCell> cells(knots.cells());
  for (std::size_t i = 1; i <= knots.cells(); ++i)
    cells[i - 1] = detail::quartic_cell(knots.x[i - 1], knots.x[i], knots.z[i - 1], knots.z[i], c[i]);
  return std::make_shared<QuarticSpline1D>(std::move(knots), std::move(cells), Smoothness::C2);
}

enum class C0Strategy { AllMinima, AllMaxima, MeanCurvatureZero };

/// c0 for the C2 family. The extremum and the mean run over S_0..S_N, S_0 = 0
/// included, so the first knot obeys the same sign condition as the rest.
inline double choose_c0(const Knots1D& knots, C0Strategy strategy) {
  knots.validate();
  const auto s = detail::curvature_partial_sums(knots);
  switch (strategy) {
    case C0Strategy::AllMinima: return -12.0 * *std::min_element(s.begin(), s.end());
    case C0Strategy::AllMaxima: return -12.0 * *std::max_element(s.begin(), s.end());
    case C0Strategy::MeanCurvatureZero:
      return -12.0 * std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  }
  return 0.0;
}

/// Per-cell curvatures drawn uniformly from [lo, hi].
template <class Rng>
std::vector<double> random_curvatures(std::size_t cells, Rng& rng, double lo = -0.05, double hi = 0.05) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> c(cells);
  for (double& v : c) v = u(rng);
  return c;
}

}  // namespace statsurf
