#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "statsurf/geometry.hpp"
#include "statsurf/quartic2d.hpp"
#include "statsurf/trig2d.hpp"

namespace statsurf {

// Scattered points in 2D: complete them to a lattice X x Y, build a grid
// spline, repeat in rotated frames and add the results,
//   F(x,y) = sum_k S_k(x cos a_k - y sin a_k, x sin a_k + y cos a_k).
// Every original point is a vertex of every summand's lattice, so each
// summand has zero gradient there. Completion vertices of different frames
// do not coincide, which tends to remove their stationary points from the sum.

inline Point rotate_point(Point p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {p.x * c - p.y * s, p.x * s + p.y * c};
}

/// How values are assigned to lattice vertices that are not original points.
struct CompletionStrategy {
  enum class Kind { Zero, NearestValue, Random };
  Kind kind = Kind::NearestValue;
  std::uint64_t seed = 0;
  double lo = -1.0;
  double hi = 1.0;

  static CompletionStrategy zero() { return {Kind::Zero}; }
  static CompletionStrategy nearest() { return {Kind::NearestValue}; }
  static CompletionStrategy random(std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    return {Kind::Random, seed, lo, hi};
  }
};

inline std::string to_string(const CompletionStrategy& s) {
  switch (s.kind) {
    case CompletionStrategy::Kind::Zero: return "zero";
    case CompletionStrategy::Kind::NearestValue: return "nearest";
    case CompletionStrategy::Kind::Random: return "random:" + std::to_string(s.seed);
  }
  return "?";
}

struct CompletedGrid {
  GridKnots2D grid;
  /// Lattice vertex (k,l) of every input point, in input order.
  std::vector<std::pair<std::size_t, std::size_t>> vertex_of_point;
  std::size_t completed = 0;
};

namespace detail {

/// Sorted coordinates with values closer than tol merged into the smaller one.
inline std::vector<double> merged_axis(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double c : v)
    if (out.empty() || c - out.back() > tol) out.push_back(c);
  return out;
}

inline std::size_t axis_index(const std::vector<double>& axis, double v, double tol) {
  auto it = std::lower_bound(axis.begin(), axis.end(), v - tol);
  return static_cast<std::size_t>(it - axis.begin());
}

}  // namespace detail

/// Completes scattered points to the lattice of their distinct coordinates.
/// Coordinates closer than 1e-9 (relative to the coordinate scale) merge.
/// When `extent` is given, its bounds are added as extra lattice lines so the
/// resulting spline covers it.
inline CompletedGrid complete_to_grid_indexed(const std::vector<Point>& points, const std::vector<double>& values,
                                              const CompletionStrategy& strategy,
                                              std::optional<Region> extent = {}) {
  if (points.empty()) throw SpecError("complete_to_grid: no points");
  if (values.size() != points.size()) throw SpecError("complete_to_grid: values and points differ in length");
  double scale = 1.0;
  for (const auto& p : points) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double tol = 1e-9 * scale;

  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  if (extent) {
    xs.insert(xs.end(), {extent->xmin(), extent->xmax()});
    ys.insert(ys.end(), {extent->ymin(), extent->ymax()});
  }
  CompletedGrid out;
  out.grid = GridKnots2D(detail::merged_axis(xs, tol), detail::merged_axis(ys, tol), 0.0);
  auto& g = out.grid;
  if (g.nx() < 2 || g.ny() < 2) throw SpecError("complete_to_grid: points span no rectangle");

  std::vector<char> original(g.nx() * g.ny(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t k = detail::axis_index(g.x, points[i].x, tol);
    const std::size_t l = detail::axis_index(g.y, points[i].y, tol);
    if (original[k * g.ny() + l] && g.at(k, l) != values[i])
      throw SpecError("complete_to_grid: two points share a lattice vertex with different values");
    original[k * g.ny() + l] = 1;
    g.at(k, l) = values[i];
    out.vertex_of_point.emplace_back(k, l);
  }

  std::mt19937_64 rng(strategy.seed);
  std::uniform_real_distribution<double> u(strategy.lo, strategy.hi);
  for (std::size_t k = 0; k < g.nx(); ++k)
    for (std::size_t l = 0; l < g.ny(); ++l) {
      if (original[k * g.ny() + l]) continue;
      ++out.completed;
      switch (strategy.kind) {
        case CompletionStrategy::Kind::Zero: g.at(k, l) = 0.0; break;
        case CompletionStrategy::Kind::Random: g.at(k, l) = u(rng); break;
        case CompletionStrategy::Kind::NearestValue: {
          const Point v{g.x[k], g.y[l]};
          std::size_t best = 0;
          for (std::size_t i = 1; i < points.size(); ++i)
            if (distance(points[i], v) < distance(points[best], v)) best = i;
          g.at(k, l) = values[best];
          break;
        }
      }
    }
  return out;
}

inline GridKnots2D complete_to_grid(const std::vector<Point>& points, const std::vector<double>& values,
                                    const CompletionStrategy& strategy) {
  return complete_to_grid_indexed(points, values, strategy).grid;
}

enum class BaseMethod { TrigTensor, QuarticTensor };

inline const char* to_string(BaseMethod b) { return b == BaseMethod::TrigTensor ? "trig" : "quartic"; }

class SuperpositionModel final : public SurfaceModel {
 public:
  struct Summand {
    double angle = 0.0;
    double cos = 1.0;
    double sin = 0.0;
    ModelPtr spline;
    std::size_t completed = 0;

    Point to_frame(Point p) const { return {p.x * cos - p.y * sin, p.x * sin + p.y * cos}; }
  };

  SuperpositionModel(Region region, std::vector<Summand> summands, BaseMethod base, StationarySpec spec,
                     std::vector<std::string> warnings)
      : region_(region),
        summands_(std::move(summands)),
        base_(base),
        spec_(std::move(spec)),
        warnings_(std::move(warnings)) {}

  const std::vector<Summand>& summands() const { return summands_; }
  BaseMethod base() const { return base_; }
  const StationarySpec& spec() const { return spec_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const Region& region() const override { return region_; }
  std::string method() const override { return "superpose"; }

  double value(Point p) const override {
    require_inside(p);
    double f = 0.0;
    for (const auto& s : summands_) f += s.spline->value(s.to_frame(p));
    return f;
  }

  Gradient gradient(Point p) const override {
    require_inside(p);
    Gradient g;
    for (const auto& s : summands_) {
      const Gradient q = s.spline->gradient(s.to_frame(p));
      g.dx += q.dx * s.cos + q.dy * s.sin;
      g.dy += -q.dx * s.sin + q.dy * s.cos;
    }
    return g;
  }

  std::optional<Hessian> hessian(Point p) const override {
    require_inside(p);
    Hessian h;
    for (const auto& s : summands_) {
      const auto q = s.spline->hessian(s.to_frame(p));
      if (!q) return std::nullopt;
      const double c = s.cos, n = s.sin;
      // R^T H R with R = [[c, -n], [n, c]]
      h.xx += c * c * q->xx + 2.0 * c * n * q->xy + n * n * q->yy;
      h.xy += -c * n * q->xx + (c * c - n * n) * q->xy + c * n * q->yy;
      h.yy += n * n * q->xx - 2.0 * c * n * q->xy + c * c * q->yy;
    }
    return h;
  }

 private:
  Region region_;
  std::vector<Summand> summands_;
  BaseMethod base_;
  StationarySpec spec_;
  std::vector<std::string> warnings_;
};

/// angle_k = k pi / (2m), k = 0..m-1.
inline std::vector<double> default_angles(std::size_t m) {
  std::vector<double> a(m);
  for (std::size_t k = 0; k < m; ++k) a[k] = static_cast<double>(k) * std::numbers::pi / (2.0 * static_cast<double>(m));
  return a;
}

/// Each summand interpolates z_i / m at the original points in mode B, the
/// given values (or zero) otherwise.
inline std::shared_ptr<const SuperpositionModel> build_superposition(const StationarySpec& spec,
                                                                     std::vector<double> angles,
                                                                     BaseMethod base = BaseMethod::TrigTensor,
                                                                     const CompletionStrategy& strategy = {},
                                                                     std::optional<Region> region = {}) {
  spec.validate();
  if (spec.dimension != 2) throw SpecError("superpose: needs a 2D point set");
  if (angles.empty()) throw SpecError("superpose: no angles");
  const Region reg = region.value_or(spec.default_region());
  spec.validate_in(reg);
  std::sort(angles.begin(), angles.end());

  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < angles.size(); ++i)
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      const double d = std::remainder(angles[j] - angles[i], std::numbers::pi);
      if (std::abs(d) < 1e-12) warnings.push_back("angles " + std::to_string(i) + " and " + std::to_string(j) +
                                                  " coincide modulo pi");
    }

  const double m = static_cast<double>(angles.size());
  std::vector<double> values(spec.points.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = spec.mode == ProblemMode::B ? spec.value_at(i) / m : spec.value_at(i);

  std::vector<SuperpositionModel::Summand> summands;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    SuperpositionModel::Summand s{angles[k], std::cos(angles[k]), std::sin(angles[k]), nullptr, 0};
    std::vector<Point> rotated;
    for (const auto& p : spec.points) rotated.push_back(s.to_frame(p));
    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    for (Point c : {Point{reg.xmin(), reg.ymin()}, Point{reg.xmax(), reg.ymin()}, Point{reg.xmin(), reg.ymax()},
                    Point{reg.xmax(), reg.ymax()}}) {
      const Point q = s.to_frame(c);
      xlo = std::min(xlo, q.x);
      xhi = std::max(xhi, q.x);
      ylo = std::min(ylo, q.y);
      yhi = std::max(yhi, q.y);
    }
    // a hair of slack absorbs rounding in the frame change
    const double slack = 1e-12 * reg.diameter();
    const Region extent = Region::box(xlo - slack, xhi + slack, ylo - slack, yhi + slack);
    CompletionStrategy strat = strategy;
    strat.seed = strategy.seed + k;
    auto done = complete_to_grid_indexed(rotated, values, strat, extent);
    s.completed = done.completed;
    if (base == BaseMethod::TrigTensor)
      s.spline = build_trig2(std::move(done.grid));
    else
      s.spline = build_tensor_c0(std::move(done.grid));
    summands.push_back(std::move(s));
  }
  return std::make_shared<SuperpositionModel>(reg, std::move(summands), base, spec, std::move(warnings));
}

}  // namespace statsurf
