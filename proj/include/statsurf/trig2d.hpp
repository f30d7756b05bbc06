#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "statsurf/geometry.hpp"
#include "statsurf/trig1d.hpp"

namespace statsurf {

// Product-of-cosines surface. On cell (k,l), with corner values
// p = z(k-1,l-1), q = z(k,l-1), r = z(k-1,l), s = z(k,l),
//   t(x,y) = P00 + P10 cos(xi) + P01 cos(eta) + P11 cos(xi) cos(eta)
//   xi = pi (x - x_{k-1}) / hx,   eta = pi (y - y_{l-1}) / hy
//   P00 = (p+q+r+s)/4   P10 = (p+r-q-s)/4   P01 = (p+q-r-s)/4   P11 = (p+s-q-r)/4.
// The sum form exists for every corner data; a product
// [a + b cos xi][A + B cos eta] would additionally need p*s == q*r.

struct TrigCell2D {
  double p00 = 0.0;
  double p10 = 0.0;
  double p01 = 0.0;
  double p11 = 0.0;

  static TrigCell2D from_corners(double p, double q, double r, double s) {
    return {(p + q + r + s) / 4.0, (p + r - q - s) / 4.0, (p + q - r - s) / 4.0, (p + s - q - r) / 4.0};
  }

  /// True when the cell has a stationary point strictly inside it.
  bool false_stationary_risk() const { return std::abs(p10) < std::abs(p11) && std::abs(p01) < std::abs(p11); }
};

class TrigSpline2D final : public SurfaceModel {
 public:
  explicit TrigSpline2D(GridKnots2D grid) : grid_(std::move(grid)), region_(grid_.region()) {
    const std::size_t K = grid_.nx() - 1, L = grid_.ny() - 1;
    cells_.reserve(K * L);
    for (std::size_t k = 1; k <= K; ++k)
      for (std::size_t l = 1; l <= L; ++l)
        cells_.push_back(TrigCell2D::from_corners(grid_.at(k - 1, l - 1), grid_.at(k, l - 1),
                                                  grid_.at(k - 1, l), grid_.at(k, l)));
  }

  const GridKnots2D& grid() const { return grid_; }
  const TrigCell2D& cell(std::size_t k, std::size_t l) const { return cells_[(k - 1) * (grid_.ny() - 1) + (l - 1)]; }

  /// Cells (1-based) whose coefficients admit an interior stationary point.
  std::vector<std::pair<std::size_t, std::size_t>> risky_cells() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 1; k < grid_.nx(); ++k)
      for (std::size_t l = 1; l < grid_.ny(); ++l)
        if (cell(k, l).false_stationary_risk()) out.emplace_back(k, l);
    return out;
  }

  /// The interior stationary point of a risky cell.
  std::optional<Point> interior_stationary_point(std::size_t k, std::size_t l) const {
    const auto& c = cell(k, l);
    if (!c.false_stationary_risk()) return std::nullopt;
    const double xi = std::acos(-c.p01 / c.p11);
    const double eta = std::acos(-c.p10 / c.p11);
    const double hx = grid_.x[k] - grid_.x[k - 1], hy = grid_.y[l] - grid_.y[l - 1];
    return Point{grid_.x[k - 1] + hx * xi / std::numbers::pi, grid_.y[l - 1] + hy * eta / std::numbers::pi};
  }

  const Region& region() const override { return region_; }
  std::string method() const override { return "trig2d"; }

  std::pair<std::size_t, std::size_t> owning_cell(Point p) const {
    require_inside(p);
    return {owner(grid_.x, p.x), owner(grid_.y, p.y)};
  }

  struct Eval {
    double value = 0.0;
    Gradient gradient;
    Hessian hessian;
  };

  Eval eval_cell(std::size_t k, std::size_t l, Point p) const {
    const double hx = grid_.x[k] - grid_.x[k - 1], hy = grid_.y[l] - grid_.y[l - 1];
    const auto xi = detail::half_turn(p.x - grid_.x[k - 1], grid_.x[k] - p.x, hx);
    const auto eta = detail::half_turn(p.y - grid_.y[l - 1], grid_.y[l] - p.y, hy);
    const double wx = std::numbers::pi / hx, wy = std::numbers::pi / hy;
    const auto& c = cell(k, l);
    const double bx = c.p10 + c.p11 * eta.cos;  // coefficient of cos(xi)
    const double by = c.p01 + c.p11 * xi.cos;   // coefficient of cos(eta)
    Eval e;
    e.value = c.p00 + c.p10 * xi.cos + c.p01 * eta.cos + c.p11 * xi.cos * eta.cos;
    e.gradient = {-wx * xi.sin * bx, -wy * eta.sin * by};
    e.hessian = {-wx * wx * xi.cos * bx, wx * wy * xi.sin * eta.sin * c.p11, -wy * wy * eta.cos * by};
    return e;
  }

  double value(Point p) const override {
    auto [k, l] = owning_cell(p);
    return eval_cell(k, l, p).value;
  }
  Gradient gradient(Point p) const override {
    auto [k, l] = owning_cell(p);
    return eval_cell(k, l, p).gradient;
  }
  std::optional<Hessian> hessian(Point p) const override {
    auto [k, l] = owning_cell(p);
    if (std::binary_search(grid_.x.begin() + 1, grid_.x.end() - 1, p.x) ||
        std::binary_search(grid_.y.begin() + 1, grid_.y.end() - 1, p.y))
      return std::nullopt;
    return eval_cell(k, l, p).hessian;
  }

  std::vector<Interface> interfaces() const override { return grid_interfaces(grid_); }

 private:
  static std::size_t owner(const std::vector<double>& axis, double v) {
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    return std::min(static_cast<std::size_t>(it - axis.begin()), axis.size() - 1);
  }

  GridKnots2D grid_;
  std::vector<TrigCell2D> cells_;
  Region region_;
};

inline std::shared_ptr<const TrigSpline2D> build_trig2(GridKnots2D grid) {
  grid.validate();
  return std::make_shared<TrigSpline2D>(std::move(grid));
}

struct Trig2DC2Params {
  double z00 = 0.0;
  double nu0 = 0.0;
  double mu0 = 0.0;
  double lambda = 0.0;
};

namespace detail {

/// sum_{i<=k} (-1)^i h_i^2 for k = 0..n-1.
inline std::vector<double> alternating_square_sums(const std::vector<double>& axis) {
  std::vector<double> s(axis.size(), 0.0);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const double h = axis[i] - axis[i - 1];
    s[i] = s[i - 1] + (i % 2 == 0 ? 1.0 : -1.0) * h * h;
  }
  return s;
}

}  // namespace detail

/// Four-parameter value lattice whose product-cosine spline is C2:
///   z(k,l) = z00 + nu0 X_k + mu0 Y_l + lambda X_k Y_l,
/// with X_k, Y_l the alternating sums of squared spacings.
inline GridKnots2D generate_c2_grid(std::vector<double> x, std::vector<double> y, Trig2DC2Params p) {
  GridKnots2D g(std::move(x), std::move(y), 0.0);
  g.validate();
  const auto sx = detail::alternating_square_sums(g.x);
  const auto sy = detail::alternating_square_sums(g.y);
  for (std::size_t k = 0; k < g.nx(); ++k)
    for (std::size_t l = 0; l < g.ny(); ++l)
      g.at(k, l) = p.z00 + p.nu0 * sx[k] + p.mu0 * sy[l] + p.lambda * sx[k] * sy[l];
  return g;
}

struct C2ConditionReport {
  bool pass = true;
  /// First failing lattice law and the cell where it fails (1-based along
  /// the differenced axis).
  std::string violated_law;
  std::size_t k = 0;
  std::size_t l = 0;
  /// mu[k]: (z(k,l) - z(k,l-1)) / hy_l^2 = (-1)^l mu[k]; nu[l] likewise along x.
  std::vector<double> mu;
  std::vector<double> nu;
};

/// Checks the alternation laws that make the cosine spline C2 across every
/// interior edge, to relative tolerance `rel_tol`.
inline C2ConditionReport check_c2_conditions(const GridKnots2D& g, double rel_tol = 1e-9) {
  g.validate();
  C2ConditionReport rep;
  const double zscale = std::max(g.max_abs(), 1e-300);
  rep.mu.assign(g.nx(), 0.0);
  rep.nu.assign(g.ny(), 0.0);

  for (std::size_t k = 0; k < g.nx() && rep.pass; ++k) {
    std::vector<double> m(g.ny());
    double mmax = 0.0, hmin = INFINITY;
    for (std::size_t l = 1; l < g.ny(); ++l) {
      const double h = g.y[l] - g.y[l - 1];
      m[l] = (l % 2 == 0 ? 1.0 : -1.0) * (g.at(k, l) - g.at(k, l - 1)) / (h * h);
      mmax = std::max(mmax, std::abs(m[l]));
      hmin = std::min(hmin, h);
    }
    const double tol = rel_tol * std::max(mmax, zscale / (hmin * hmin));
    for (std::size_t l = 2; l < g.ny(); ++l)
      if (std::abs(m[l] - m[1]) > tol) {
        rep = {false, "y", k, l, {}, {}};
        break;
      }
    if (rep.pass) rep.mu[k] = m[1];
  }
  for (std::size_t l = 0; l < g.ny() && rep.pass; ++l) {
    std::vector<double> n(g.nx());
    double nmax = 0.0, hmin = INFINITY;
    for (std::size_t k = 1; k < g.nx(); ++k) {
      const double h = g.x[k] - g.x[k - 1];
      n[k] = (k % 2 == 0 ? 1.0 : -1.0) * (g.at(k, l) - g.at(k - 1, l)) / (h * h);
      nmax = std::max(nmax, std::abs(n[k]));
      hmin = std::min(hmin, h);
    }
    const double tol = rel_tol * std::max(nmax, zscale / (hmin * hmin));
    for (std::size_t k = 2; k < g.nx(); ++k)
      if (std::abs(n[k] - n[1]) > tol) {
        rep = {false, "x", k, l, {}, {}};
        break;
      }
    if (rep.pass) rep.nu[l] = n[1];
  }
  if (!rep.pass) {
    rep.mu.clear();
    rep.nu.clear();
  }
  return rep;
}

}  // namespace statsurf
