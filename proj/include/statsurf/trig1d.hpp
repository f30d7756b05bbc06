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

namespace statsurf {

// Piecewise-cosine spline. On [x_{i-1}, x_i], with h_i = x_i - x_{i-1} > 0,
//   t_i(x) = (z_{i-1} + z_i)/2 + (z_{i-1} - z_i)/2 * cos(pi (x - x_{i-1}) / h_i).
// Values match at every knot, slopes vanish there, and t_i' has no zero
// strictly inside a cell unless z_{i-1} == z_i.

struct TrigCell1D {
  double a = 0.0;  // mean level
  double b = 0.0;  // half swing
  double c = 0.0;  // pi / h
  double d = 0.0;  // -pi x_{i-1} / h
};

namespace detail {

/// cos and sin of pi*u for u in [0,1], evaluated from the nearer cell end so
/// that both knots land on exact phases 0 and pi.
struct HalfTurn {
  double cos = 1.0;
  double sin = 0.0;
};

inline HalfTurn half_turn(double from_left, double from_right, double width) {
  constexpr double pi = std::numbers::pi;
  if (from_left <= from_right) {
    const double t = pi * from_left / width;
    return {std::cos(t), std::sin(t)};
  }
  const double t = pi * from_right / width;
  return {-std::cos(t), std::sin(t)};
}

}  // namespace detail

struct TrigEval {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

class TrigSpline1D final : public SurfaceModel {
 public:
  explicit TrigSpline1D(Knots1D knots) : knots_(std::move(knots)), region_(Region::interval(knots_.x.front(), knots_.x.back())) {
    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 1; i < knots_.x.size(); ++i) {
      const double h = knots_.x[i] - knots_.x[i - 1];
      cells_.push_back({(knots_.z[i - 1] + knots_.z[i]) / 2.0, (knots_.z[i - 1] - knots_.z[i]) / 2.0, pi / h,
                        -pi * knots_.x[i - 1] / h});
      if (knots_.z[i - 1] == knots_.z[i]) flat_cells_.push_back(i);
    }
  }

  const Knots1D& knots() const { return knots_; }
  const std::vector<TrigCell1D>& cells() const { return cells_; }
  /// Cells (1-based) with equal end values; every interior point of such a
  /// cell is stationary.
  const std::vector<std::size_t>& flat_cells() const { return flat_cells_; }

  const Region& region() const override { return region_; }
  std::string method() const override { return "trig"; }

  std::size_t owning_cell(double x) const {
    if (x < knots_.x.front() || x > knots_.x.back()) throw RegionError("trig: x outside knots");
    auto it = std::upper_bound(knots_.x.begin(), knots_.x.end(), x);
    return std::min(static_cast<std::size_t>(it - knots_.x.begin()), cells_.size());
  }

  TrigEval eval_cell(std::size_t i, double x) const {
    const double lo = knots_.x[i - 1], hi = knots_.x[i];
    const double h = hi - lo;
    const auto ph = detail::half_turn(x - lo, hi - x, h);
    const double b = cells_[i - 1].b;
    const double w = cells_[i - 1].c;
    return {cells_[i - 1].a + b * ph.cos, -b * w * ph.sin, -b * w * w * ph.cos};
  }

  TrigEval eval(double x) const { return eval_cell(owning_cell(x), x); }

  double value(Point p) const override { return eval(p.x).value; }
  Gradient gradient(Point p) const override { return {eval(p.x).d1, 0.0}; }
  std::optional<Hessian> hessian(Point p) const override {
    const auto r = eval(p.x);
    if (std::binary_search(knots_.x.begin() + 1, knots_.x.end() - 1, p.x)) return std::nullopt;
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
  Knots1D knots_;
  std::vector<TrigCell1D> cells_;
  std::vector<std::size_t> flat_cells_;
  Region region_;
};

inline std::shared_ptr<const TrigSpline1D> build_trig(Knots1D knots) {
  knots.validate();
  return std::make_shared<TrigSpline1D>(std::move(knots));
}

/// Two-parameter C2 family: z_i = z0 + mu * sum_{l<=i} (-1)^l h_l^2.
struct Trig1DC2Params {
  double z0 = 0.0;
  double mu = 0.0;
};

inline std::vector<double> generate_c2_values(const std::vector<double>& x, Trig1DC2Params p) {
  detail::require_strictly_increasing(x, "trig-c2");
  if (x.empty()) throw SpecError("trig-c2: no knots");
  std::vector<double> z(x.size());
  z[0] = p.z0;
  double sum = 0.0;
  for (std::size_t l = 1; l < x.size(); ++l) {
    const double h = x[l] - x[l - 1];
    sum += (l % 2 == 0 ? 1.0 : -1.0) * h * h;
    z[l] = p.z0 + p.mu * sum;
  }
  return z;
}

/// Mean of z_i - z0 over i = 1..N for the C2 family, in closed form:
///   mu * sum_l (-1)^l (1 - (l-1)/N) h_l^2.
inline double mean_deviation(const std::vector<double>& x, double mu) {
  detail::require_strictly_increasing(x, "trig-c2");
  if (x.size() < 2) throw SpecError("trig-c2: need at least two knots");
  const double n = static_cast<double>(x.size() - 1);
  double s = 0.0;
  for (std::size_t l = 1; l < x.size(); ++l) {
    const double h = x[l] - x[l - 1];
    s += (l % 2 == 0 ? 1.0 : -1.0) * (1.0 - (static_cast<double>(l) - 1.0) / n) * h * h;
  }
  return mu * s;
}

}  // namespace statsurf
