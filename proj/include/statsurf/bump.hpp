#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "statsurf/geometry.hpp"

namespace statsurf {

// Sum of compactly supported bump terms
//
//   F(x) = sum_i c_i * chi_i(|x - x_i|^2) * phi_i(x - x_i)
//   chi(s) = a^(s / (s - r^2))  for s < r^2, 0 otherwise
//
// Each chi is C-infinity, equals 1 at its center with zero gradient and
// vanishes identically outside radius r. phi_i(0) = 1 and grad phi_i(0) = 0
// keep the value c_i and the zero gradient at every center provided no other
// support contains it.

namespace detail {

inline double chi_log(double s, double r, double log_a) {
  const double r2 = r * r;
  if (s >= r2) return 0.0;
  const double e = s / (s - r2) * log_a;
  return e < -745.0 ? 0.0 : std::exp(e);
}

struct ChiDerivs {
  double v = 0.0;
  double ds = 0.0;
  double dss = 0.0;
};

inline ChiDerivs chi_derivs(double s, double r, double log_a) {
  const double r2 = r * r;
  if (s >= r2) return {};
  const double den = s - r2;
  const double e = s / den * log_a;
  if (e < -745.0) return {};
  const double v = std::exp(e);
  const double g1 = -log_a * r2 / (den * den);
  const double g2 = 2.0 * log_a * r2 / (den * den * den);
  return {v, v * g1, v * (g1 * g1 + g2)};
}

}  // namespace detail

/// chi(s) for squared distance s, radius r and base a > 1. The exponent is
/// formed in log space; values below exp(-745) flush to exactly zero.
inline double chi(double s, double r, double a) { return detail::chi_log(s, r, std::log(a)); }

/// phi(u) = 1
struct ConstantOne {};
/// phi(u) = 1 + u^T Q u with Q symmetric; in 1D only q.xx is used.
struct Quadratic {
  Hessian q;
};
/// Realizes a prescribed gradient g at the center instead of zero, via
/// phi(u) = 1 + (g / c)^T u. Requires a nonzero amplitude.
struct TargetSlope {
  Gradient g;
};

using BumpShape = std::variant<ConstantOne, Quadratic, TargetSlope>;

struct BumpParams {
  std::vector<double> radii;
  std::vector<double> bases;
  std::vector<double> amplitudes;
  std::vector<BumpShape> shapes;

  /// Same base and shape for every term.
  static BumpParams uniform(std::vector<double> radii, std::vector<double> amplitudes,
                            double base = std::numbers::e, BumpShape shape = ConstantOne{}) {
    const std::size_t n = radii.size();
    return {std::move(radii), std::vector<double>(n, base), std::move(amplitudes),
            std::vector<BumpShape>(n, shape)};
  }
};

/// Nearest-neighbour distance of every point, scaled by `scale`. In 1D mode C
/// each radius is the distance to the left neighbour (the leftmost point
/// takes the first spacing) so neighbouring supports touch.
inline std::vector<double> auto_radii(const StationarySpec& spec, double scale = 1.0) {
  spec.validate();
  if (!(scale > 0.0 && scale <= 1.0)) throw SpecError("auto_radii: scale must lie in (0, 1]");
  const std::size_t n = spec.points.size();
  if (n == 1) return {1.0};
  std::vector<double> r(n);
  if (spec.dimension == 1 && spec.mode == ProblemMode::C) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return spec.points[i].x < spec.points[j].x; });
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t lo = k == 0 ? 0 : k - 1;
      r[order[k]] = spec.points[order[lo + 1]].x - spec.points[order[lo]].x;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double m = INFINITY;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) m = std::min(m, distance(spec.points[i], spec.points[j]));
      r[i] = m;
    }
  }
  for (double& v : r) v *= scale;
  return r;
}

class BumpSurface final : public SurfaceModel {
 public:
  struct Term {
    Point center;
    double amplitude = 0.0;
    double radius = 0.0;
    double log_base = 0.0;
    // phi(u) = 1 + lin . u + u^T quad u
    Gradient lin;
    Hessian quad;
  };

  BumpSurface(Region region, std::vector<Term> terms, std::vector<std::string> warnings)
      : region_(region), terms_(std::move(terms)), warnings_(std::move(warnings)) {}

  const Region& region() const override { return region_; }
  std::string method() const override { return "bump"; }
  const std::vector<Term>& terms() const { return terms_; }
  /// Non-fatal construction diagnostics, e.g. gaps between supports in mode C.
  const std::vector<std::string>& warnings() const { return warnings_; }

  double value(Point p) const override {
    require_inside(p);
    double f = 0.0;
    for (const auto& t : terms_) {
      const double ux = p.x - t.center.x, uy = p.y - t.center.y;
      const double c = detail::chi_log(ux * ux + uy * uy, t.radius, t.log_base);
      if (c == 0.0) continue;
      f += t.amplitude * c * phi(t, ux, uy);
    }
    return f;
  }

  Gradient gradient(Point p) const override {
    require_inside(p);
    Gradient g;
    for (const auto& t : terms_) {
      const double ux = p.x - t.center.x, uy = p.y - t.center.y;
      const auto d = detail::chi_derivs(ux * ux + uy * uy, t.radius, t.log_base);
      if (d.v == 0.0) continue;
      const double ph = phi(t, ux, uy);
      const Gradient gp = phi_grad(t, ux, uy);
      g.dx += t.amplitude * (2.0 * d.ds * ux * ph + d.v * gp.dx);
      g.dy += t.amplitude * (2.0 * d.ds * uy * ph + d.v * gp.dy);
    }
    if (dimension() == 1) g.dy = 0.0;
    return g;
  }

  std::optional<Hessian> hessian(Point p) const override {
    require_inside(p);
    Hessian h;
    for (const auto& t : terms_) {
      const double ux = p.x - t.center.x, uy = p.y - t.center.y;
      const auto d = detail::chi_derivs(ux * ux + uy * uy, t.radius, t.log_base);
      if (d.v == 0.0) continue;
      const double ph = phi(t, ux, uy);
      const Gradient gp = phi_grad(t, ux, uy);
      const double c = t.amplitude;
      h.xx += c * (4.0 * d.dss * ux * ux * ph + 2.0 * d.ds * ph + 4.0 * d.ds * ux * gp.dx +
                   2.0 * d.v * t.quad.xx);
      h.xy += c * (4.0 * d.dss * ux * uy * ph + 2.0 * d.ds * (ux * gp.dy + uy * gp.dx) +
                   2.0 * d.v * t.quad.xy);
      h.yy += c * (4.0 * d.dss * uy * uy * ph + 2.0 * d.ds * ph + 4.0 * d.ds * uy * gp.dy +
                   2.0 * d.v * t.quad.yy);
    }
    if (dimension() == 1) h.xy = h.yy = 0.0;
    return h;
  }

 private:
  static double phi(const Term& t, double ux, double uy) {
    return 1.0 + t.lin.dx * ux + t.lin.dy * uy + t.quad.xx * ux * ux + 2.0 * t.quad.xy * ux * uy +
           t.quad.yy * uy * uy;
  }
  static Gradient phi_grad(const Term& t, double ux, double uy) {
    return {t.lin.dx + 2.0 * (t.quad.xx * ux + t.quad.xy * uy),
            t.lin.dy + 2.0 * (t.quad.xy * ux + t.quad.yy * uy)};
  }

  Region region_;
  std::vector<Term> terms_;
  std::vector<std::string> warnings_;
};

/// Builds the bump sum for `spec`. In mode B the amplitudes are replaced by
/// the prescribed values. Mode C is supported in 1D only and requires
/// alternating amplitude signs. Every center must lie outside the open
/// supports of all other terms.
inline std::shared_ptr<const BumpSurface> build_bump_surface(const StationarySpec& spec,
                                                             BumpParams params,
                                                             std::optional<Region> region = {}) {
  spec.validate();
  const std::size_t n = spec.points.size();
  if (params.radii.size() != n || params.bases.size() != n || params.shapes.size() != n)
    throw SpecError("bump: parameter lengths do not match the point count");
  if (spec.mode == ProblemMode::B)
    params.amplitudes = *spec.values;
  else if (params.amplitudes.size() != n)
    throw SpecError("bump: amplitude count does not match the point count");
  if (spec.mode == ProblemMode::C && spec.dimension == 2)
    throw Unsupported("bump: no sufficient condition for problem C in 2D");

  const Region reg = region.value_or(spec.default_region());
  spec.validate_in(reg);

  std::vector<BumpSurface::Term> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(params.radii[i] > 0.0)) throw SpecError("bump: radii must be positive");
    if (!(params.bases[i] > 1.0)) throw SpecError("bump: bases must exceed 1");
    auto& t = terms[i];
    t.center = spec.points[i];
    t.amplitude = params.amplitudes[i];
    t.radius = params.radii[i];
    t.log_base = std::log(params.bases[i]);
    if (const auto* q = std::get_if<Quadratic>(&params.shapes[i])) {
      t.quad = q->q;
    } else if (const auto* s = std::get_if<TargetSlope>(&params.shapes[i])) {
      if (t.amplitude == 0.0) throw SpecError("bump: target slope needs a nonzero amplitude");
      t.lin = {s->g.dx / t.amplitude, s->g.dy / t.amplitude};
    }
    if (spec.dimension == 1) t.quad.xy = t.quad.yy = t.lin.dy = 0.0;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && distance(terms[i].center, terms[j].center) < terms[j].radius)
        throw SpecError("bump: point " + std::to_string(i) + " lies inside the support of term " +
                        std::to_string(j));

  std::vector<std::string> warnings;
  if (spec.mode == ProblemMode::C) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return terms[i].center.x < terms[j].center.x; });
    for (std::size_t k = 1; k < n; ++k) {
      const auto& lt = terms[order[k - 1]];
      const auto& rt = terms[order[k]];
      if (!(lt.amplitude * rt.amplitude < 0.0))
        throw SpecError("bump: mode C requires alternating amplitude signs");
      const double h = rt.center.x - lt.center.x;
      if (rt.radius < h) {
        const bool gap = lt.center.x + lt.radius < rt.center.x - rt.radius;
        warnings.push_back("radius of point " + std::to_string(order[k]) +
                           " is below its left spacing" +
                           (gap ? "; F vanishes identically on part of the gap" : ""));
      }
    }
  }
  return std::make_shared<BumpSurface>(reg, std::move(terms), std::move(warnings));
}

}  // namespace statsurf
