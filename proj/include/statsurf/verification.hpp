#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statsurf/geometry.hpp"
#include "statsurf/sampling.hpp"

namespace statsurf {

// Oracles that only use the SurfaceModel interface: finite differences, a
// lattice scan for stationary points, jump measurement across interfaces and
// the problem A/B/C report. The scan is a high-resolution heuristic, not a
// certificate of completeness.

/// Central differences per axis. Throws RegionError if p +- h leaves the region.
inline Gradient fd_gradient(const SurfaceModel& model, Point p, double h) {
  const Region& r = model.region();
  auto f = [&](Point q) {
    if (!r.contains(q)) throw RegionError("fd_gradient: step leaves the region");
    return model.value(q);
  };
  Gradient g;
  g.dx = (f({p.x + h, p.y}) - f({p.x - h, p.y})) / (2.0 * h);
  if (model.dimension() == 2) g.dy = (f({p.x, p.y + h}) - f({p.x, p.y - h})) / (2.0 * h);
  return g;
}

enum class Classification { Min, Max, Saddle, Degenerate };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::Min: return "min";
    case Classification::Max: return "max";
    case Classification::Saddle: return "saddle";
    case Classification::Degenerate: return "degenerate";
  }
  return "?";
}

struct ScanOptions {
  std::size_t resolution = 256;
  double gradient_tol = 1e-8;
  /// Defaults to 1e-6 times the scan region diameter.
  std::optional<double> match_radius;
  int newton_max_iter = 50;
  double damping = 0.5;
  /// Eigenvalues below this in magnitude classify as Degenerate.
  double hessian_tol = 1e-6;
  /// Defaults to the model region.
  std::optional<Region> region;
};

struct CriticalPoint {
  Point location;
  Classification kind = Classification::Degenerate;
  double gradient_norm = 0.0;
};

/// A connected set of lattice cells on which the gradient stays below tolerance.
struct FlatRegion {
  Region bounds = Region::interval(0.0, 1.0);
  std::size_t cells = 0;
};

struct StationaryScanReport {
  Region scan_region = Region::interval(0.0, 1.0);
  double match_radius = 0.0;
  std::vector<CriticalPoint> found;
  /// (index into found, index into the prescribed points)
  std::vector<std::pair<std::size_t, std::size_t>> matched;
  std::vector<std::size_t> spurious;
  std::vector<std::size_t> missed;
  std::vector<FlatRegion> flat_regions;
  std::vector<Point> nonconverged;
};

namespace detail {

/// Symmetrised finite-difference Jacobian of the analytic gradient. Steps are
/// central where both sides fit in the region, one-sided otherwise.
inline Hessian fd_hessian(const SurfaceModel& m, Point p, double h) {
  const Region& r = m.region();
  auto diff = [&](bool along_x) {
    Point a = p, b = p;
    if (along_x) {
      a.x = std::max(r.xmin(), p.x - h);
      b.x = std::min(r.xmax(), p.x + h);
    } else {
      a.y = std::max(r.ymin(), p.y - h);
      b.y = std::min(r.ymax(), p.y + h);
    }
    const double w = along_x ? b.x - a.x : b.y - a.y;
    const Gradient ga = m.gradient(a), gb = m.gradient(b);
    return Gradient{(gb.dx - ga.dx) / w, (gb.dy - ga.dy) / w};
  };
  const Gradient hx = diff(true);
  if (m.dimension() == 1) return {hx.dx, 0.0, 0.0};
  const Gradient hy = diff(false);
  return {hx.dx, 0.5 * (hx.dy + hy.dx), hy.dy};
}

inline Classification classify_eigen(double l1, double l2, double tol) {
  if (std::abs(l1) < tol || std::abs(l2) < tol) return Classification::Degenerate;
  if (l1 > 0 && l2 > 0) return Classification::Min;
  if (l1 < 0 && l2 < 0) return Classification::Max;
  return Classification::Saddle;
}

inline Classification classify_hessian(const Hessian& h, int dim, double tol) {
  if (dim == 1) {
    if (std::abs(h.xx) < tol) return Classification::Degenerate;
    return h.xx > 0 ? Classification::Min : Classification::Max;
  }
  const double mid = 0.5 * (h.xx + h.yy);
  const double rad = std::hypot(0.5 * (h.xx - h.yy), h.xy);
  return classify_eigen(mid - rad, mid + rad, tol);
}

/// Uses the analytic Hessian when the model defines one at p. Otherwise
/// forms one-sided Hessians in every half-line (1D) or quadrant (2D) that
/// fits in the region; any disagreement between sides gives Degenerate.
inline Classification classify(const SurfaceModel& m, Point p, double delta, double tol) {
  if (auto h = m.hessian(p)) return classify_hessian(*h, m.dimension(), tol);
  const Region& r = m.region();
  std::vector<Classification> sides;
  if (m.dimension() == 1) {
    for (double s : {-1.0, 1.0}) {
      const Point a{p.x + s * delta, 0.0}, b{p.x + 2.0 * s * delta, 0.0};
      if (!r.contains(b)) continue;
      const double d2 = (m.gradient(b).dx - m.gradient(a).dx) / (s * delta);
      sides.push_back(classify_hessian({d2, 0.0, 0.0}, 1, tol));
    }
  } else {
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0}) {
        const Point a{p.x + sx * delta, p.y + sy * delta};
        const Point b{p.x + 2.0 * sx * delta, p.y + sy * delta};
        const Point c{p.x + sx * delta, p.y + 2.0 * sy * delta};
        if (!r.contains(b) || !r.contains(c)) continue;
        const Gradient ga = m.gradient(a), gb = m.gradient(b), gc = m.gradient(c);
        const Hessian h{(gb.dx - ga.dx) / (sx * delta),
                        0.5 * ((gc.dx - ga.dx) / (sy * delta) + (gb.dy - ga.dy) / (sx * delta)),
                        (gc.dy - ga.dy) / (sy * delta)};
        sides.push_back(classify_hessian(h, 2, tol));
      }
  }
  if (sides.empty()) return Classification::Degenerate;
  for (auto s : sides)
    if (s != sides.front()) return Classification::Degenerate;
  return sides.front();
}

/// Damped Newton on grad F = 0 with a finite-difference Hessian, kept inside
/// `box`. Returns the point once the gradient norm is within tol.
inline std::optional<Point> newton(const SurfaceModel& m, Point p, const Region& box, const ScanOptions& opt,
                                   double h) {
  const bool two = m.dimension() == 2;
  Gradient g = m.gradient(p);
  for (int it = 0; it < opt.newton_max_iter; ++it) {
    const double gn = g.norm();
    if (gn <= opt.gradient_tol) return p;
    const Hessian H = fd_hessian(m, p, h);
    double sx = 0.0, sy = 0.0;
    if (!two) {
      if (H.xx == 0.0 || !std::isfinite(H.xx)) return std::nullopt;
      sx = -g.dx / H.xx;
    } else {
      double a = H.xx, b = H.xy, d = H.yy;
      double det = a * d - b * b;
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(d), 1e-300});
      if (std::abs(det) < 1e-12 * scale * scale) {
        // near-singular: shift the diagonal
        a += 1e-6 * scale;
        d += 1e-6 * scale;
        det = a * d - b * b;
      }
      if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
      sx = -(d * g.dx - b * g.dy) / det;
      sy = -(-b * g.dx + a * g.dy) / det;
    }
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, t *= opt.damping) {
      const Point q = box.clamp({p.x + t * sx, two ? p.y + t * sy : 0.0});
      const Gradient gq = m.gradient(q);
      if (gq.norm() < gn) {
        p = q;
        g = gq;
        accepted = true;
        break;
      }
    }
    if (!accepted) return std::nullopt;
  }
  if (g.norm() <= opt.gradient_tol) return p;
  return std::nullopt;
}

/// Sign change of g' inside [a, b]: Newton steps safeguarded by bisection.
inline double bracketed_root(const SurfaceModel& m, double a, double b, double h) {
  auto g = [&](double x) { return m.gradient({x, 0.0}).dx; };
  double ga = g(a);
  double lo = a, hi = b;
  const bool rising = ga < 0.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    if ((gx < 0.0) == rising)
      lo = x;
    else
      hi = x;
    const double w = std::max(std::abs(x), 1.0) * std::numeric_limits<double>::epsilon();
    if (hi - lo <= 4.0 * w) break;
    const double hh = std::min(h, 0.25 * (hi - lo));
    const double dg = (g(x + hh) - g(x - hh)) / (2.0 * hh);
    double xn = x - gx / dg;
    if (!std::isfinite(xn) || xn <= lo || xn >= hi || std::abs(xn - x) > 0.5 * (hi - lo)) xn = 0.5 * (lo + hi);
    if (xn == x) break;
    x = xn;
  }
  const double gl = std::abs(g(lo)), gh = std::abs(g(hi)), gx = std::abs(g(x));
  if (gl < gx && gl <= gh) return lo;
  if (gh < gx) return hi;
  return x;
}

/// Minimum of |g'| on [a, b] by golden section; for zeros of even order.
inline double golden_min_abs(const SurfaceModel& m, double a, double b) {
  auto f = [&](double x) { return std::abs(m.gradient({x, 0.0}).dx); };
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
       ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

inline double lattice_at(double lo, double hi, std::size_t i, std::size_t n) {
  return std::lerp(lo, hi, static_cast<double>(i) / static_cast<double>(n));
}

struct Candidate {
  Point p;
  double gn = 0.0;
};

/// Merges candidates closer than `radius`, or within `near` of each other
/// with a gradient below tolerance at the midpoint. Keeps the smaller norm.
inline std::vector<Candidate> dedupe(const SurfaceModel& m, std::vector<Candidate> c, double radius, double near,
                                     double tol) {
  std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
    return a.p.x != b.p.x ? a.p.x < b.p.x : a.p.y < b.p.y;
  });
  std::vector<Candidate> out;
  for (const auto& x : c) {
    bool merged = false;
    for (auto& y : out) {
      const double d = distance(x.p, y.p);
      bool same = d <= radius;
      if (!same && d <= near) {
        const Point mid{0.5 * (x.p.x + y.p.x), 0.5 * (x.p.y + y.p.y)};
        same = m.gradient(mid).norm() <= tol;
      }
      if (same) {
        if (x.gn < y.gn) y = x;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(x);
  }
  return out;
}

inline bool in_any(const std::vector<FlatRegion>& flats, Point p) {
  for (const auto& f : flats)
    if (f.bounds.contains(p)) return true;
  return false;
}

inline void scan_1d(const SurfaceModel& m, const Region& box, const ScanOptions& opt, double h,
                    std::vector<Candidate>& cands, StationaryScanReport& rep) {
  const std::size_t R = opt.resolution;
  const double lo = box.xmin(), hi = box.xmax();
  const double tol = opt.gradient_tol;
  std::vector<double> xs(R + 1), g(R + 1);
  for (std::size_t j = 0; j <= R; ++j) {
    xs[j] = lattice_at(lo, hi, j, R);
    g[j] = m.gradient({xs[j], 0.0}).dx;
  }
  auto small = [&](double x) { return std::abs(m.gradient({x, 0.0}).dx) <= tol; };

  // flat cells, merged into intervals
  std::vector<char> flat(R, 0);
  for (std::size_t j = 0; j < R; ++j) {
    if (std::abs(g[j]) > tol || std::abs(g[j + 1]) > tol) continue;
    bool all = true;
    for (double t : {0.25, 0.5, 0.75}) all = all && small(std::lerp(xs[j], xs[j + 1], t));
    flat[j] = all;
  }
  for (std::size_t j = 0; j < R;) {
    if (!flat[j]) {
      ++j;
      continue;
    }
    std::size_t k = j;
    while (k < R && flat[k]) ++k;
    rep.flat_regions.push_back({Region::interval(xs[j], xs[k]), k - j});
    j = k;
  }

  for (std::size_t j = 0; j <= R; ++j) {
    if (g[j] == 0.0) {
      cands.push_back({{xs[j], 0.0}, 0.0});
      continue;
    }
    if (j < R && g[j] * g[j + 1] < 0.0) {
      const double x = bracketed_root(m, xs[j], xs[j + 1], h);
      const double gn = std::abs(m.gradient({x, 0.0}).dx);
      if (gn <= tol)
        cands.push_back({{x, 0.0}, gn});
      else
        rep.nonconverged.push_back({x, 0.0});
    }
    // touching zeros: local minima of |g'| without a sign change next to them
    const bool left_ok = j == 0 || (std::abs(g[j]) <= std::abs(g[j - 1]) && g[j] * g[j - 1] > 0.0);
    const bool right_ok = j == R || (std::abs(g[j]) <= std::abs(g[j + 1]) && g[j] * g[j + 1] > 0.0);
    if (left_ok && right_ok && (j > 0 || j < R)) {
      const double a = xs[j > 0 ? j - 1 : j], b = xs[j < R ? j + 1 : j];
      const double x = golden_min_abs(m, a, b);
      const double gn = std::abs(m.gradient({x, 0.0}).dx);
      if (gn <= tol) cands.push_back({{x, 0.0}, gn});
    }
  }
}

inline void scan_2d(const SurfaceModel& m, const Region& box, const ScanOptions& opt, double h,
                    std::vector<Candidate>& cands, StationaryScanReport& rep) {
  const std::size_t R = opt.resolution, n = R + 1;
  const double tol = opt.gradient_tol;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lattice_at(box.xmin(), box.xmax(), i, R);
    ys[i] = lattice_at(box.ymin(), box.ymax(), i, R);
  }
  std::vector<Gradient> g(n * n);
  std::vector<double> gn(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g[i * n + j] = m.gradient({xs[i], ys[j]});
      gn[i * n + j] = g[i * n + j].norm();
    }
  auto G = [&](std::size_t i, std::size_t j) -> const Gradient& { return g[i * n + j]; };
  auto N = [&](std::size_t i, std::size_t j) { return gn[i * n + j]; };

  // flat cells and their 4-connected components
  std::vector<char> flat(R * R, 0);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < R; ++j) {
      if (N(i, j) > tol || N(i + 1, j) > tol || N(i, j + 1) > tol || N(i + 1, j + 1) > tol) continue;
      const Point c{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
      flat[i * R + j] = m.gradient(c).norm() <= tol;
    }
  std::vector<char> seen(R * R, 0);
  for (std::size_t s = 0; s < R * R; ++s) {
    if (!flat[s] || seen[s]) continue;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    std::size_t imin = R, imax = 0, jmin = R, jmax = 0, count = 0;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const std::size_t i = c / R, j = c % R;
      ++count;
      imin = std::min(imin, i);
      imax = std::max(imax, i);
      jmin = std::min(jmin, j);
      jmax = std::max(jmax, j);
      auto push = [&](std::size_t a, std::size_t b) {
        const std::size_t k = a * R + b;
        if (flat[k] && !seen[k]) {
          seen[k] = 1;
          stack.push_back(k);
        }
      };
      if (i > 0) push(i - 1, j);
      if (i + 1 < R) push(i + 1, j);
      if (j > 0) push(i, j - 1);
      if (j + 1 < R) push(i, j + 1);
    }
    rep.flat_regions.push_back({Region::box(xs[imin], xs[imax + 1], ys[jmin], ys[jmax + 1]), count});
  }

  std::vector<Point> seeds;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (N(i, j) <= tol) {
        seeds.push_back({xs[i], ys[j]});
        continue;
      }
      bool local_min = true;
      for (int di = -1; di <= 1 && local_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto a = static_cast<std::ptrdiff_t>(i) + di, b = static_cast<std::ptrdiff_t>(j) + dj;
          if (a < 0 || b < 0 || a >= static_cast<std::ptrdiff_t>(n) || b >= static_cast<std::ptrdiff_t>(n)) continue;
          if (N(a, b) < N(i, j)) {
            local_min = false;
            break;
          }
        }
      if (local_min) seeds.push_back({xs[i], ys[j]});
    }
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < R; ++j) {
      if (flat[i * R + j]) continue;
      double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
      for (auto [a, b] : {std::pair{i, j}, std::pair{i + 1, j}, std::pair{i, j + 1}, std::pair{i + 1, j + 1}}) {
        xlo = std::min(xlo, G(a, b).dx);
        xhi = std::max(xhi, G(a, b).dx);
        ylo = std::min(ylo, G(a, b).dy);
        yhi = std::max(yhi, G(a, b).dy);
      }
      if (xlo <= 0.0 && xhi >= 0.0 && ylo <= 0.0 && yhi >= 0.0) {
        seeds.push_back({0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])});
        // the centre can run off to a neighbour when the cell is curved, so
        // also start from the corner with the smallest gradient
        auto [a, b] = std::pair{i, j};
        for (auto [u, v] : {std::pair{i + 1, j}, std::pair{i, j + 1}, std::pair{i + 1, j + 1}})
          if (N(u, v) < N(a, b)) a = u, b = v;
        seeds.push_back({xs[a], ys[b]});
      }
    }

  for (const auto& s : seeds) {
    if (auto p = newton(m, s, box, opt, h))
      cands.push_back({*p, m.gradient(*p).norm()});
    else
      rep.nonconverged.push_back(s);
  }
}

}  // namespace detail

/// Finds stationary points of `model` on the scan region and pairs them with
/// `prescribed` points within the match radius.
inline StationaryScanReport scan_stationary(const SurfaceModel& model, const std::vector<Point>& prescribed = {},
                                            const ScanOptions& opt = {}) {
  if (opt.resolution < 16) throw SpecError("scan: resolution must be at least 16");
  StationaryScanReport rep;
  rep.scan_region = opt.region.value_or(model.region());
  const Region& box = rep.scan_region;
  if (box.dimension() != model.dimension()) throw RegionError("scan: region dimension mismatch");
  const double diam = box.diameter();
  rep.match_radius = opt.match_radius.value_or(1e-6 * diam);
  const double h = 1e-7 * diam;
  const double step = diam / static_cast<double>(opt.resolution);

  std::vector<detail::Candidate> cands;
  if (model.dimension() == 1)
    detail::scan_1d(model, box, opt, h, cands, rep);
  else
    detail::scan_2d(model, box, opt, h, cands, rep);

  std::erase_if(cands, [&](const detail::Candidate& c) { return detail::in_any(rep.flat_regions, c.p); });
  cands = detail::dedupe(model, std::move(cands), rep.match_radius, 2.0 * step, opt.gradient_tol);

  const double delta = std::max(1e-6 * diam, 1e3 * h);
  for (const auto& c : cands)
    rep.found.push_back({c.p, detail::classify(model, c.p, delta, opt.hessian_tol), c.gn});

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t f = 0; f < rep.found.size(); ++f)
    for (std::size_t q = 0; q < prescribed.size(); ++q) {
      const double d = distance(rep.found[f].location, prescribed[q]);
      if (d <= rep.match_radius) pairs.emplace_back(d, f, q);
    }
  std::sort(pairs.begin(), pairs.end());
  std::vector<char> fused(rep.found.size(), 0), qused(prescribed.size(), 0);
  for (auto [d, f, q] : pairs) {
    if (fused[f] || qused[q]) continue;
    fused[f] = qused[q] = 1;
    rep.matched.emplace_back(f, q);
  }
  std::sort(rep.matched.begin(), rep.matched.end());
  for (std::size_t f = 0; f < rep.found.size(); ++f)
    if (!fused[f]) rep.spurious.push_back(f);
  for (std::size_t q = 0; q < prescribed.size(); ++q)
    if (!qused[q]) rep.missed.push_back(q);
  return rep;
}

struct InterfaceJump {
  Interface where;
  double value = 0.0;
  double first = 0.0;
  /// Zero when the model defines no Hessian next to the interface.
  double second = 0.0;
};

struct ContinuityReport {
  std::vector<InterfaceJump> jumps;
  double max_value = 0.0;
  double max_first = 0.0;
  double max_second = 0.0;
};

/// One-sided limits at `samples` points along each interface, each obtained
/// by linear extrapolation 2 v(p + h n) - v(p + 2h n) from analytic values,
/// gradients and Hessians. h defaults to 1e-7 times the interface clearance.
inline ContinuityReport continuity_report(const SurfaceModel& model, const std::vector<Interface>& interfaces,
                                          std::size_t samples = 16, std::optional<double> probe_h = {}) {
  ContinuityReport rep;
  const bool two = model.dimension() == 2;
  struct Side {
    double v;
    Gradient g;
    std::optional<Hessian> H;
  };
  for (const auto& itf : interfaces) {
    InterfaceJump jump{itf};
    const double h = probe_h.value_or(1e-7 * itf.clearance);
    const std::size_t count = two ? std::max<std::size_t>(samples, 1) : 1;
    for (std::size_t s = 0; s < count; ++s) {
      const double along = two ? std::lerp(itf.lo, itf.hi, (static_cast<double>(s) + 0.5) / count) : 0.0;
      const Point p = itf.normal == Interface::Normal::X ? Point{itf.position, along} : Point{along, itf.position};
      auto at = [&](double off) {
        const Point q = itf.normal == Interface::Normal::X ? Point{p.x + off, p.y} : Point{p.x, p.y + off};
        return Side{model.value(q), model.gradient(q), model.hessian(q)};
      };
      auto limit = [&](double sign) {
        const Side a = at(sign * h), b = at(sign * 2.0 * h);
        Side out{2.0 * a.v - b.v, {2.0 * a.g.dx - b.g.dx, 2.0 * a.g.dy - b.g.dy}, std::nullopt};
        if (a.H && b.H)
          out.H = Hessian{2.0 * a.H->xx - b.H->xx, 2.0 * a.H->xy - b.H->xy, 2.0 * a.H->yy - b.H->yy};
        return out;
      };
      const Side l = limit(-1.0), r = limit(1.0);
      jump.value = std::max(jump.value, std::abs(l.v - r.v));
      jump.first = std::max({jump.first, std::abs(l.g.dx - r.g.dx), std::abs(l.g.dy - r.g.dy)});
      if (l.H && r.H)
        jump.second = std::max({jump.second, std::abs(l.H->xx - r.H->xx), std::abs(l.H->xy - r.H->xy),
                                std::abs(l.H->yy - r.H->yy)});
    }
    rep.max_value = std::max(rep.max_value, jump.value);
    rep.max_first = std::max(rep.max_first, jump.first);
    rep.max_second = std::max(rep.max_second, jump.second);
    rep.jumps.push_back(jump);
  }
  return rep;
}

inline ContinuityReport continuity_report(const SurfaceModel& model, std::size_t samples = 16,
                                          std::optional<double> probe_h = {}) {
  return continuity_report(model, model.interfaces(), samples, probe_h);
}

struct VerifyOptions {
  double gradient_tol = 1e-8;
  double value_tol = 1e-9;
  ScanOptions scan;
};

struct ProblemReport {
  bool a = false;
  std::optional<bool> b;
  bool c = false;
  double max_gradient = 0.0;
  double max_value_error = 0.0;
  /// Prescribed indices failing the gradient or the value check.
  std::vector<std::size_t> gradient_failures;
  std::vector<std::size_t> value_failures;
  StationaryScanReport evidence;
};

/// Scan region used for problem C: the given one, else the hull of the
/// points for bump sums (their supports end there), else the model region.
inline Region problem_c_region(const SurfaceModel& model, const StationarySpec& spec, const ScanOptions& scan) {
  if (scan.region) return *scan.region;
  if (model.method() == "bump") {
    try {
      return spec.hull();
    } catch (const SpecError&) {
    }
  }
  return model.region();
}

inline ProblemReport verify_problem(const SurfaceModel& model, const StationarySpec& spec,
                                    const VerifyOptions& opt = {}) {
  spec.validate_in(model.region());
  ProblemReport rep;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    const double gn = model.gradient(spec.points[i]).norm();
    rep.max_gradient = std::max(rep.max_gradient, gn);
    if (!(gn <= opt.gradient_tol)) rep.gradient_failures.push_back(i);
    if (spec.values) {
      const double e = std::abs(model.value(spec.points[i]) - (*spec.values)[i]);
      rep.max_value_error = std::max(rep.max_value_error, e);
      if (!(e <= opt.value_tol)) rep.value_failures.push_back(i);
    }
  }
  rep.a = rep.gradient_failures.empty();
  if (spec.values) rep.b = rep.a && rep.value_failures.empty();

  ScanOptions scan = opt.scan;
  scan.region = problem_c_region(model, spec, opt.scan);
  scan.gradient_tol = opt.gradient_tol;
  rep.evidence = scan_stationary(model, spec.points, scan);
  rep.c = rep.a && rep.evidence.spurious.empty() && rep.evidence.flat_regions.empty();
  return rep;
}

}  // namespace statsurf
