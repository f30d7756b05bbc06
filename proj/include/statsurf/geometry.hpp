#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statsurf/errors.hpp"

namespace statsurf {

/// A point in the plane. One-dimensional models use `x` only; `y` is ignored.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Gradient {
  double dx = 0.0;
  double dy = 0.0;

  double norm() const { return std::hypot(dx, dy); }
  Gradient& operator+=(const Gradient& o) {
    dx += o.dx;
    dy += o.dy;
    return *this;
  }
};

/// Symmetric matrix of second derivatives. For 1D models only `xx` is used.
struct Hessian {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  Hessian& operator+=(const Hessian& o) {
    xx += o.xx;
    xy += o.xy;
    yy += o.yy;
    return *this;
  }
};

/// Closed interval [a,b] or rectangle [a,b]x[c,d].
class Region {
 public:
  static Region interval(double a, double b) {
    if (!(a < b)) throw SpecError("region: interval requires a < b");
    return Region(1, a, b, 0.0, 0.0);
  }
  static Region box(double a, double b, double c, double d) {
    if (!(a < b) || !(c < d)) throw SpecError("region: box requires a < b and c < d");
    return Region(2, a, b, c, d);
  }

  int dimension() const { return dim_; }
  double xmin() const { return a_; }
  double xmax() const { return b_; }
  double ymin() const { return c_; }
  double ymax() const { return d_; }

  double diameter() const { return dim_ == 1 ? b_ - a_ : std::hypot(b_ - a_, d_ - c_); }

  bool contains(Point p) const {
    if (p.x < a_ || p.x > b_) return false;
    return dim_ == 1 || (p.y >= c_ && p.y <= d_);
  }

  Point clamp(Point p) const {
    p.x = std::clamp(p.x, a_, b_);
    p.y = dim_ == 1 ? 0.0 : std::clamp(p.y, c_, d_);
    return p;
  }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Region(int dim, double a, double b, double c, double d) : dim_(dim), a_(a), b_(b), c_(c), d_(d) {}

  int dim_;
  double a_, b_, c_, d_;
};

enum class ProblemMode { A, B, C };

inline const char* to_string(ProblemMode m) {
  switch (m) {
    case ProblemMode::A: return "A";
    case ProblemMode::B: return "B";
    case ProblemMode::C: return "C";
  }
  return "?";
}

/// Prescribed stationary points, optionally with target values.
struct StationarySpec {
  int dimension = 1;
  std::vector<Point> points;
  std::optional<std::vector<double>> values;
  ProblemMode mode = ProblemMode::A;

  void validate() const {
    if (dimension != 1 && dimension != 2) throw SpecError("spec: dimension must be 1 or 2");
    if (points.empty()) throw SpecError("spec: no points");
    if (mode == ProblemMode::B && !values) throw SpecError("spec: mode B requires values");
    if (values && values->size() != points.size())
      throw SpecError("spec: values and points differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (dimension == 1 && points[i].y != 0.0) throw SpecError("spec: 1D point with y coordinate");
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (points[i] == points[j]) throw SpecError("spec: duplicate point");
    }
  }

  void validate_in(const Region& region) const {
    validate();
    if (region.dimension() != dimension) throw RegionError("spec: region dimension mismatch");
    for (const auto& p : points)
      if (!region.contains(p)) throw RegionError("spec: point outside region");
  }

  double value_at(std::size_t i) const { return values ? (*values)[i] : 0.0; }

  /// Bounding box of the points padded by `pad` times its extent per side.
  /// Degenerate extents are padded by one unit.
  Region default_region(double pad = 0.1) const {
    if (points.empty()) throw SpecError("spec: no points");
    auto [xlo, xhi] = std::minmax_element(points.begin(), points.end(),
                                          [](Point a, Point b) { return a.x < b.x; });
    auto [ylo, yhi] = std::minmax_element(points.begin(), points.end(),
                                          [](Point a, Point b) { return a.y < b.y; });
    auto padded = [pad](double lo, double hi) {
      double w = hi - lo;
      double m = w > 0.0 ? pad * w : 1.0;
      return std::pair{lo - m, hi + m};
    };
    auto [a, b] = padded(xlo->x, xhi->x);
    if (dimension == 1) return Region::interval(a, b);
    auto [c, d] = padded(ylo->y, yhi->y);
    return Region::box(a, b, c, d);
  }

  /// Smallest box containing the points (1D only needs two distinct points).
  Region hull() const {
    auto [xlo, xhi] = std::minmax_element(points.begin(), points.end(),
                                          [](Point a, Point b) { return a.x < b.x; });
    if (dimension == 1) return Region::interval(xlo->x, xhi->x);
    auto [ylo, yhi] = std::minmax_element(points.begin(), points.end(),
                                          [](Point a, Point b) { return a.y < b.y; });
    return Region::box(xlo->x, xhi->x, ylo->y, yhi->y);
  }
};

namespace detail {

inline void require_strictly_increasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i])) throw SpecError(std::string(what) + ": knots must be strictly increasing");
}

}  // namespace detail

/// Knots x_0 < ... < x_N with aligned values.
struct Knots1D {
  std::vector<double> x;
  std::vector<double> z;

  void validate() const {
    if (x.size() < 2) throw SpecError("knots: need at least two knots");
    if (x.size() != z.size()) throw SpecError("knots: x and z differ in length");
    detail::require_strictly_increasing(x, "knots");
  }
  std::size_t cells() const { return x.size() - 1; }
  double min_spacing() const {
    double m = x[1] - x[0];
    for (std::size_t i = 2; i < x.size(); ++i) m = std::min(m, x[i] - x[i - 1]);
    return m;
  }
};

/// Values z(k,l) on the lattice x_0..x_K times y_0..y_L, stored row-major in k.
struct GridKnots2D {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;

  GridKnots2D() = default;
  GridKnots2D(std::vector<double> xs, std::vector<double> ys, std::vector<double> zs)
      : x(std::move(xs)), y(std::move(ys)), z(std::move(zs)) {}
  GridKnots2D(std::vector<double> xs, std::vector<double> ys, double fill)
      : x(std::move(xs)), y(std::move(ys)), z(x.size() * y.size(), fill) {}

  std::size_t nx() const { return x.size(); }
  std::size_t ny() const { return y.size(); }
  double& at(std::size_t k, std::size_t l) { return z[k * y.size() + l]; }
  double at(std::size_t k, std::size_t l) const { return z[k * y.size() + l]; }

  void validate() const {
    if (x.size() < 2 || y.size() < 2) throw SpecError("grid: need at least two lines per axis");
    if (z.size() != x.size() * y.size()) throw SpecError("grid: value matrix has wrong size");
    detail::require_strictly_increasing(x, "grid x");
    detail::require_strictly_increasing(y, "grid y");
  }

  Region region() const { return Region::box(x.front(), x.back(), y.front(), y.back()); }

  double max_abs() const {
    double m = 0.0;
    for (double v : z) m = std::max(m, std::abs(v));
    return m;
  }
};

/// A line across which a piecewise model switches pieces. In 1D the
/// interface is the point x = position. In 2D it is the segment of the line
/// `normal == X ? x = position : y = position` spanning [lo, hi] along the
/// other axis. `clearance` is half the narrowest adjacent cell width.
struct Interface {
  enum class Normal { X, Y };
  Normal normal = Normal::X;
  double position = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double clearance = 0.0;
};

/// Every interior cell edge of the grid.
inline std::vector<Interface> grid_interfaces(const GridKnots2D& g) {
  std::vector<Interface> out;
  for (std::size_t k = 1; k + 1 < g.nx(); ++k) {
    const double w = std::min(g.x[k] - g.x[k - 1], g.x[k + 1] - g.x[k]) / 2.0;
    for (std::size_t l = 1; l < g.ny(); ++l) out.push_back({Interface::Normal::X, g.x[k], g.y[l - 1], g.y[l], w});
  }
  for (std::size_t l = 1; l + 1 < g.ny(); ++l) {
    const double w = std::min(g.y[l] - g.y[l - 1], g.y[l + 1] - g.y[l]) / 2.0;
    for (std::size_t k = 1; k < g.nx(); ++k) out.push_back({Interface::Normal::Y, g.y[l], g.x[k - 1], g.x[k], w});
  }
  return out;
}

/// Evaluable scalar field. Implementations are immutable; every method is
/// pure and safe for concurrent callers.
class SurfaceModel {
 public:
  virtual ~SurfaceModel() = default;

  virtual const Region& region() const = 0;
  virtual double value(Point p) const = 0;
  virtual Gradient gradient(Point p) const = 0;
  /// Empty where the construction does not define second derivatives
  /// (cell boundaries of non-C2 families).
  virtual std::optional<Hessian> hessian(Point) const { return std::nullopt; }
  virtual std::vector<Interface> interfaces() const { return {}; }
  virtual std::string method() const = 0;

  int dimension() const { return region().dimension(); }

 protected:
  void require_inside(Point p) const {
    if (!region().contains(p)) throw RegionError(method() + ": point outside region");
  }
};

using ModelPtr = std::shared_ptr<const SurfaceModel>;

/// Model backed by callables; used for reference fields in tests and for
/// trivial models such as the constant.
class LambdaModel final : public SurfaceModel {
 public:
  using ValueFn = std::function<double(Point)>;
  using GradientFn = std::function<Gradient(Point)>;
  using HessianFn = std::function<std::optional<Hessian>(Point)>;

  LambdaModel(Region region, ValueFn f, GradientFn g, HessianFn h = {}, std::string name = "lambda")
      : region_(region), f_(std::move(f)), g_(std::move(g)), h_(std::move(h)), name_(std::move(name)) {}

  static ModelPtr constant(Region region, double c) {
    return std::make_shared<LambdaModel>(
        region, [c](Point) { return c; }, [](Point) { return Gradient{}; },
        [](Point) { return std::optional<Hessian>(Hessian{}); }, "constant");
  }

  const Region& region() const override { return region_; }
  double value(Point p) const override {
    require_inside(p);
    return f_(p);
  }
  Gradient gradient(Point p) const override {
    require_inside(p);
    return g_(p);
  }
  std::optional<Hessian> hessian(Point p) const override {
    require_inside(p);
    return h_ ? h_(p) : std::nullopt;
  }
  std::string method() const override { return name_; }

 private:
  Region region_;
  ValueFn f_;
  GradientFn g_;
  HessianFn h_;
  std::string name_;
};

}  // namespace statsurf
