#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "statsurf/geometry.hpp"
#include "statsurf/quartic1d.hpp"

namespace statsurf {

// Tensor-cell quartic splines on a grid.
//
// Cell (k,l) covers [x_{k-1},x_k] x [y_{l-1},y_l] and carries
//   s(x,y) = sum_{i,j=0..4} a_ij (x - x_k)^i (y - y_l)^j.
// Its first column a_i0 and first row a_0j are the monomial coefficients of
// the C2 quartic splines along the grid lines y = y_l and x = x_k. Matching
// the lines y = y_{l-1} and x = x_{k-1} gives eight equations
//   sum_{j>=1} a_ij dy^j = dgamma_i   (i = 1..4)
//   sum_{i>=1} a_ij dx^i = dbeta_j    (j = 1..4)
// of rank 7 in the sixteen unknowns a_ij, i,j >= 1 (dx = x_{k-1} - x_k and
// dy = y_{l-1} - y_l are negative). The 3x3 block a_ij, i,j in 2..4 is free;
// a11, a12, a13, a14, a21, a31, a41 follow from it.

using Poly4 = std::array<double, 5>;
using Coeff5x5 = std::array<std::array<double, 5>, 5>;
/// free[i-2][j-2] = a_ij for i, j in 2..4.
using FreeBlock = std::array<std::array<double, 3>, 3>;

/// Boundary data of one cell: the line splines through its upper-right
/// corner and their differences to the lines through the lower-left one.
struct CellBoundaryCoeffs {
  Poly4 gamma{};   // along y = y_l, cell k, powers of (x - x_k)
  Poly4 beta{};    // along x = x_k, cell l, powers of (y - y_l)
  Poly4 dgamma{};  // gamma^(k,l-1) - gamma^(k,l)
  Poly4 dbeta{};   // beta^(k-1,l) - beta^(k,l)
};

/// Quartic C2 splines along every grid line, in cell-local monomial form.
class BoundarySplines {
 public:
  BoundarySplines(const GridKnots2D& grid, double c0x, double c0y) : nx_(grid.nx()), ny_(grid.ny()) {
    grid.validate();
    rows_.resize(ny_);
    for (std::size_t l = 0; l < ny_; ++l) {
      Knots1D line{grid.x, std::vector<double>(nx_)};
      for (std::size_t k = 0; k < nx_; ++k) line.z[k] = grid.at(k, l);
      rows_[l] = monomials(*build_quartic_c2(std::move(line), c0x));
    }
    cols_.resize(nx_);
    for (std::size_t k = 0; k < nx_; ++k) {
      Knots1D line{grid.y, std::vector<double>(ny_)};
      for (std::size_t l = 0; l < ny_; ++l) line.z[l] = grid.at(k, l);
      cols_[k] = monomials(*build_quartic_c2(std::move(line), c0y));
    }
  }

  /// gamma^(k,l): line y = y_l, x-cell k (1-based).
  const Poly4& gamma(std::size_t k, std::size_t l) const { return rows_[l][k - 1]; }
  /// beta^(k,l): line x = x_k, y-cell l (1-based).
  const Poly4& beta(std::size_t k, std::size_t l) const { return cols_[k][l - 1]; }

  CellBoundaryCoeffs cell(std::size_t k, std::size_t l) const {
    CellBoundaryCoeffs c{gamma(k, l), beta(k, l), {}, {}};
    for (int i = 0; i < 5; ++i) {
      c.dgamma[i] = gamma(k, l - 1)[i] - c.gamma[i];
      c.dbeta[i] = beta(k - 1, l)[i] - c.beta[i];
    }
    return c;
  }

 private:
  static std::vector<Poly4> monomials(const QuarticSpline1D& s) {
    std::vector<Poly4> out;
    for (const auto& q : s.cells()) out.push_back({q.a, q.b, q.c / 2.0, q.d / 6.0, q.e / 24.0});
    return out;
  }

  std::size_t nx_, ny_;
  std::vector<std::vector<Poly4>> rows_;
  std::vector<std::vector<Poly4>> cols_;
};

inline BoundarySplines boundary_splines(const GridKnots2D& grid, double c0x = 0.0, double c0y = 0.0) {
  return BoundarySplines(grid, c0x, c0y);
}

/// Fills the dependent coefficients of one cell from its boundary data and
/// free block. dx, dy are the signed spacings x_{k-1} - x_k, y_{l-1} - y_l.
inline Coeff5x5 solve_cell_coefficients(const CellBoundaryCoeffs& b, const FreeBlock& free, double dx,
                                        double dy) {
  Coeff5x5 a{};
  for (int i = 0; i < 5; ++i) {
    a[i][0] = b.gamma[i];
    a[0][i] = b.beta[i];
  }
  for (int i = 2; i <= 4; ++i)
    for (int j = 2; j <= 4; ++j) a[i][j] = free[i - 2][j - 2];

  // gamma_i equations, i = 2..4
  for (int i = 2; i <= 4; ++i) {
    double rest = 0.0;
    for (int j = 2; j <= 4; ++j) rest += a[i][j] * std::pow(dy, j);
    a[i][1] = (b.dgamma[i] - rest) / dy;
  }
  // beta_j equations, j = 2..3
  for (int j = 2; j <= 3; ++j) {
    double rest = 0.0;
    for (int i = 2; i <= 4; ++i) rest += a[i][j] * std::pow(dx, i);
    a[1][j] = (b.dbeta[j] - rest) / dx;
  }
  // beta_1: a11 dx + a21 dx^2 + a31 dx^3 + a41 dx^4 = dbeta_1
  a[1][1] = b.dbeta[1] / dx - (a[2][1] * dx + a[3][1] * dx * dx + a[4][1] * dx * dx * dx);
  // gamma_1: a11 dy + a12 dy^2 + a13 dy^3 + a14 dy^4 = dgamma_1
  a[1][4] = (b.dgamma[1] - a[1][1] * dy - a[1][2] * dy * dy - a[1][3] * dy * dy * dy) /
            (dy * dy * dy * dy);
  return a;
}

/// Residuals of the eight line-matching equations, gamma_1..4 then beta_1..4.
inline std::array<double, 8> line_matching_residuals(const Coeff5x5& a, const CellBoundaryCoeffs& b,
                                                     double dx, double dy) {
  std::array<double, 8> r{};
  for (int i = 1; i <= 4; ++i) {
    double s = 0.0;
    for (int j = 1; j <= 4; ++j) s += a[i][j] * std::pow(dy, j);
    r[i - 1] = s - b.dgamma[i];
  }
  for (int j = 1; j <= 4; ++j) {
    double s = 0.0;
    for (int i = 1; i <= 4; ++i) s += a[i][j] * std::pow(dx, i);
    r[3 + j] = s - b.dbeta[j];
  }
  return r;
}

class QuarticTensorSpline final : public SurfaceModel {
 public:
  QuarticTensorSpline(GridKnots2D grid, std::vector<Coeff5x5> cells)
      : grid_(std::move(grid)), cells_(std::move(cells)), region_(grid_.region()) {}

  const GridKnots2D& grid() const { return grid_; }
  /// Cell (k,l), 1-based.
  const Coeff5x5& cell(std::size_t k, std::size_t l) const { return cells_[(k - 1) * (grid_.ny() - 1) + (l - 1)]; }

  const Region& region() const override { return region_; }
  std::string method() const override { return "quartic2d"; }

  /// Cells are (x_{k-1}, x_k] x (y_{l-1}, y_l], closed on the outer edges, so a
  /// vertex is read at the anchor corner of its cell.
  std::pair<std::size_t, std::size_t> owning_cell(Point p) const {
    require_inside(p);
    return {owner(grid_.x, p.x), owner(grid_.y, p.y)};
  }

  double eval_cell(std::size_t k, std::size_t l, Point p) const { return evaluate(k, l, p, nullptr, nullptr); }
  Gradient gradient_cell(std::size_t k, std::size_t l, Point p) const {
    Gradient g;
    evaluate(k, l, p, &g, nullptr);
    return g;
  }
  Hessian hessian_cell(std::size_t k, std::size_t l, Point p) const {
    Hessian h;
    evaluate(k, l, p, nullptr, &h);
    return h;
  }

  double value(Point p) const override {
    auto [k, l] = owning_cell(p);
    return eval_cell(k, l, p);
  }
  Gradient gradient(Point p) const override {
    auto [k, l] = owning_cell(p);
    return gradient_cell(k, l, p);
  }
  std::optional<Hessian> hessian(Point p) const override {
    auto [k, l] = owning_cell(p);
    if (on_interior_line(grid_.x, p.x) || on_interior_line(grid_.y, p.y)) return std::nullopt;
    return hessian_cell(k, l, p);
  }

  std::vector<Interface> interfaces() const override { return grid_interfaces(grid_); }

 private:
  static std::size_t owner(const std::vector<double>& axis, double v) {
    auto it = std::lower_bound(axis.begin(), axis.end(), v);
    return std::max<std::size_t>(static_cast<std::size_t>(it - axis.begin()), 1);
  }
  static bool on_interior_line(const std::vector<double>& axis, double v) {
    return std::binary_search(axis.begin() + 1, axis.end() - 1, v);
  }

  double evaluate(std::size_t k, std::size_t l, Point p, Gradient* g, Hessian* h) const {
    const auto& a = cell(k, l);
    const double u = p.x - grid_.x[k];
    const double v = p.y - grid_.y[l];
    // Row polynomials in v and their first two derivatives.
    std::array<double, 5> r{}, rv{}, rvv{};
    for (int i = 0; i < 5; ++i) {
      const auto& c = a[i];
      r[i] = c[0] + v * (c[1] + v * (c[2] + v * (c[3] + v * c[4])));
      rv[i] = c[1] + v * (2.0 * c[2] + v * (3.0 * c[3] + v * 4.0 * c[4]));
      rvv[i] = 2.0 * c[2] + v * (6.0 * c[3] + v * 12.0 * c[4]);
    }
    auto horner = [u](const std::array<double, 5>& q) {
      return q[0] + u * (q[1] + u * (q[2] + u * (q[3] + u * q[4])));
    };
    auto horner_d = [u](const std::array<double, 5>& q) {
      return q[1] + u * (2.0 * q[2] + u * (3.0 * q[3] + u * 4.0 * q[4]));
    };
    auto horner_dd = [u](const std::array<double, 5>& q) {
      return 2.0 * q[2] + u * (6.0 * q[3] + u * 12.0 * q[4]);
    };
    if (g) *g = {horner_d(r), horner(rv)};
    if (h) *h = {horner_dd(r), horner_d(rv), horner(rvv)};
    return horner(r);
  }

  GridKnots2D grid_;
  std::vector<Coeff5x5> cells_;
  Region region_;
};

struct QuarticTensorOptions {
  double c0x = 0.0;
  double c0y = 0.0;
  /// Free blocks per cell in (k-1)*L + (l-1) order; all zero when absent.
  std::optional<std::vector<FreeBlock>> free_blocks;
};

/// Free blocks with entries drawn uniformly from [-1, 1].
template <class Rng>
std::vector<FreeBlock> random_free_blocks(const GridKnots2D& grid, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FreeBlock> out((grid.nx() - 1) * (grid.ny() - 1));
  for (auto& b : out)
    for (auto& row : b)
      for (double& v : row) v = u(rng);
  return out;
}

/// Value-continuous quartic spline with z and zero gradient at every vertex.
inline std::shared_ptr<const QuarticTensorSpline> build_tensor_c0(GridKnots2D grid,
                                                                  const QuarticTensorOptions& opt = {}) {
  grid.validate();
  const std::size_t K = grid.nx() - 1, L = grid.ny() - 1;
  if (opt.free_blocks && opt.free_blocks->size() != K * L)
    throw SpecError("quartic2d: need one free block per cell");
  const auto lines = boundary_splines(grid, opt.c0x, opt.c0y);
  std::vector<Coeff5x5> cells(K * L);
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t l = 1; l <= L; ++l) {
      const std::size_t idx = (k - 1) * L + (l - 1);
      const FreeBlock free = opt.free_blocks ? (*opt.free_blocks)[idx] : FreeBlock{};
      cells[idx] = solve_cell_coefficients(lines.cell(k, l), free, grid.x[k - 1] - grid.x[k],
                                           grid.y[l - 1] - grid.y[l]);
    }
  return std::make_shared<QuarticTensorSpline>(std::move(grid), std::move(cells));
}

// ---------------------------------------------------------------------------
// C1 infeasibility certificate

/// Data entering the C1 conditions of one cell. Entries 1..4 are used.
/// `row1[j]` = a_1j and `col1[i]` = a_i1 are the coefficients fixed by the
/// derivative matching with the neighbouring cells.
struct C1BoundaryData {
  Poly4 dgamma{};
  Poly4 dbeta{};
  Poly4 row1{};
  Poly4 col1{};

  template <class Rng>
  static C1BoundaryData random(Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    C1BoundaryData d;
    for (int i = 1; i <= 4; ++i) {
      d.dgamma[i] = u(rng);
      d.dbeta[i] = u(rng);
      d.row1[i] = u(rng);
      d.col1[i] = u(rng);
    }
    d.col1[1] = d.row1[1];  // both name a_11
    return d;
  }
};

enum class Verdict { Infeasible, Feasible };

inline const char* to_string(Verdict v) { return v == Verdict::Infeasible ? "Infeasible" : "Feasible"; }

struct C1Certificate {
  double dx = 0.0;
  double dy = 0.0;
  int rank_line_system = 0;      // eight line-matching equations in sixteen unknowns
  int rank_dependent_minor = 0;  // the 7x7 subsystem solved for the dependent coefficients
  int rank_c1_system = 0;        // seven C1 equations in the nine free coefficients
  int rank_augmented = 0;
  Verdict verdict = Verdict::Feasible;
};

/// Rank with singular values below rel_tol * sigma_max treated as zero.
inline int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= rel_tol * s(0)) ++r;
  return r;
}

/// Line-matching system: rows gamma_1..4, beta_1..4; columns a_ij (i,j in 1..4) row-major.
inline Eigen::MatrixXd line_matching_matrix(double dx, double dy) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(8, 16);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const int col = (i - 1) * 4 + (j - 1);
      d(i - 1, col) = std::pow(dy, j);
      d(3 + j, col) = std::pow(dx, i);
    }
  return d;
}

/// C1 system for the free block; columns a22,a32,a42,a23,a33,a43,a24,a34,a44.
inline Eigen::MatrixXd c1_system_matrix(double dx, double dy) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(7, 9);
  int col = 0;
  for (int j = 2; j <= 4; ++j)
    for (int i = 2; i <= 4; ++i, ++col) {
      if (j == 2) m(0, col) = std::pow(dx, i - 2);
      if (j == 3) m(1, col) = std::pow(dx, i - 2);
      m(i, col) = std::pow(dy, j - 2);  // rows 2..4 hold i = 2..4
      m(5, col) = j * std::pow(dy, j - 1) * std::pow(dx, i - 1);
      m(6, col) = i * std::pow(dx, i - 1) * std::pow(dy, j - 1);
    }
  return m;
}

inline Eigen::VectorXd c1_system_rhs(double dx, double dy, const C1BoundaryData& b) {
  Eigen::VectorXd r(7);
  r(0) = b.dbeta[2] / (dx * dx) - b.row1[2] / dx;
  r(1) = b.dbeta[3] / (dx * dx) - b.row1[3] / dx;
  r(2) = b.dgamma[2] / (dy * dy) - b.col1[2] / dy;
  r(3) = b.dgamma[3] / (dy * dy) - b.col1[3] / dy;
  r(4) = b.dgamma[4] / (dy * dy) - b.col1[4] / dy;
  double s5 = 0.0, s6 = 0.0;
  for (int j = 1; j <= 4; ++j) {
    s5 += j * b.row1[j] * std::pow(dy, j - 1);
    s6 += b.row1[j] * std::pow(dy, j - 1);
  }
  for (int i = 2; i <= 4; ++i) {
    s5 += b.col1[i] * std::pow(dx, i - 1);
    s6 += i * b.col1[i] * std::pow(dx, i - 1);
  }
  r(5) = -s5;
  r(6) = -s6;
  return r;
}

/// Decides whether the free block of a cell with spacings dx, dy > 0 can
/// satisfy the C1 matching conditions for the given boundary data.
inline C1Certificate c1_infeasibility_certificate(double dx, double dy, const C1BoundaryData& data) {
  if (!(dx > 0.0) || !(dy > 0.0)) throw SpecError("certificate: spacings must be positive");
  // cell-local signed spacings
  const double sx = -dx, sy = -dy;
  C1Certificate cert{dx, dy};

  const Eigen::MatrixXd d = line_matching_matrix(sx, sy);
  cert.rank_line_system = numeric_rank(d);
  // dependent a11,a12,a13,a14,a21,a31,a41 against equations gamma_1..4, beta_1..3
  const int dep_cols[7] = {0, 1, 2, 3, 4, 8, 12};
  Eigen::MatrixXd minor(7, 7);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) minor(r, c) = d(r, dep_cols[c]);
  cert.rank_dependent_minor = numeric_rank(minor);

  const Eigen::MatrixXd m = c1_system_matrix(sx, sy);
  Eigen::MatrixXd aug(7, 10);
  aug << m, c1_system_rhs(sx, sy, data);
  cert.rank_c1_system = numeric_rank(m);
  cert.rank_augmented = numeric_rank(aug);
  cert.verdict = cert.rank_augmented > cert.rank_c1_system ? Verdict::Infeasible : Verdict::Feasible;
  return cert;
}

}  // namespace statsurf
