// Walks through each construction on a small input and prints what the
// stationary-point scanner sees.

#include <cstdio>
#include <random>

#include "statsurf/statsurf.hpp"

using namespace statsurf;

namespace {

void show(const char* title, const SurfaceModel& m, const StationarySpec& s) {
  const auto r = verify_problem(m, s);
  std::printf("%-28s A %s  B %s  C %s  found %zu  spurious %zu  flat %zu\n", title, r.a ? "pass" : "fail",
              r.b ? (*r.b ? "pass" : "fail") : "n.a.", r.c ? "pass" : "fail", r.evidence.found.size(),
              r.evidence.spurious.size(), r.evidence.flat_regions.size());
}

}  // namespace

int main() {
  const std::vector<double> x{0, 1, 2.2, 3, 4.5}, z{0, 1, -0.4, 0.6, -1};
  StationarySpec line{1, {}, z, ProblemMode::C};
  for (double v : x) line.points.push_back({v, 0});
  const Knots1D k{x, z};

  show("trig 1D", *build_trig(k), line);
  show("quartic 1D, c = 0", *build_quartic(k, std::vector<double>(k.cells(), 0.0)), line);
  show("quartic C2, mean c0", *build_quartic_c2(k, choose_c0(k, C0Strategy::MeanCurvatureZero)), line);

  StationarySpec alt{1, {{0, 0}, {0.8, 0}, {1.7, 0}, {2.7, 0}}, std::vector<double>{1, -0.8, 0.9, -0.6},
                     ProblemMode::C};
  show("bump 1D, alternating", *build_bump_surface(alt, BumpParams::uniform(auto_radii(alt), *alt.values)), alt);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  GridKnots2D g({0, 1, 2, 3, 4}, {0, 0.8, 2, 2.5, 4}, 0.0);
  for (double& v : g.z) v = u(rng);
  StationarySpec grid{2, {}, std::vector<double>{}, ProblemMode::C};
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      grid.points.push_back({g.x[i], g.y[j]});
      grid.values->push_back(g.at(i, j));
    }
  auto t2 = build_trig2(g);
  show("trig 2D", *t2, grid);
  std::printf("  cells flagged by |P10|,|P01| < |P11|: %zu\n", t2->risky_cells().size());
  show("quartic 2D (C0)", *build_tensor_c0(g), grid);

  const auto cert = c1_infeasibility_certificate(1.0, 1.0, C1BoundaryData::random(rng));
  std::printf("C1 quartic cell: rank D %d, rank of the C1 system %d, augmented %d -> %s\n", cert.rank_line_system,
              cert.rank_c1_system, cert.rank_augmented, to_string(cert.verdict));

  StationarySpec scatter{2, {{0, 0}, {1, 0.4}, {0.3, 1.2}, {1.5, 1.5}, {0.8, 0.6}},
                         std::vector<double>{0.5, -0.7, 0.2, 0.9, -0.3}, ProblemMode::B};
  for (std::size_t m : {1, 3}) {
    char title[64];
    std::snprintf(title, sizeof title, "superposition, %zu frame(s)", m);
    show(title, *build_superposition(scatter, default_angles(m), BaseMethod::TrigTensor, CompletionStrategy::random(1)),
         scatter);
  }
}
