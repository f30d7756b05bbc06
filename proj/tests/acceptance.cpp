// Acceptance gate: one line per criterion, exit status 1 if any fails.
// Usage: acceptance <statsurf binary> <work dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "statsurf/statsurf.hpp"

using namespace statsurf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Rng = std::mt19937_64;

std::vector<double> knots(Rng& rng, std::size_t n, double lo = 0.5, double hi = 1.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(n);
  for (std::size_t i = 1; i < n; ++i) x[i] = x[i - 1] + u(rng);
  return x;
}

std::vector<double> values(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> z(n);
  for (double& v : z) v = u(rng);
  return z;
}

GridKnots2D grid(Rng& rng, std::size_t n) { return GridKnots2D(knots(rng, n), knots(rng, n), values(rng, n * n)); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Largest one-sided second-order difference (3-point stencil, step h) per
/// axis. Stencils never straddle a knot, so a jump in the second derivative
/// there does not leak into the estimate the way it does for a central one.
Gradient fd_one_sided(const SurfaceModel& m, Point p, double h) {
  const Region& r = m.region();
  auto axis = [&](bool x, double lo, double hi, double at) {
    auto f = [&](double t) { return m.value(x ? Point{t, p.y} : Point{p.x, t}); };
    double worst = 0;
    if (at + 2 * h <= hi) worst = std::max(worst, std::abs(-3 * f(at) + 4 * f(at + h) - f(at + 2 * h)) / (2 * h));
    if (at - 2 * h >= lo) worst = std::max(worst, std::abs(3 * f(at) - 4 * f(at - h) + f(at - 2 * h)) / (2 * h));
    return worst;
  };
  Gradient g{axis(true, r.xmin(), r.xmax(), p.x), 0};
  if (m.dimension() == 2) g.dy = axis(false, r.ymin(), r.ymax(), p.y);
  return g;
}

/// Central difference where it fits in the region, else nothing (reported
/// alongside the one-sided figure for reference).
double fd_central_norm(const SurfaceModel& m, Point p, double h) {
  const Region& r = m.region();
  if (p.x - h < r.xmin() || p.x + h > r.xmax()) return 0;
  if (m.dimension() == 2 && (p.y - h < r.ymin() || p.y + h > r.ymax())) return 0;
  return fd_gradient(m, p, h).norm();
}

StationarySpec spec_of(const std::vector<double>& x, const std::vector<double>& z, ProblemMode mode) {
  StationarySpec s{1, {}, z, mode};
  for (double v : x) s.points.push_back({v, 0});
  return s;
}

StationarySpec spec_of(const GridKnots2D& g, ProblemMode mode) {
  StationarySpec s{2, {}, std::vector<double>{}, mode};
  for (std::size_t k = 0; k < g.nx(); ++k)
    for (std::size_t l = 0; l < g.ny(); ++l) {
      s.points.push_back({g.x[k], g.y[l]});
      s.values->push_back(g.at(k, l));
    }
  return s;
}

// 1. Problem B at the prescribed points, every construction that takes values.
Outcome problem_b() {
  Rng rng(101);
  double val = 0, an = 0, fd = 0, central = 0;
  auto check = [&](const SurfaceModel& m, const StationarySpec& s) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      val = std::max(val, std::abs(m.value(s.points[i]) - s.value_at(i)));
      an = std::max(an, m.gradient(s.points[i]).norm());
      fd = std::max(fd, fd_one_sided(m, s.points[i], 1e-6).norm());
      central = std::max(central, fd_central_norm(m, s.points[i], 1e-6));
    }
  };
  std::uniform_int_distribution<std::size_t> npts(2, 12), nside(2, 8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 100; ++t) {
    {
      const std::size_t n = npts(rng);
      StationarySpec s{t % 2 ? 2 : 1, {}, std::vector<double>{}, ProblemMode::B};
      while (s.points.size() < n) {
        const Point p{u(rng), s.dimension == 2 ? u(rng) : 0.0};
        if (std::find(s.points.begin(), s.points.end(), p) != s.points.end()) continue;
        s.points.push_back(p);
        s.values->push_back(u(rng));
      }
      check(*build_bump_surface(s, BumpParams::uniform(auto_radii(s), {})), s);
    }
    {
      const std::size_t n = npts(rng);
      Knots1D k{knots(rng, n), values(rng, n)};
      const auto s = spec_of(k.x, k.z, ProblemMode::B);
      check(*build_quartic(k, random_curvatures(k.cells(), rng, -5, 5)), s);
      check(*build_quartic_c2(k, choose_c0(k, C0Strategy::MeanCurvatureZero)), s);
      check(*build_trig(k), s);
    }
    {
      const auto g = GridKnots2D(knots(rng, nside(rng)), knots(rng, nside(rng)), 0.0);
      GridKnots2D h = g;
      h.z = values(rng, g.z.size());
      const auto s = spec_of(h, ProblemMode::B);
      check(*build_tensor_c0(h, {0.1, -0.1, random_free_blocks(h, rng)}), s);
      check(*build_trig2(h), s);
    }
  }
  Outcome o;
  o.pass = val <= 1e-9 && an <= 1e-9 && fd <= 1e-5;
  o.detail = "max|F-z| " + fmt("%.2e", val) + ", max|grad| " + fmt("%.2e", an) + ", max|fd grad| one-sided " + fmt("%.2e", fd) +
             " (central across knots " + fmt("%.2e", central) + ")";
  return o;
}

// 2. Numeric ranks of the quartic C1 systems.
Outcome ranks() {
  Rng rng(202);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  int bad = 0;
  std::set<int> seen_d, seen_sys, seen_aug;
  for (int t = 0; t < 100; ++t) {
    const auto c = c1_infeasibility_certificate(u(rng), u(rng), C1BoundaryData::random(rng));
    seen_d.insert(c.rank_line_system);
    seen_sys.insert(c.rank_c1_system);
    seen_aug.insert(c.rank_augmented);
    if (c.rank_line_system != 7 || c.rank_c1_system != 5 || c.rank_augmented <= 5 || c.verdict != Verdict::Infeasible)
      ++bad;
  }
  auto list = [](const std::set<int>& s) {
    std::string out;
    for (int v : s) out += (out.empty() ? "" : "/") + std::to_string(v);
    return out;
  };
  return {bad == 0, "rank D {" + list(seen_d) + "}, rank sys7a {" + list(seen_sys) + "}, augmented {" + list(seen_aug) +
                        "}, " + std::to_string(100 - bad) + "/100 Infeasible"};
}

// 3. Second-derivative continuity of the C2 families.
Outcome c2_continuity() {
  Rng rng(303);
  double worst = 0;  // jump / (1 + max|z|)
  for (int t = 0; t < 50; ++t) {
    Knots1D k{knots(rng, 10), values(rng, 10)};
    const double c0 = values(rng, 1)[0] * 5;
    auto q = build_quartic_c2(k, c0);
    double zmax = 0;
    for (double v : k.z) zmax = std::max(zmax, std::abs(v));
    worst = std::max(worst, continuity_report(*q).max_second / (1 + zmax));

    auto x = knots(rng, 10);
    const auto p = values(rng, 2);
    auto z = generate_c2_values(x, {p[0], p[1]});
    zmax = 0;
    for (double v : z) zmax = std::max(zmax, std::abs(v));
    worst = std::max(worst, continuity_report(*build_trig(Knots1D{x, z})).max_second / (1 + zmax));

    const auto r = values(rng, 4);
    auto g = generate_c2_grid(knots(rng, 6), knots(rng, 6), {r[0], r[1], r[2], r[3]});
    worst = std::max(worst, continuity_report(*build_trig2(g)).max_second / (1 + g.max_abs()));
  }
  return {worst <= 1e-8, "max second-derivative jump / (1 + max|z|) " + fmt("%.2e", worst)};
}

// 4. Problem C in 1D at resolution 4096.
Outcome problem_c_1d() {
  Rng rng(404);
  int ok_trig = 0, ok_bump = 0;
  std::string first_failure;
  auto exact = [](const StationaryScanReport& r, std::size_t n) {
    return r.found.size() == n && r.spurious.empty() && r.missed.empty() && r.flat_regions.empty();
  };
  ScanOptions opt;
  opt.resolution = 4096;
  std::uniform_int_distribution<std::size_t> npts(3, 12);
  std::uniform_real_distribution<double> mag(0.5, 1.0), dz(0.05, 1.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = npts(rng);
    auto x = knots(rng, n);
    std::vector<double> z{values(rng, 1)[0]};
    while (z.size() < n) z.push_back(z.back() + (rng() % 2 ? 1 : -1) * dz(rng));
    auto m = build_trig(Knots1D{x, z});
    opt.region = m->region();
    if (exact(scan_stationary(*m, spec_of(x, z, ProblemMode::C).points, opt), n))
      ++ok_trig;
    else if (first_failure.empty())
      first_failure = "trig instance " + std::to_string(t);

    // non-decreasing spacings keep every center outside its neighbours' supports
    std::vector<double> h(n - 1);
    std::uniform_real_distribution<double> sp(0.5, 1.5);
    for (double& v : h) v = sp(rng);
    std::sort(h.begin(), h.end());
    std::vector<double> xb{0.0};
    for (double v : h) xb.push_back(xb.back() + v);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (i % 2 ? -1.0 : 1.0) * mag(rng);
    const auto s = spec_of(xb, c, ProblemMode::C);
    auto b = build_bump_surface(s, BumpParams::uniform(auto_radii(s), c));
    opt.region = s.hull();
    if (exact(scan_stationary(*b, s.points, opt), n))
      ++ok_bump;
    else if (first_failure.empty())
      first_failure = "bump instance " + std::to_string(t);
  }
  return {ok_trig == 50 && ok_bump == 50, "exact: trig " + std::to_string(ok_trig) + "/50, bump " +
                                              std::to_string(ok_bump) + "/50" +
                                              (first_failure.empty() ? "" : "; first failure " + first_failure)};
}

// 5. Spurious stationary points of the 2D grid constructions.
Outcome false_stationary_2d() {
  Rng rng(505);
  const int trials = 50;
  int quartic_hit = 0, trig_hit = 0, trig_exact = 0;
  for (int t = 0; t < trials; ++t) {
    const auto g = grid(rng, 8);
    const auto s = spec_of(g, ProblemMode::C);
    auto q = build_tensor_c0(g);
    if (!scan_stationary(*q, s.points).spurious.empty()) ++quartic_hit;

    auto tr = build_trig2(g);
    const auto rep = scan_stationary(*tr, s.points);
    if (!rep.spurious.empty()) ++trig_hit;
    std::multiset<std::pair<std::size_t, std::size_t>> where;
    bool on_edge = false;
    for (std::size_t i : rep.spurious) {
      const Point p = rep.found[i].location;
      on_edge = on_edge || std::binary_search(g.x.begin(), g.x.end(), p.x) || std::binary_search(g.y.begin(), g.y.end(), p.y);
      where.insert(tr->owning_cell(p));
    }
    const auto risky = tr->risky_cells();
    if (!on_edge && where == std::multiset<std::pair<std::size_t, std::size_t>>(risky.begin(), risky.end())) ++trig_exact;
  }
  const bool pass = quartic_hit >= 0.9 * trials && trig_hit >= 0.9 * trials && trig_exact == trials;
  return {pass, "spurious >= 1: quartic2d " + std::to_string(quartic_hit) + "/" + std::to_string(trials) + ", trig2d " +
                    std::to_string(trig_hit) + "/" + std::to_string(trials) + "; trig2d spurious cells == risky cells in " +
                    std::to_string(trig_exact) + "/" + std::to_string(trials)};
}

// 6. Superposition over rotated frames, default base (trig) and fill (nearest).
// Flat regions count as spurious alongside isolated points.
Outcome superposition() {
  Rng rng(606);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  int fewer = 0;
  std::size_t total1 = 0, total3 = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    StationarySpec s{2, {}, std::vector<double>{}, ProblemMode::B};
    for (int i = 0; i < 5; ++i) {
      s.points.push_back({u(rng), u(rng)});
      s.values->push_back(u(rng));
    }
    std::size_t count[4] = {};
    for (std::size_t m : {1, 2, 3}) {
      auto f = build_superposition(s, default_angles(m));
      for (const auto& p : s.points) worst = std::max(worst, f->gradient(p).norm());
      if (m == 2) continue;
      const auto rep = scan_stationary(*f, s.points);
      count[m] = rep.spurious.size() + rep.flat_regions.size();
    }
    total1 += count[1];
    total3 += count[3];
    if (count[3] <= count[1]) ++fewer;
  }
  const bool pass = worst <= 1e-9 && fewer >= 0.8 * trials;
  return {pass, "max|grad| at points " + fmt("%.2e", worst) + "; spurious(m=3) <= spurious(m=1) in " +
                    std::to_string(fewer) + "/" + std::to_string(trials) + " (totals " + std::to_string(total3) + " vs " +
                    std::to_string(total1) + ")"};
}

// 7. Analytic gradients against central differences.
Outcome gradients() {
  Rng rng(707);
  std::vector<std::pair<std::string, ModelPtr>> models;
  {
    auto x = knots(rng, 9);
    Knots1D k{x, values(rng, 9)};
    models.emplace_back("quartic", build_quartic(k, random_curvatures(k.cells(), rng, -5, 5)));
    models.emplace_back("quartic-c2", build_quartic_c2(k, choose_c0(k, C0Strategy::AllMinima)));
    models.emplace_back("trig", build_trig(k));
    models.emplace_back("trig-c2", build_trig(Knots1D{x, generate_c2_values(x, {0.2, 0.7})}));
    const auto s1 = spec_of(x, k.z, ProblemMode::B);
    models.emplace_back("bump-1d", build_bump_surface(s1, BumpParams::uniform(auto_radii(s1), {})));
    std::vector<double> xb{0, 0.7, 1.5, 2.4, 3.5};
    std::vector<double> c{1, -0.8, 0.6, -0.9, 0.7};
    const auto sc = spec_of(xb, c, ProblemMode::C);
    models.emplace_back("bump-1d-C", build_bump_surface(sc, BumpParams::uniform(auto_radii(sc), c)));
  }
  {
    const auto g = grid(rng, 6);
    models.emplace_back("quartic2d", build_tensor_c0(g, {0.2, -0.3, random_free_blocks(g, rng)}));
    models.emplace_back("trig2d", build_trig2(g));
    models.emplace_back("trig2d-c2", build_trig2(generate_c2_grid(knots(rng, 6), knots(rng, 6), {0.1, 0.3, -0.2, 0.4})));
    StationarySpec s{2, {}, std::vector<double>{}, ProblemMode::B};
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 8; ++i) {
      s.points.push_back({u(rng), u(rng)});
      s.values->push_back(u(rng));
    }
    models.emplace_back("bump-2d", build_bump_surface(s, BumpParams::uniform(auto_radii(s), {}, 2.5, Quadratic{{0.2, 0.1, -0.3}})));
    models.emplace_back("superpose", build_superposition(s, default_angles(3), BaseMethod::TrigTensor, CompletionStrategy::random(4)));
    models.emplace_back("superpose-quartic", build_superposition(s, default_angles(2), BaseMethod::QuarticTensor));
  }
  const double h = 1e-6;
  double worst = 0;
  std::string worst_name;
  for (const auto& [name, m] : models) {
    const Region& r = m->region();
    const auto itf = m->interfaces();
    auto near_interface = [&](Point p) {
      for (const auto& i : itf) {
        const double d = i.normal == Interface::Normal::X ? std::abs(p.x - i.position) : std::abs(p.y - i.position);
        if (d < 10 * h) return true;
      }
      return false;
    };
    std::uniform_real_distribution<double> ux(r.xmin() + 10 * h, r.xmax() - 10 * h), uy(r.ymin() + 10 * h, r.ymax() - 10 * h);
    int n = 0;
    while (n < 100) {
      const Point p{ux(rng), m->dimension() == 2 ? uy(rng) : 0.0};
      if (near_interface(p)) continue;
      ++n;
      const auto an = m->gradient(p), fd = fd_gradient(*m, p, h);
      const double err = std::max(std::abs(an.dx - fd.dx), std::abs(an.dy - fd.dy)) / std::max(1.0, an.norm());
      if (err > worst) {
        worst = err;
        worst_name = name;
      }
    }
  }
  return {worst <= 1e-5, std::to_string(models.size()) + " constructions x 100 points, max relative error " +
                             fmt("%.2e", worst) + " (" + worst_name + ")"};
}

// 8. Sign guarantees of the c0 strategies.
Outcome c0_strategies() {
  Rng rng(808);
  double lo = INFINITY, hi = -INFINITY, mean = 0;
  std::uniform_int_distribution<std::size_t> npts(2, 15);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = npts(rng);
    Knots1D k{knots(rng, n, 0.1, 3.0), values(rng, n)};
    auto d2 = [&](C0Strategy st) {
      auto s = build_quartic_c2(k, choose_c0(k, st));
      std::vector<double> v;
      for (std::size_t i = 0; i < n; ++i) v.push_back(s->knot_curvature(i));
      return v;
    };
    const auto a = d2(C0Strategy::AllMinima), b = d2(C0Strategy::AllMaxima), c = d2(C0Strategy::MeanCurvatureZero);
    lo = std::min(lo, *std::min_element(a.begin(), a.end()));
    hi = std::max(hi, *std::max_element(b.begin(), b.end()));
    mean = std::max(mean, std::abs(std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size())));
  }
  return {lo >= -1e-12 && hi <= 1e-12 && mean <= 1e-10, "min d2 (AllMinima) " + fmt("%.2e", lo) + ", max d2 (AllMaxima) " +
                                                            fmt("%.2e", hi) + ", |mean d2| (MeanCurvatureZero) " +
                                                            fmt("%.2e", mean)};
}

// 9. Byte-identical CLI outputs for a fixed seed.
Outcome determinism(const std::string& cli, const fs::path& work) {
  fs::create_directories(work);
  auto put = [&](const char* name, const char* text) {
    std::ofstream(work / name) << text;
    return (work / name).string();
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " 2>/dev/null";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  const auto one = put("det1d.json", R"({"dimension": 1, "mode": "A", "points": [[0], [0.7], [1.9], [2.5], [4]]})");
  const auto two = put("det2d.json", R"({"dimension": 2, "mode": "A", "points": [[0, 0], [1, 0.4], [0.3, 1.2], [1.5, 1.5], [0.8, 0.6]]})");
  const std::vector<std::string> jobs{
      "generate --method quartic --c random --in " + one + " --n 200",
      "generate --method bump --in " + one + " --n 200",
      "generate --method quartic2d --free-block random:5 --in " + two + " --n 40",
      "generate --method superpose --fill random:3 --rotations 3 --in " + two + " --n 40",
      "verify --method trig2d --in " + two + " --resolution 64",
      "certificate --dx 1.3 --dy 0.7",
  };
  int same = 0;
  std::string differs;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const fs::path out = work / ("det_" + std::to_string(j));
    const std::string args = jobs[j] + " --seed 42 --out " + out.string();
    std::string first, first_meta;
    bool ok = true;
    for (int rep = 0; rep < 2; ++rep) {
      fs::remove(out);
      const int st = run(args);
      ok = ok && (st == 0 || st == 1);
      const std::string text = slurp(out), meta = fs::exists(out.string() + ".meta.json") ? slurp(out.string() + ".meta.json") : "";
      if (rep == 0) {
        first = text;
        first_meta = meta;
      } else {
        ok = ok && !text.empty() && text == first && meta == first_meta;
      }
    }
    if (ok)
      ++same;
    else if (differs.empty())
      differs = "; differs: " + jobs[j];
  }
  return {same == static_cast<int>(jobs.size()),
          std::to_string(same) + "/" + std::to_string(jobs.size()) + " commands byte-identical across runs" + differs};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <statsurf binary> <work dir>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double time_limit;  // seconds, 0 for none
  };
  const std::vector<Criterion> criteria{
      {"problem B contract", problem_b, 10.0},
      {"C1 rank claims", ranks, 1.0},
      {"C2 continuity", c2_continuity, 0.0},
      {"problem C in 1D", problem_c_1d, 0.0},
      {"false stationary points in 2D", false_stationary_2d, 0.0},
      {"superposition", superposition, 60.0},
      {"gradient oracle agreement", gradients, 0.0},
      {"c0 strategies", c0_strategies, 0.0},
      {"CLI determinism", [&] { return determinism(cli, work); }, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].time_limit > 0 && secs >= criteria[i].time_limit) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", criteria[i].time_limit) + " s budget";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %-32s %s  %s  [%.2f s]\n", i + 1, criteria[i].name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
