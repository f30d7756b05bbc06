#pragma once

#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "statsurf/bump.hpp"
#include "statsurf/io.hpp"
#include "statsurf/quartic1d.hpp"
#include "statsurf/quartic2d.hpp"
#include "statsurf/superposition.hpp"
#include "statsurf/trig1d.hpp"
#include "statsurf/trig2d.hpp"

namespace statsurf {

// Method dispatch shared by the command-line tool and the tests: a flat
// configuration record plus a point set gives a model.

struct ModelConfig {
  std::string method = "trig";
  std::uint64_t seed = 0;
  // bump
  double base = std::numbers::e;
  double radius_scale = 1.0;
  std::string shape = "one";
  // quartic / quartic-c2
  std::string c = "zero";
  std::string c0 = "mean";
  // quartic2d
  std::string free_block = "zero";
  double c0x = 0.0;
  double c0y = 0.0;
  // trig-c2
  double z0 = 0.0;
  double mu = 1.0;
  // trig2d-c2
  double z00 = 0.0;
  double nu0 = 0.0;
  double mu0 = 0.0;
  double lambda = 1.0;
  // superpose, and completion of scattered 2D input for grid methods
  std::size_t rotations = 3;
  std::string base_method = "trig";
  std::string fill = "nearest";
};

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> m{"bump", "quartic",   "quartic-c2", "quartic2d", "trig",
                                          "trig-c2", "trig2d", "trig2d-c2", "superpose"};
  return m;
}

inline json to_json(const ModelConfig& c) {
  return json{{"method", c.method},       {"seed", c.seed},
              {"base", c.base},           {"radius_scale", c.radius_scale},
              {"shape", c.shape},         {"c", c.c},
              {"c0", c.c0},               {"free_block", c.free_block},
              {"c0x", c.c0x},             {"c0y", c.c0y},
              {"z0", c.z0},               {"mu", c.mu},
              {"z00", c.z00},             {"nu0", c.nu0},
              {"mu0", c.mu0},             {"lambda", c.lambda},
              {"rotations", c.rotations}, {"base_method", c.base_method},
              {"fill", c.fill}};
}

/// Overlays the keys present in `j` on `c`; unknown keys are rejected.
inline void apply_json(ModelConfig& c, const json& j) {
  if (!j.is_object()) throw SpecError("model config: expected a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      if (k == "method") c.method = v.get<std::string>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "base") c.base = v.get<double>();
      else if (k == "radius_scale") c.radius_scale = v.get<double>();
      else if (k == "shape") c.shape = v.get<std::string>();
      else if (k == "c") c.c = v.get<std::string>();
      else if (k == "c0") c.c0 = v.is_number() ? format_real(v.get<double>()) : v.get<std::string>();
      else if (k == "free_block") c.free_block = v.get<std::string>();
      else if (k == "c0x") c.c0x = v.get<double>();
      else if (k == "c0y") c.c0y = v.get<double>();
      else if (k == "z0") c.z0 = v.get<double>();
      else if (k == "mu") c.mu = v.get<double>();
      else if (k == "z00") c.z00 = v.get<double>();
      else if (k == "nu0") c.nu0 = v.get<double>();
      else if (k == "mu0") c.mu0 = v.get<double>();
      else if (k == "lambda") c.lambda = v.get<double>();
      else if (k == "rotations") c.rotations = v.get<std::size_t>();
      else if (k == "base_method") c.base_method = v.get<std::string>();
      else if (k == "fill") c.fill = v.get<std::string>();
      else throw SpecError("model config: unknown key `" + k + "`");
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("model config: ") + e.what());
  }
}

struct BuiltModel {
  ModelPtr model;
  /// The point set the model realises, with any generated values filled in.
  StationarySpec spec;
  std::vector<std::string> notes;
};

namespace detail {

inline std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw SpecError("bad number `" + item + "`");
    } catch (const std::logic_error&) {
      throw SpecError("bad number `" + item + "`");
    }
  }
  return out;
}

inline double parse_real(const std::string& s, const char* what) {
  const auto v = parse_real_list(s);
  if (v.size() != 1) throw SpecError(std::string(what) + ": expected one number");
  return v[0];
}

inline std::uint64_t parse_seed_suffix(const std::string& s, const std::string& prefix) {
  try {
    std::size_t used = 0;
    const std::string tail = s.substr(prefix.size());
    const auto v = std::stoull(tail, &used);
    if (used != tail.size()) throw SpecError("bad seed in `" + s + "`");
    return v;
  } catch (const std::logic_error&) {
    throw SpecError("bad seed in `" + s + "`");
  }
}

inline CompletionStrategy parse_fill(const std::string& s) {
  if (s == "zero") return CompletionStrategy::zero();
  if (s == "nearest") return CompletionStrategy::nearest();
  if (s.rfind("random:", 0) == 0) return CompletionStrategy::random(parse_seed_suffix(s, "random:"));
  throw SpecError("fill must be zero, nearest or random:<seed>");
}

/// Values for point sets that carry none: uniform in [-1, 1], or for 1D bump
/// mode C alternating signs with magnitudes in [0.5, 1] along increasing x.
inline std::vector<double> generated_values(const StationarySpec& s, const std::string& method, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = s.points.size();
  std::vector<double> v(n);
  if (method == "bump" && s.mode == ProblemMode::C && s.dimension == 1) {
    std::uniform_real_distribution<double> u(0.5, 1.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.points[a].x < s.points[b].x; });
    for (std::size_t k = 0; k < n; ++k) v[order[k]] = (k % 2 == 0 ? 1.0 : -1.0) * u(rng);
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& x : v) x = u(rng);
  }
  return v;
}

inline Knots1D knots_of(const StationarySpec& s) {
  if (s.dimension != 1) throw SpecError("method needs a 1D point set");
  std::vector<std::size_t> order(s.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.points[a].x < s.points[b].x; });
  Knots1D k;
  for (auto i : order) {
    k.x.push_back(s.points[i].x);
    k.z.push_back(s.value_at(i));
  }
  k.validate();
  return k;
}

/// The lattice through the points when they already form one, else the
/// completion of the points by `fill`.
inline GridKnots2D grid_of(const StationarySpec& s, const std::string& fill, std::vector<std::string>& notes) {
  if (s.dimension != 2) throw SpecError("method needs a 2D point set");
  auto done = complete_to_grid_indexed(s.points, s.values.value_or(std::vector<double>(s.points.size(), 0.0)),
                                       parse_fill(fill));
  if (done.completed > 0)
    notes.push_back("completed " + std::to_string(done.completed) + " lattice vertices with fill " + fill);
  return std::move(done.grid);
}

}  // namespace detail

inline BuiltModel build_model(const PointSetDocument& doc, const ModelConfig& cfg) {
  BuiltModel out;
  out.spec = doc.spec;
  auto& spec = out.spec;
  const auto& m = cfg.method;
  if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
    throw SpecError("unknown method `" + m + "`");
  if (!spec.values && m != "trig-c2" && m != "trig2d-c2") {
    spec.values = detail::generated_values(spec, m, cfg.seed);
    out.notes.push_back("values generated from seed " + std::to_string(cfg.seed));
  }

  if (m == "bump") {
    BumpShape shape = ConstantOne{};
    if (cfg.shape.rfind("quadratic:", 0) == 0) {
      const double q = detail::parse_real(cfg.shape.substr(10), "shape");
      shape = Quadratic{{q, 0.0, q}};
    } else if (cfg.shape != "one") {
      throw SpecError("shape must be one or quadratic:<q>");
    }
    auto params = BumpParams::uniform(auto_radii(spec, cfg.radius_scale), *spec.values, cfg.base, shape);
    auto b = build_bump_surface(spec, std::move(params), doc.region);
    for (const auto& w : b->warnings()) out.notes.push_back("warning: " + w);
    out.model = b;
  } else if (m == "quartic") {
    auto k = detail::knots_of(spec);
    std::vector<double> c(k.cells(), 0.0);
    if (cfg.c == "random") {
      std::mt19937_64 rng(cfg.seed + 1);
      c = random_curvatures(k.cells(), rng);
    } else if (cfg.c.rfind("list:", 0) == 0) {
      c = detail::parse_real_list(cfg.c.substr(5));
    } else if (cfg.c != "zero") {
      throw SpecError("c must be random, zero or list:<csv>");
    }
    if (c.size() != k.cells()) throw SpecError("c list needs one entry per cell");
    out.model = build_quartic(std::move(k), c);
  } else if (m == "quartic-c2") {
    auto k = detail::knots_of(spec);
    double c0 = 0.0;
    if (cfg.c0 == "min")
      c0 = choose_c0(k, C0Strategy::AllMinima);
    else if (cfg.c0 == "max")
      c0 = choose_c0(k, C0Strategy::AllMaxima);
    else if (cfg.c0 == "mean")
      c0 = choose_c0(k, C0Strategy::MeanCurvatureZero);
    else
      c0 = detail::parse_real(cfg.c0, "c0");
    out.notes.push_back("c0 = " + format_real(c0) + "; extrema and mean taken over S_0..S_N with S_0 = 0");
    out.model = build_quartic_c2(std::move(k), c0);
  } else if (m == "trig") {
    out.model = build_trig(detail::knots_of(spec));
  } else if (m == "trig-c2") {
    auto k = detail::knots_of(spec);
    k.z = generate_c2_values(k.x, {cfg.z0, cfg.mu});
    std::vector<double> v(spec.points.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = k.z[std::lower_bound(k.x.begin(), k.x.end(), spec.points[i].x) - k.x.begin()];
    if (spec.values) out.notes.push_back("input values replaced by the C2 family");
    spec.values = v;
    out.model = build_trig(std::move(k));
  } else if (m == "quartic2d" || m == "trig2d" || m == "trig2d-c2") {
    auto g = detail::grid_of(spec, cfg.fill, out.notes);
    if (m == "trig2d-c2") {
      g = generate_c2_grid(g.x, g.y, {cfg.z00, cfg.nu0, cfg.mu0, cfg.lambda});
      std::vector<double> v(spec.points.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto k = std::lower_bound(g.x.begin(), g.x.end(), spec.points[i].x) - g.x.begin();
        const auto l = std::lower_bound(g.y.begin(), g.y.end(), spec.points[i].y) - g.y.begin();
        v[i] = g.at(k, l);
      }
      if (spec.values) out.notes.push_back("input values replaced by the C2 family");
      spec.values = v;
      out.model = build_trig2(std::move(g));
    } else if (m == "trig2d") {
      auto t = build_trig2(std::move(g));
      if (const auto n = t->risky_cells().size(); n > 0)
        out.notes.push_back(std::to_string(n) + " cells carry an interior stationary point");
      out.model = t;
    } else {
      QuarticTensorOptions opt{cfg.c0x, cfg.c0y, std::nullopt};
      if (cfg.free_block.rfind("random:", 0) == 0) {
        std::mt19937_64 rng(detail::parse_seed_suffix(cfg.free_block, "random:"));
        opt.free_blocks = random_free_blocks(g, rng);
      } else if (cfg.free_block != "zero") {
        throw SpecError("free-block must be zero or random:<seed>");
      }
      out.model = build_tensor_c0(std::move(g), opt);
    }
  } else if (m == "superpose") {
    if (cfg.rotations == 0) throw SpecError("rotations must be positive");
    BaseMethod base = BaseMethod::TrigTensor;
    if (cfg.base_method == "quartic")
      base = BaseMethod::QuarticTensor;
    else if (cfg.base_method != "trig")
      throw SpecError("base must be trig or quartic");
    auto s = build_superposition(spec, default_angles(cfg.rotations), base, detail::parse_fill(cfg.fill), doc.region);
    for (const auto& w : s->warnings()) out.notes.push_back("warning: " + w);
    out.model = s;
  }
  return out;
}

}  // namespace statsurf
