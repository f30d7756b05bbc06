// statsurf: build surfaces with prescribed stationary points, verify them,
// sample them to CSV.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "statsurf/pipeline.hpp"
#include "statsurf/verification.hpp"

namespace {

using namespace statsurf;

constexpr const char* kSchemaHelp = R"(Point-set JSON:
  {"dimension": 1|2, "mode": "A"|"B"|"C",
   "points": [[x], ...] or [[x, y], ...],
   "values": [...]                          optional, one per point
   "region": {"bounds": [a, b] | [a, b, c, d]}   optional}
Model config JSON (--model-config): any subset of
  {"method", "seed", "base", "radius_scale", "shape", "c", "c0", "free_block",
   "c0x", "c0y", "z0", "mu", "z00", "nu0", "mu0", "lambda", "rotations",
   "base_method", "fill"}
Precedence: command-line flags > model config file > defaults.
STATSURF_SEED sets the default seed.
Exit status: 0 success, 1 verification failure, 2 bad input.)";

struct ModelFlags {
  std::map<std::string, CLI::Option*> opt;
  std::string method, base, shape, c, c0, free_block, fill, model_config;
  double radius_scale = 0, c0x = 0, c0y = 0, z0 = 0, mu = 0, z00 = 0, nu0 = 0, mu0 = 0, lambda = 0;
  std::size_t rotations = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    opt["method"] = app->add_option("--method", method, "bump|quartic|quartic-c2|quartic2d|trig|trig-c2|trig2d|trig2d-c2|superpose");
    opt["model-config"] = app->add_option("--model-config", model_config, "model configuration JSON");
    opt["seed"] = app->add_option("--seed", seed, "random seed");
    opt["base"] = app->add_option("--base", base, "bump: base a > 1; superpose: trig|quartic");
    opt["radius-scale"] = app->add_option("--radius-scale", radius_scale, "bump: radius factor in (0,1]");
    opt["shape"] = app->add_option("--shape", shape, "bump: one|quadratic:<q>");
    opt["c"] = app->add_option("--c", c, "quartic: random|zero|list:<csv>");
    opt["c0"] = app->add_option("--c0", c0, "quartic-c2: <real>|min|max|mean");
    opt["free-block"] = app->add_option("--free-block", free_block, "quartic2d: zero|random:<seed>");
    opt["c0x"] = app->add_option("--c0x", c0x, "quartic2d: first curvature of x lines");
    opt["c0y"] = app->add_option("--c0y", c0y, "quartic2d: first curvature of y lines");
    opt["z0"] = app->add_option("--z0", z0, "trig-c2");
    opt["mu"] = app->add_option("--mu", mu, "trig-c2");
    opt["z00"] = app->add_option("--z00", z00, "trig2d-c2");
    opt["nu0"] = app->add_option("--nu0", nu0, "trig2d-c2");
    opt["mu0"] = app->add_option("--mu0", mu0, "trig2d-c2");
    opt["lambda"] = app->add_option("--lambda", lambda, "trig2d-c2");
    opt["rotations"] = app->add_option("--rotations", rotations, "superpose: number of frames");
    opt["fill"] = app->add_option("--fill", fill, "completion of scattered 2D input: zero|nearest|random:<seed>");
  }

  bool given(const char* k) const { return opt.at(k)->count() > 0; }

  ModelConfig resolve() const {
    ModelConfig cfg;
    if (const char* env = std::getenv("STATSURF_SEED")) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::logic_error&) {
        throw SpecError("STATSURF_SEED is not a number");
      }
    }
    if (given("model-config")) apply_json(cfg, read_json_file(model_config));
    if (given("method")) cfg.method = method;
    if (given("seed")) cfg.seed = seed;
    if (given("base")) {
      if (cfg.method == "superpose")
        cfg.base_method = base;
      else
        cfg.base = detail::parse_real(base, "base");
    }
    if (given("radius-scale")) cfg.radius_scale = radius_scale;
    if (given("shape")) cfg.shape = shape;
    if (given("c")) cfg.c = c;
    if (given("c0")) cfg.c0 = c0;
    if (given("free-block")) cfg.free_block = free_block;
    if (given("c0x")) cfg.c0x = c0x;
    if (given("c0y")) cfg.c0y = c0y;
    if (given("z0")) cfg.z0 = z0;
    if (given("mu")) cfg.mu = mu;
    if (given("z00")) cfg.z00 = z00;
    if (given("nu0")) cfg.nu0 = nu0;
    if (given("mu0")) cfg.mu0 = mu0;
    if (given("lambda")) cfg.lambda = lambda;
    if (given("rotations")) cfg.rotations = rotations;
    if (given("fill")) cfg.fill = fill;
    return cfg;
  }
};

struct ScanFlags {
  std::size_t resolution = 256;
  double grad_tol = 1e-8;
  double value_tol = 1e-9;
  std::optional<double> match_radius;

  void attach(CLI::App* app) {
    app->add_option("--resolution", resolution, "scan samples per axis (>= 16)")->capture_default_str();
    app->add_option("--grad-tol", grad_tol, "gradient tolerance")->capture_default_str();
    app->add_option("--value-tol", value_tol, "value tolerance")->capture_default_str();
    app->add_option("--match-radius", match_radius, "default 1e-6 times the scan region diameter");
  }

  json to_json() const {
    json j{{"resolution", resolution}, {"grad_tol", grad_tol}, {"value_tol", value_tol}};
    j["match_radius"] = match_radius ? json(*match_radius) : json(nullptr);
    return j;
  }

  VerifyOptions options() const {
    VerifyOptions v;
    v.gradient_tol = grad_tol;
    v.value_tol = value_tol;
    v.scan.resolution = resolution;
    v.scan.gradient_tol = grad_tol;
    v.scan.match_radius = match_radius;
    return v;
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write " + path);
  out << text;
}

void emit(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

/// Samples `model` and returns the CSV text.
std::string sample_csv(const SurfaceModel& model, std::size_t n, std::size_t ny, const ModelConfig& cfg) {
  if (model.dimension() == 1) return curve_csv(sample_curve(model, n));
  return heightfield_csv(sample_heightfield(model, n, ny, {cfg.method, cfg.seed, {}}));
}

json envelope(const char* sub, const ModelConfig& cfg, const PointSetDocument& doc, const BuiltModel& b) {
  json j;
  j["tool"] = "statsurf";
  j["subcommand"] = sub;
  j["config"] = to_json(cfg);
  j["input"] = to_json(doc);
  j["notes"] = b.notes;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surfaces with prescribed stationary points"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);

  std::string in_path, out_path, from_path;
  std::size_t n = 256, ny = 0;
  std::string problems = "ABC";
  ModelFlags gen_flags, ver_flags, scan_mflags;
  ScanFlags ver_scan, scan_scan;

  auto* gen = app.add_subcommand("generate", "build a model and write samples as CSV plus a .meta.json sidecar");
  gen->add_option("--in", in_path, "point-set JSON")->required();
  gen->add_option("--out", out_path, "CSV path")->required();
  gen->add_option("--n", n, "samples (per x axis in 2D)")->capture_default_str();
  gen->add_option("--ny", ny, "samples along y in 2D (default n)");
  gen_flags.attach(gen);

  auto* ver = app.add_subcommand("verify", "report problems A/B/C for a model");
  ver->add_option("--in", in_path, "point-set JSON")->required();
  ver->add_option("--out", out_path, "report JSON (default stdout)");
  ver->add_option("--problems", problems, "subset of ABC")->capture_default_str();
  ver_flags.attach(ver);
  ver_scan.attach(ver);

  auto* scn = app.add_subcommand("scan", "list stationary points of a model");
  scn->add_option("--in", in_path, "point-set JSON")->required();
  scn->add_option("--out", out_path, "report JSON (default stdout)");
  scan_mflags.attach(scn);
  scan_scan.attach(scn);

  double dx = 1.0, dy = 1.0;
  std::uint64_t cert_seed = 0;
  bool zero_data = false;
  auto* cert = app.add_subcommand("certificate", "rank test of the C1 conditions for one quartic cell");
  cert->add_option("--dx", dx, "cell width")->capture_default_str();
  cert->add_option("--dy", dy, "cell height")->capture_default_str();
  auto* cert_seed_opt = cert->add_option("--seed", cert_seed, "seed for the boundary data");
  cert->add_flag("--zero-data", zero_data, "use all-zero boundary data");
  cert->add_option("--out", out_path, "JSON (default stdout)");

  auto* exp = app.add_subcommand("export", "resample a model described by a .meta.json sidecar");
  exp->add_option("--from", from_path, "sidecar written by generate")->required();
  exp->add_option("--out", out_path, "CSV path")->required();
  auto* exp_n = exp->add_option("--n", n, "samples (per x axis in 2D)");
  auto* exp_ny = exp->add_option("--ny", ny, "samples along y in 2D");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      const ModelConfig cfg = gen_flags.resolve();
      const auto doc = point_set_from_json(read_json_file(in_path));
      const auto built = build_model(doc, cfg);
      if (ny == 0) ny = n;
      if (n < 2 || ny < 2) throw SpecError("need at least 2 samples per axis");
      write_file(out_path, sample_csv(*built.model, n, ny, cfg));
      json meta = envelope("generate", cfg, doc, built);
      meta["samples"] = built.model->dimension() == 1 ? json{{"n", n}} : json{{"n", n}, {"ny", ny}};
      meta["region"] = to_json(built.model->region());
      meta["csv"] = out_path;
      write_file(out_path + ".meta.json", meta.dump(2) + "\n");
      for (const auto& note : built.notes) std::cerr << "note: " << note << "\n";
      return 0;
    }
    if (ver->parsed() || scn->parsed()) {
      const bool verify = ver->parsed();
      const ModelConfig cfg = verify ? ver_flags.resolve() : scan_mflags.resolve();
      const ScanFlags& sf = verify ? ver_scan : scan_scan;
      const auto doc = point_set_from_json(read_json_file(in_path));
      const auto built = build_model(doc, cfg);
      for (const auto& note : built.notes) std::cerr << "note: " << note << "\n";
      json j = envelope(verify ? "verify" : "scan", cfg, doc, built);
      j["scan"] = sf.to_json();
      const VerifyOptions vo = sf.options();
      if (!verify) {
        ScanOptions so = vo.scan;
        so.region = problem_c_region(*built.model, built.spec, vo.scan);
        j["report"] = to_json(scan_stationary(*built.model, built.spec.points, so));
        emit(out_path, j);
        return 0;
      }
      for (char p : problems)
        if (p != 'A' && p != 'B' && p != 'C') throw SpecError("problems must be a subset of ABC");
      const auto rep = verify_problem(*built.model, built.spec, vo);
      j["problems"] = problems;
      j["report"] = to_json(rep);
      bool ok = true;
      if (problems.find('A') != std::string::npos) ok = ok && rep.a;
      if (problems.find('B') != std::string::npos) ok = ok && rep.b.value_or(false);
      if (problems.find('C') != std::string::npos) ok = ok && rep.c;
      j["pass"] = ok;
      emit(out_path, j);
      std::cerr << "A " << (rep.a ? "pass" : "fail") << "  B " << (rep.b ? (*rep.b ? "pass" : "fail") : "n.a.")
                << "  C " << (rep.c ? "pass" : "fail") << "  (scan region " << (rep.evidence.scan_region.dimension() == 1 ? "[" : "box [")
                << rep.evidence.scan_region.xmin() << ", " << rep.evidence.scan_region.xmax() << "])\n";
      return ok ? 0 : 1;
    }
    if (cert->parsed()) {
      std::uint64_t seed = cert_seed;
      if (!cert_seed_opt->count())
        if (const char* env = std::getenv("STATSURF_SEED")) seed = std::stoull(env);
      C1BoundaryData data;
      if (!zero_data) {
        std::mt19937_64 rng(seed);
        data = C1BoundaryData::random(rng);
      }
      json j = to_json(c1_infeasibility_certificate(dx, dy, data));
      j["seed"] = seed;
      j["boundary_data"] = zero_data ? "zero" : "random";
      emit(out_path, j);
      return 0;
    }
    if (exp->parsed()) {
      const json meta = read_json_file(from_path);
      ModelConfig cfg;
      apply_json(cfg, meta.at("config"));
      const auto doc = point_set_from_json(meta.at("input"));
      const auto built = build_model(doc, cfg);
      const auto& s = meta.at("samples");
      const std::size_t nx = exp_n->count() ? n : s.at("n").get<std::size_t>();
      std::size_t nyy = exp_ny->count() ? ny : s.value("ny", nx);
      write_file(out_path, sample_csv(*built.model, nx, nyy, cfg));
      return 0;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
