#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "statsurf/geometry.hpp"
#include "statsurf/quartic2d.hpp"
#include "statsurf/sampling.hpp"
#include "statsurf/verification.hpp"

namespace statsurf {

using json = nlohmann::ordered_json;

/// Point-set document:
///   {"dimension": 1|2, "mode": "A"|"B"|"C",
///    "points": [[x], ...] or [[x, y], ...],
///    "values": [...],                     (optional)
///    "region": {"bounds": [a, b] or [a, b, c, d]}}   (optional)
struct PointSetDocument {
  StationarySpec spec;
  std::optional<Region> region;
};

inline ProblemMode parse_mode(const std::string& s) {
  if (s == "A") return ProblemMode::A;
  if (s == "B") return ProblemMode::B;
  if (s == "C") return ProblemMode::C;
  throw SpecError("point set: mode must be A, B or C");
}

inline PointSetDocument point_set_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("point set: expected a JSON object");
  PointSetDocument doc;
  auto& s = doc.spec;
  try {
    s.dimension = j.at("dimension").get<int>();
    s.mode = parse_mode(j.value("mode", std::string("A")));
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != static_cast<std::size_t>(s.dimension))
        throw SpecError("point set: every point needs `dimension` coordinates");
      s.points.push_back({p[0].get<double>(), s.dimension == 2 ? p[1].get<double>() : 0.0});
    }
    if (j.contains("values") && !j["values"].is_null()) s.values = j["values"].get<std::vector<double>>();
    if (j.contains("region") && !j["region"].is_null()) {
      const auto b = j["region"].at("bounds").get<std::vector<double>>();
      if (b.size() == 2 && s.dimension == 1)
        doc.region = Region::interval(b[0], b[1]);
      else if (b.size() == 4 && s.dimension == 2)
        doc.region = Region::box(b[0], b[1], b[2], b[3]);
      else
        throw SpecError("point set: region bounds do not match the dimension");
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("point set: ") + e.what());
  }
  s.validate();
  if (doc.region) s.validate_in(*doc.region);
  return doc;
}

inline json to_json(const Region& r) {
  if (r.dimension() == 1) return json{{"bounds", {r.xmin(), r.xmax()}}};
  return json{{"bounds", {r.xmin(), r.xmax(), r.ymin(), r.ymax()}}};
}

inline json to_json(const PointSetDocument& doc) {
  const auto& s = doc.spec;
  json j;
  j["dimension"] = s.dimension;
  j["mode"] = to_string(s.mode);
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(s.dimension == 1 ? json{p.x} : json{p.x, p.y});
  j["points"] = pts;
  if (s.values) j["values"] = *s.values;
  if (doc.region) j["region"] = to_json(*doc.region);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string heightfield_csv(const Heightfield& hf) {
  std::string out = "x,y,z\n";
  for (std::size_t i = 0; i < hf.nx; ++i)
    for (std::size_t j = 0; j < hf.ny; ++j)
      out += format_real(hf.x_at(i)) + ',' + format_real(hf.y_at(j)) + ',' + format_real(hf.at(i, j)) + '\n';
  return out;
}

inline std::string curve_csv(const std::vector<CurveSample>& c) {
  std::string out = "x,z\n";
  for (const auto& s : c) out += format_real(s.x) + ',' + format_real(s.value) + '\n';
  return out;
}

inline json to_json(Point p, int dim) { return dim == 1 ? json{p.x} : json{p.x, p.y}; }

inline json to_json(const StationaryScanReport& r) {
  const int dim = r.scan_region.dimension();
  json j;
  j["scan_region"] = to_json(r.scan_region);
  j["match_radius"] = r.match_radius;
  json found = json::array();
  for (const auto& f : r.found)
    found.push_back({{"location", to_json(f.location, dim)},
                     {"classification", to_string(f.kind)},
                     {"gradient_norm", f.gradient_norm}});
  j["found"] = found;
  json matched = json::array();
  for (auto [f, q] : r.matched) matched.push_back({{"found", f}, {"prescribed", q}});
  j["matched"] = matched;
  j["spurious"] = r.spurious;
  j["missed"] = r.missed;
  json flats = json::array();
  for (const auto& f : r.flat_regions) flats.push_back({{"bounds", to_json(f.bounds)["bounds"]}, {"cells", f.cells}});
  j["flat_regions"] = flats;
  json nc = json::array();
  for (const auto& p : r.nonconverged) nc.push_back(to_json(p, dim));
  j["nonconverged_seeds"] = nc;
  return j;
}

inline json to_json(const ProblemReport& r) {
  json j;
  j["A"] = r.a ? "pass" : "fail";
  j["B"] = r.b ? (*r.b ? "pass" : "fail") : "n.a.";
  j["C"] = r.c ? "pass" : "fail";
  j["max_gradient_norm"] = r.max_gradient;
  j["max_value_error"] = r.max_value_error;
  j["gradient_failures"] = r.gradient_failures;
  j["value_failures"] = r.value_failures;
  j["evidence"] = to_json(r.evidence);
  return j;
}

inline json to_json(const C1Certificate& c) {
  return json{{"dxdy", {c.dx, c.dy}},
              {"rank_D", c.rank_line_system},
              {"rank_dependent_minor", c.rank_dependent_minor},
              {"rank_sys7a", c.rank_c1_system},
              {"rank_augmented", c.rank_augmented},
              {"verdict", to_string(c.verdict)}};
}

}  // namespace statsurf
