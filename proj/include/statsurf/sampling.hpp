#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "statsurf/geometry.hpp"

namespace statsurf {

/// Provenance carried alongside sampled data.
struct SampleMetadata {
  std::string method;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
};

/// Uniform nx-by-ny sampling of a 2D model. Row i holds x_i, column j holds y_j.
struct Heightfield {
  Region region = Region::interval(0.0, 1.0);
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> samples;
  SampleMetadata metadata;

  double at(std::size_t i, std::size_t j) const { return samples[i * ny + j]; }
  double x_at(std::size_t i) const { return lattice(region.xmin(), region.xmax(), i, nx); }
  double y_at(std::size_t j) const { return lattice(region.ymin(), region.ymax(), j, ny); }

  /// i-th of n uniform points on [lo, hi]; endpoints are exact.
  static double lattice(double lo, double hi, std::size_t i, std::size_t n) {
    return std::lerp(lo, hi, static_cast<double>(i) / static_cast<double>(n - 1));
  }
};

struct CurveSample {
  double x = 0.0;
  double value = 0.0;
};

inline Heightfield sample_heightfield(const SurfaceModel& model, std::size_t nx, std::size_t ny,
                                      SampleMetadata metadata = {}) {
  if (model.dimension() != 2) throw RegionError("sample_heightfield: model is not 2D");
  if (nx < 2 || ny < 2) throw RegionError("sample_heightfield: need at least 2 samples per axis");
  Heightfield hf{model.region(), nx, ny, {}, std::move(metadata)};
  if (hf.metadata.method.empty()) hf.metadata.method = model.method();
  hf.samples.resize(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = hf.x_at(i);
    for (std::size_t j = 0; j < ny; ++j) hf.samples[i * ny + j] = model.value({x, hf.y_at(j)});
  }
  return hf;
}

inline std::vector<CurveSample> sample_curve(const SurfaceModel& model, std::size_t n) {
  if (model.dimension() != 1) throw RegionError("sample_curve: model is not 1D");
  if (n < 2) throw RegionError("sample_curve: need at least 2 samples");
  const Region& r = model.region();
  std::vector<CurveSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = Heightfield::lattice(r.xmin(), r.xmax(), i, n);
    out[i] = {x, model.value({x, 0.0})};
  }
  return out;
}

}  // namespace statsurf
