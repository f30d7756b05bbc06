#pragma once

#include <stdexcept>
#include <string>

namespace statsurf {

/// Malformed or inconsistent input data (duplicate points, wrong lengths,
/// violated construction preconditions).
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// A point or operation that falls outside the model's region, or a
/// dimension mismatch between a model and the requested operation.
class RegionError : public std::runtime_error {
 public:
  explicit RegionError(const std::string& what) : std::runtime_error(what) {}
};

/// A construction that exists only in some dimensions or modes.
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace statsurf
