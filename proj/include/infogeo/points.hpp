#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infogeo {

namespace detail {

inline void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) +
                                  ": coordinates must be finite");
    }
  }
}

}  // namespace detail

/// Coordinates theta on the parameter manifold. Immutable, always finite.
class ParamPoint {
 public:
  ParamPoint() = default;
  explicit ParamPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    detail::require_finite(coords_, "ParamPoint");
  }
  ParamPoint(std::initializer_list<double> coords)
      : ParamPoint(std::vector<double>(coords)) {}

  static ParamPoint zeros(int dim) {
    return ParamPoint(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }

  /// Copy with coordinate `axis` moved by `delta` (finite-difference stencils).
  ParamPoint shifted(int axis, double delta) const {
    std::vector<double> c = coords_;
    c[static_cast<std::size_t>(axis)] += delta;
    return ParamPoint(std::move(c));
  }

  /// Copy translated by scale * v.
  ParamPoint translated(const std::vector<double>& v, double scale) const {
    if (v.size() != coords_.size()) {
      throw std::invalid_argument("ParamPoint::translated: dimension mismatch");
    }
    std::vector<double> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += scale * v[i];
    return ParamPoint(std::move(c));
  }

 private:
  std::vector<double> coords_;
};

/// A point x in the sample space. Immutable, always finite.
class SamplePoint {
 public:
  SamplePoint() = default;
  explicit SamplePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    detail::require_finite(coords_, "SamplePoint");
  }
  SamplePoint(std::initializer_list<double> coords)
      : SamplePoint(std::vector<double>(coords)) {}

  static SamplePoint zeros(int dim) {
    return SamplePoint(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

}  // namespace infogeo
