#pragma once

#include <span>
#include <vector>

#include "rescot/errors.hpp"

namespace rescot {

/* Axis-aligned box in R^n. Used both for disturbance sets (closed membership)
 * and for spatial regions (half-open membership, so grid-aligned regions tile
 * without overlap). */
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {}

  std::size_t dim() const { return lo.size(); }

  /* closed membership: lo[i] <= x[i] <= hi[i] */
  bool contains(std::span<const double> x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }

  /* half-open membership: lo[i] <= x[i] < hi[i] */
  bool contains_half_open(std::span<const double> x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] >= hi[i]) return false;
    return true;
  }

  std::vector<double> center() const {
    std::vector<double> c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }

  std::vector<double> radius() const {
    std::vector<double> r(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) r[i] = 0.5 * (hi[i] - lo[i]);
    return r;
  }

  /* componentwise this <= other, i.e. this is contained in other */
  bool contained_in(const Box& other) const {
    if (other.dim() != dim()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] < other.lo[i] || hi[i] > other.hi[i]) return false;
    return true;
  }

  /* containment with strict inclusion in at least one component */
  bool strictly_contained_in(const Box& other) const {
    if (!contained_in(other)) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > other.lo[i] || hi[i] < other.hi[i]) return true;
    return false;
  }

  void validate(std::size_t expected_dim, const std::string& what) const {
    if (lo.size() != hi.size())
      throw ConfigError(what + ": lo/hi dimension mismatch");
    if (expected_dim != 0 && lo.size() != expected_dim)
      throw ConfigError(what + ": expected dimension " + std::to_string(expected_dim) +
                        ", got " + std::to_string(lo.size()));
    if (lo.empty()) throw ConfigError(what + ": dimension must be positive");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!(lo[i] <= hi[i]))
        throw ConfigError(what + ": lo > hi in component " + std::to_string(i));
  }
};

}  // namespace rescot
