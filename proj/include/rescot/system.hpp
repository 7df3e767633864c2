#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rescot/box.hpp"

namespace rescot {

/* right-hand side of the controlled ode: dxdt = f(x, u, w) */
using VectorField = std::function<void(std::span<const double> x, std::span<const double> u,
                                       std::span<const double> w, std::span<double> dxdt)>;

/* time derivative of the attainable-set radius: drdt = g(r, u, w_radius);
 * must be componentwise monotone in r and w_radius */
using GrowthBound = std::function<void(std::span<const double> r, std::span<const double> u,
                                       std::span<const double> w_radius, std::span<double> drdt)>;

/* Continuous control system sampled with period tau. Disturbances enter the
 * vector field additively; w_normal is the everyday disturbance set and
 * w_high the strictly larger set of occasional spikes. */
struct SampledSystem {
  std::size_t state_dim = 0;
  std::size_t input_dim = 0;
  VectorField vector_field;
  GrowthBound growth_bound;
  Box w_normal;
  Box w_high;
  double tau = 0.0;
};

inline constexpr int kRk4Substeps = 5;

/* Fixed-step classical 4th-order Runge-Kutta flow of the vector field over
 * [0, tau] with kRk4Substeps steps, under a constant disturbance value w.
 * Deterministic for identical inputs; throws IntegrationDivergedError if a
 * non-finite component appears. */
std::vector<double> integrate_nominal(const SampledSystem& sys, std::span<const double> x,
                                      std::span<const double> u, std::span<const double> w,
                                      double tau);

/* Same integrator applied to the radius dynamics of the growth bound. */
std::vector<double> integrate_radius(const SampledSystem& sys, std::span<const double> r0,
                                     std::span<const double> u, std::span<const double> w_radius,
                                     double tau);

/* A colored region: first matching region wins, default color otherwise.
 * Region boxes use half-open membership so grid-aligned regions tile cleanly. */
struct ColorRegion {
  std::vector<Box> boxes;
  int color = 0;
};

struct ColorMap {
  std::vector<ColorRegion> regions;
  int default_color = 0;
  std::vector<Box> obstacle_boxes;

  int color_of(std::span<const double> x) const {
    for (const auto& region : regions)
      for (const auto& box : region.boxes)
        if (box.contains_half_open(x)) return region.color;
    return default_color;
  }

  bool is_obstacle(std::span<const double> x) const {
    for (const auto& box : obstacle_boxes)
      if (box.contains_half_open(x)) return true;
    return false;
  }

  int max_color() const {
    int m = default_color;
    for (const auto& region : regions) m = std::max(m, region.color);
    return m;
  }
};

/* Checks the problem data: box dimensions and ordering, strict inclusion of
 * w_normal in w_high, color sanity, and growth-bound monotonicity probed with
 * 1000 seeded random samples. Returns one message per violated invariant;
 * empty result means the problem is well formed. */
std::vector<std::string> validate_problem(const SampledSystem& sys, const ColorMap& cmap);

}  // namespace rescot
