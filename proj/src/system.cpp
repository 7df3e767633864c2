#include "rescot/system.hpp"

#include <cmath>
#include <random>

#include "rescot/errors.hpp"

namespace rescot {

namespace {

void check_finite(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!std::isfinite(v)) throw IntegrationDivergedError(std::string(what) + ": non-finite state encountered");
}

/* classical RK4 with fixed substeps on dydt = f(y) */
std::vector<double> rk4(const std::function<void(std::span<const double>, std::span<double>)>& f,
                        std::span<const double> y0, double tau, const char* what) {
  const std::size_t n = y0.size();
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double h = tau / kRk4Substeps;
  for (int step = 0; step < kRk4Substeps; ++step) {
    f(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    check_finite(y, what);
  }
  return y;
}

}  // namespace

std::vector<double> integrate_nominal(const SampledSystem& sys, std::span<const double> x,
                                      std::span<const double> u, std::span<const double> w,
                                      double tau) {
  if (tau <= 0.0) throw ConfigError("integrate_nominal: tau must be positive");
  auto rhs = [&](std::span<const double> y, std::span<double> dydt) {
    sys.vector_field(y, u, w, dydt);
  };
  return rk4(rhs, x, tau, "integrate_nominal");
}

std::vector<double> integrate_radius(const SampledSystem& sys, std::span<const double> r0,
                                     std::span<const double> u, std::span<const double> w_radius,
                                     double tau) {
  auto rhs = [&](std::span<const double> r, std::span<double> drdt) {
    sys.growth_bound(r, u, w_radius, drdt);
  };
  return rk4(rhs, r0, tau, "integrate_radius");
}

std::vector<std::string> validate_problem(const SampledSystem& sys, const ColorMap& cmap) {
  std::vector<std::string> issues;
  const std::size_t n = sys.state_dim;

  if (n == 0) issues.push_back("state dimension must be positive");
  if (sys.input_dim == 0) issues.push_back("input dimension must be positive");
  if (!(sys.tau > 0.0)) issues.push_back("sampling period tau must be positive");
  if (!sys.vector_field) issues.push_back("vector field not set");
  if (!sys.growth_bound) issues.push_back("growth bound not set");

  try {
    sys.w_normal.validate(n, "w_normal");
    sys.w_high.validate(n, "w_high");
    if (!sys.w_normal.contained_in(sys.w_high))
      issues.push_back("w_normal is not contained in w_high");
    else if (!sys.w_normal.strictly_contained_in(sys.w_high))
      issues.push_back("inclusion w_normal in w_high must be strict in at least one component");
  } catch (const ConfigError& e) {
    issues.push_back(e.what());
  }

  if (cmap.default_color < 0) issues.push_back("default color must be nonnegative");
  for (const auto& region : cmap.regions) {
    if (region.color < 0) {
      issues.push_back("region colors must be nonnegative");
      break;
    }
  }

  /* growth-bound monotonicity, probed by sampling: r <= r' and wr <= wr'
   * componentwise must imply g(r,u,wr) <= g(r',u,wr') componentwise */
  if (sys.growth_bound && n > 0 && sys.input_dim > 0) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> usample(-2.0, 2.0);
    std::vector<double> r(n), r2(n), wr(n), wr2(n), u(sys.input_dim), g1(n), g2(n);
    bool monotone = true;
    for (int s = 0; s < 1000 && monotone; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        r[i] = unit(rng);
        r2[i] = r[i] + unit(rng);
        wr[i] = unit(rng);
        wr2[i] = wr[i] + unit(rng);
      }
      for (std::size_t i = 0; i < sys.input_dim; ++i) u[i] = usample(rng);
      sys.growth_bound(r, u, wr, g1);
      sys.growth_bound(r2, u, wr2, g2);
      for (std::size_t i = 0; i < n; ++i)
        if (g1[i] > g2[i] + 1e-12) monotone = false;
    }
    if (!monotone)
      issues.push_back("growth bound is not componentwise monotone in r and w_radius");
  }

  return issues;
}

}  // namespace rescot
