#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rescot/errors.hpp"
#include "rescot/system.hpp"

using namespace rescot;

namespace {

SampledSystem unicycle(double tau = 0.3) {
  SampledSystem sys;
  sys.state_dim = 3;
  sys.input_dim = 2;
  sys.tau = tau;
  sys.w_normal = Box({-0.05, -0.05, 0.0}, {0.05, 0.05, 0.0});
  sys.w_high = Box({-0.5, -0.5, 0.0}, {0.5, 0.5, 0.0});
  sys.vector_field = [](std::span<const double> x, std::span<const double> u,
                        std::span<const double> w, std::span<double> dxdt) {
    dxdt[0] = u[0] * std::cos(x[2]) + w[0];
    dxdt[1] = u[0] * std::sin(x[2]) + w[1];
    dxdt[2] = u[1] + w[2];
  };
  sys.growth_bound = [](std::span<const double> r, std::span<const double> u,
                        std::span<const double> wr, std::span<double> drdt) {
    drdt[0] = std::fabs(u[0]) * r[2] + wr[0];
    drdt[1] = std::fabs(u[0]) * r[2] + wr[1];
    drdt[2] = wr[2];
  };
  return sys;
}

}  // namespace

TEST_CASE("zero vector field is the identity flow") {
  SampledSystem sys;
  sys.state_dim = 2;
  sys.input_dim = 1;
  sys.tau = 0.3;
  sys.vector_field = [](std::span<const double>, std::span<const double>,
                        std::span<const double>, std::span<double> dxdt) {
    dxdt[0] = dxdt[1] = 0.0;
  };
  const std::vector<double> x{1.25, -4.0}, u{0.7}, w{0.0, 0.0};
  const auto y = integrate_nominal(sys, x, u, w, 0.3);
  CHECK(y[0] == 1.25);
  CHECK(y[1] == -4.0);
}

TEST_CASE("straight unicycle motion is exact") {
  const auto sys = unicycle();
  const std::vector<double> x{0, 0, 0}, u{1.0, 0.0}, w{0, 0, 0};
  const auto y = integrate_nominal(sys, x, u, w, 0.3);
  CHECK(y[0] == Catch::Approx(0.3).margin(1e-15));
  CHECK(y[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(y[2] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("turning unicycle matches the closed-form circle") {
  /* u = (1, 1) from the origin: x = sin t, y = 1 - cos t, theta = t */
  const auto sys = unicycle();
  const std::vector<double> x{0, 0, 0}, u{1.0, 1.0}, w{0, 0, 0};
  const auto y = integrate_nominal(sys, x, u, w, 0.3);
  /* five fixed steps put the quadrature error just above 1e-9 on the first
   * component; 2e-9 holds with margin */
  CHECK(std::fabs(y[0] - std::sin(0.3)) < 2e-9);
  CHECK(std::fabs(y[1] - (1.0 - std::cos(0.3))) < 2e-9);
  CHECK(std::fabs(y[2] - 0.3) < 1e-12);
}

TEST_CASE("linear field integrates to 1e-9 over tau <= 0.5") {
  SampledSystem sys;
  sys.state_dim = 1;
  sys.input_dim = 1;
  sys.tau = 0.5;
  sys.vector_field = [](std::span<const double> x, std::span<const double>,
                        std::span<const double>, std::span<double> dxdt) {
    dxdt[0] = 0.2 * x[0];
  };
  const std::vector<double> x{1.0}, u{0.0}, w{0.0};
  const auto y = integrate_nominal(sys, x, u, w, 0.5);
  CHECK(std::fabs(y[0] - std::exp(0.1)) < 1e-9);
}

TEST_CASE("diverging integration is reported") {
  SampledSystem sys;
  sys.state_dim = 1;
  sys.input_dim = 1;
  sys.tau = 0.3;
  sys.vector_field = [](std::span<const double> x, std::span<const double>,
                        std::span<const double>, std::span<double> dxdt) {
    dxdt[0] = x[0] * x[0] * 1e200;
  };
  const std::vector<double> x{1e200}, u{0.0}, w{0.0};
  CHECK_THROWS_AS(integrate_nominal(sys, x, u, w, 0.3), IntegrationDivergedError);
}

TEST_CASE("color map: first matching region wins, default otherwise") {
  ColorMap cmap;
  cmap.default_color = 1;
  cmap.regions.push_back({{Box({0, 0}, {1, 1})}, 2});
  cmap.regions.push_back({{Box({0, 0}, {2, 2})}, 3});
  const std::vector<double> inside{0.5, 0.5}, second{1.5, 1.5}, outside{5, 5};
  CHECK(cmap.color_of(inside) == 2);
  CHECK(cmap.color_of(second) == 3);
  CHECK(cmap.color_of(outside) == 1);
}

TEST_CASE("reach-avoid coloring: target 2, free space 1") {
  ColorMap cmap;
  cmap.default_color = 1;
  cmap.regions.push_back({{Box({4.4, 2.4}, {5.2, 3.2})}, 2});
  const std::vector<double> target{4.8, 2.8}, free_space{1.0, 1.0};
  CHECK(cmap.color_of(target) == 2);
  CHECK(cmap.color_of(free_space) == 1);
}

TEST_CASE("validate_problem accepts the nominal unicycle setup") {
  const auto sys = unicycle();
  ColorMap cmap;
  cmap.default_color = 1;
  CHECK(validate_problem(sys, cmap).empty());
}

TEST_CASE("validate_problem rejects non-strict disturbance inclusion") {
  auto sys = unicycle();
  sys.w_high = sys.w_normal;
  ColorMap cmap;
  const auto issues = validate_problem(sys, cmap);
  REQUIRE_FALSE(issues.empty());
  bool found = false;
  for (const auto& issue : issues) found |= issue.find("strict") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validate_problem rejects a shrinking growth bound") {
  auto sys = unicycle();
  sys.growth_bound = [](std::span<const double> r, std::span<const double>,
                        std::span<const double>, std::span<double> drdt) {
    drdt[0] = -r[0];
    drdt[1] = -r[1];
    drdt[2] = -r[2];
  };
  ColorMap cmap;
  const auto issues = validate_problem(sys, cmap);
  REQUIRE_FALSE(issues.empty());
  bool found = false;
  for (const auto& issue : issues) found |= issue.find("monotone") != std::string::npos;
  CHECK(found);
}

TEST_CASE("sampled normal disturbances stay inside the high set") {
  const auto sys = unicycle();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> w(3);
    for (std::size_t d = 0; d < 3; ++d) {
      std::uniform_real_distribution<double> dist(sys.w_normal.lo[d], sys.w_normal.hi[d]);
      w[d] = sys.w_normal.lo[d] == sys.w_normal.hi[d] ? sys.w_normal.lo[d] : dist(rng);
    }
    CHECK(sys.w_high.contains(w));
  }
}
