#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rescot/errors.hpp"
#include "rescot/grid.hpp"

using namespace rescot;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

GridParams small_grid() {
  GridParams g;
  g.state_lo = {0.0, -1.0, 0.0};
  g.state_hi = {2.0, 1.0, kTwoPi};
  g.eta = {0.5, 0.5, kTwoPi / 4.0};
  g.periodic = {0, 0, 1};
  g.input_values = {{0.0}, {1.0}};
  return g;
}

}  // namespace

TEST_CASE("cell count and out-of-domain id") {
  Quantizer grid(small_grid());
  CHECK(grid.num_grid_cells() == 4 * 4 * 4);
  CHECK(grid.num_states() == 4 * 4 * 4 + 1);
  CHECK(grid.out_of_domain() == 64);
}

TEST_CASE("quantize(cell_center(q)) round-trips for every cell") {
  Quantizer grid(small_grid());
  for (StateId q = 0; q < grid.num_grid_cells(); ++q)
    CHECK(grid.quantize(grid.cell_center(q)) == q);
}

TEST_CASE("points outside non-periodic bounds map to out-of-domain") {
  Quantizer grid(small_grid());
  CHECK(grid.is_out_of_domain(grid.quantize(std::vector<double>{-0.1, 0.0, 1.0})));
  CHECK(grid.is_out_of_domain(grid.quantize(std::vector<double>{2.0, 0.0, 1.0})));
  CHECK(grid.is_out_of_domain(grid.quantize(std::vector<double>{1.0, 1.5, 1.0})));
  CHECK_FALSE(grid.is_out_of_domain(grid.quantize(std::vector<double>{1.0, 0.0, 1.0})));
}

TEST_CASE("periodic dimension wraps: quantize(x) == quantize(x + period)") {
  Quantizer grid(small_grid());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x0(0.0, 2.0), x1(-1.0, 1.0), theta(-20.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const std::vector<double> a{x0(rng), x1(rng), theta(rng)};
    const std::vector<double> b{a[0], a[1], a[2] + kTwoPi};
    CHECK(grid.quantize(a) == grid.quantize(b));
    CHECK_FALSE(grid.is_out_of_domain(grid.quantize(a)));
  }
}

TEST_CASE("grid bounds must be integer multiples of eta") {
  GridParams g = small_grid();
  g.eta[0] = 0.3;
  CHECK_THROWS_AS(Quantizer(g), ConfigError);
}

TEST_CASE("empty input list is rejected") {
  GridParams g = small_grid();
  g.input_values.clear();
  CHECK_THROWS_AS(Quantizer(g), ConfigError);
}

TEST_CASE("index round trip") {
  Quantizer grid(small_grid());
  for (StateId q = 0; q < grid.num_grid_cells(); ++q) {
    const auto idx = grid.to_indices(q);
    CHECK(grid.from_indices(idx) == q);
  }
}
