#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rescot/box.hpp"

namespace rescot {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

/* Tuning parameters of the uniform grid: bounds, cell widths, per-dimension
 * periodicity (angles wrapping at their span), and the explicit finite list
 * of input values. */
struct GridParams {
  std::vector<double> state_lo;
  std::vector<double> state_hi;
  std::vector<double> eta;
  std::vector<std::uint8_t> periodic;
  std::vector<std::vector<double>> input_values;

  std::size_t dim() const { return state_lo.size(); }
  void validate() const;  // throws ConfigError
};

/* Uniform-grid quantizer. Grid cells are half-open hyper-rectangles
 * [lo + i*eta, lo + (i+1)*eta); ids are row-major over the per-dimension
 * indices. One extra absorbing id (the last one) represents all points
 * outside the domain on non-periodic dimensions. */
class Quantizer {
 public:
  explicit Quantizer(GridParams grid);

  const GridParams& grid() const { return grid_; }
  std::size_t dim() const { return grid_.dim(); }

  StateId num_grid_cells() const { return num_cells_; }
  StateId num_states() const { return num_cells_ + 1; }  // including out-of-domain
  StateId out_of_domain() const { return num_cells_; }
  bool is_out_of_domain(StateId q) const { return q == num_cells_; }

  const std::vector<std::int64_t>& cells_per_dim() const { return cells_; }

  /* maps a point to its cell id, wrapping periodic dimensions; points
   * outside the domain on a non-periodic dimension map to out_of_domain() */
  StateId quantize(std::span<const double> x) const;

  std::vector<double> cell_center(StateId q) const;

  StateId from_indices(std::span<const std::int64_t> idx) const;
  std::vector<std::int64_t> to_indices(StateId q) const;

  double period(std::size_t d) const { return grid_.state_hi[d] - grid_.state_lo[d]; }

 private:
  GridParams grid_;
  std::vector<std::int64_t> cells_;
  StateId num_cells_ = 0;
};

}  // namespace rescot
