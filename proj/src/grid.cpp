#include "rescot/grid.hpp"

#include <cmath>
#include <limits>

#include "rescot/errors.hpp"

namespace rescot {

void GridParams::validate() const {
  const std::size_t n = dim();
  if (n == 0) throw ConfigError("grid: state dimension must be positive");
  if (state_hi.size() != n || eta.size() != n || periodic.size() != n)
    throw ConfigError("grid: state_lo/state_hi/eta/periodic dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(eta[i] > 0.0)) throw ConfigError("grid: eta must be positive in every dimension");
    const double span = state_hi[i] - state_lo[i];
    if (!(span > 0.0)) throw ConfigError("grid: state_hi must exceed state_lo in every dimension");
    const double cells = span / eta[i];
    if (std::fabs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells))
      throw ConfigError("grid: (state_hi - state_lo) must be an integer multiple of eta in dimension " +
                        std::to_string(i));
  }
  if (input_values.empty()) throw ConfigError("grid: input_values must be non-empty");
  const std::size_t m = input_values.front().size();
  if (m == 0) throw ConfigError("grid: input dimension must be positive");
  for (const auto& u : input_values) {
    if (u.size() != m) throw ConfigError("grid: inconsistent input dimensions");
    for (double v : u)
      if (!std::isfinite(v)) throw ConfigError("grid: input values must be finite");
  }
}

Quantizer::Quantizer(GridParams grid) : grid_(std::move(grid)) {
  grid_.validate();
  const std::size_t n = grid_.dim();
  cells_.resize(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cells_[i] = static_cast<std::int64_t>(std::llround((grid_.state_hi[i] - grid_.state_lo[i]) / grid_.eta[i]));
    total *= static_cast<std::uint64_t>(cells_[i]);
  }
  if (total >= std::numeric_limits<StateId>::max())
    throw ConfigError("grid: too many cells for 32-bit state ids");
  num_cells_ = static_cast<StateId>(total);
}

StateId Quantizer::quantize(std::span<const double> x) const {
  const std::size_t n = grid_.dim();
  if (x.size() != n) throw DomainError("quantize: point dimension mismatch");
  std::uint64_t id = 0;
  for (std::size_t d = 0; d < n; ++d) {
    double y = x[d] - grid_.state_lo[d];
    if (grid_.periodic[d]) {
      const double p = period(d);
      y = std::fmod(y, p);
      if (y < 0.0) y += p;
    } else if (y < 0.0 || x[d] >= grid_.state_hi[d]) {
      return out_of_domain();
    }
    auto i = static_cast<std::int64_t>(std::floor(y / grid_.eta[d]));
    if (i < 0) i = 0;
    if (i >= cells_[d]) i = cells_[d] - 1;  // guards fmod landing exactly on the period
    id = id * static_cast<std::uint64_t>(cells_[d]) + static_cast<std::uint64_t>(i);
  }
  return static_cast<StateId>(id);
}

std::vector<double> Quantizer::cell_center(StateId q) const {
  if (is_out_of_domain(q)) throw DomainError("cell_center: out-of-domain state has no center");
  const auto idx = to_indices(q);
  std::vector<double> c(grid_.dim());
  for (std::size_t d = 0; d < grid_.dim(); ++d)
    c[d] = grid_.state_lo[d] + (static_cast<double>(idx[d]) + 0.5) * grid_.eta[d];
  return c;
}

StateId Quantizer::from_indices(std::span<const std::int64_t> idx) const {
  std::uint64_t id = 0;
  for (std::size_t d = 0; d < grid_.dim(); ++d)
    id = id * static_cast<std::uint64_t>(cells_[d]) + static_cast<std::uint64_t>(idx[d]);
  return static_cast<StateId>(id);
}

std::vector<std::int64_t> Quantizer::to_indices(StateId q) const {
  std::vector<std::int64_t> idx(grid_.dim());
  std::uint64_t rest = q;
  for (std::size_t d = grid_.dim(); d-- > 0;) {
    idx[d] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(cells_[d]));
    rest /= static_cast<std::uint64_t>(cells_[d]);
  }
  return idx;
}

}  // namespace rescot
