#include "rescot/abstraction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "rescot/errors.hpp"

namespace rescot {

int BimodalAbstraction::max_color() const {
  int m = 0;
  for (int c : colors) m = std::max(m, c);
  return m;
}

void BimodalAbstraction::validate() const {
  if (normal.num_states() != num_states || dist.num_states() != num_states ||
      normal.num_actions() != num_actions || dist.num_actions() != num_actions)
    throw InternalError("abstraction: transition map shape mismatch");
  if (colors.size() != num_states || obstacle.size() != num_states)
    throw InternalError("abstraction: color or obstacle array size mismatch");
  for (int c : colors)
    if (c < 0) throw InternalError("abstraction: negative color");
  for (StateId q = 0; q < num_states; ++q) {
    for (ActionId u = 0; u < num_actions; ++u) {
      const auto nor = normal.successors(q, u);
      const auto dst = dist.successors(q, u);
      if (nor.empty() && !dst.empty())
        throw InternalError("abstraction: disturbance successors on a disabled action");
      /* both slices are sorted, check disjointness by merge walk */
      std::size_t i = 0, j = 0;
      while (i < nor.size() && j < dst.size()) {
        if (nor[i] == dst[j])
          throw InternalError("abstraction: normal and disturbance successor sets overlap");
        if (nor[i] < dst[j]) ++i; else ++j;
      }
    }
  }
}

BimodalAbstraction make_bimodal(StateId num_states, ActionId num_actions,
                                std::vector<std::vector<StateId>> normal_rows,
                                std::vector<std::vector<StateId>> dist_rows,
                                std::vector<int> colors) {
  BimodalAbstraction g;
  g.num_states = num_states;
  g.num_actions = num_actions;
  g.normal = SuccessorMap::from_rows(num_states, num_actions, std::move(normal_rows));
  g.dist = SuccessorMap::from_rows(num_states, num_actions, std::move(dist_rows));
  g.colors = std::move(colors);
  g.obstacle.assign(num_states, 0);
  g.validate();
  return g;
}

int worst_odd_color(int max_used_color) {
  return (max_used_color % 2 == 1) ? max_used_color : max_used_color + 1;
}

namespace {

/* successor cells of one (cell, input) pair: integrate the center, integrate
 * the radius, enumerate every cell meeting the attainable box */
/* index of the last cell met by a half-open interval ending at scaled
 * coordinate b: exact boundary hits exclude the touching cell, matching the
 * half-open cells the attainable set inherits from its half-open source cell */
std::int64_t upper_cell_index(double b_scaled) {
  const double f = std::floor(b_scaled);
  if (f == b_scaled) return static_cast<std::int64_t>(f) - 1;
  return static_cast<std::int64_t>(f);
}

void successors_of_pair(const SampledSystem& sys, const Quantizer& quantizer,
                        std::span<const double> w_zero, std::span<const double> w_radius,
                        StateId q, ActionId u_index, std::vector<StateId>& out,
                        std::uint64_t& wide_warnings) {
  const auto& grid = quantizer.grid();
  const std::size_t n = grid.dim();
  const auto& u = grid.input_values[u_index];

  const auto center0 = quantizer.cell_center(q);
  std::vector<double> r0(n);
  for (std::size_t d = 0; d < n; ++d) r0[d] = 0.5 * grid.eta[d];

  const auto center = integrate_nominal(sys, center0, u, w_zero, sys.tau);
  const auto radius = integrate_radius(sys, r0, u, w_radius, sys.tau);

  out.clear();
  bool out_of_domain = false;
  /* per-dimension sorted index lists of the cells met by [c - r, c + r] */
  std::vector<std::vector<std::int64_t>> per_dim(n);
  for (std::size_t d = 0; d < n; ++d) {
    const double a = center[d] - radius[d];
    const double b = center[d] + radius[d];
    const double lo = grid.state_lo[d];
    const double hi = grid.state_hi[d];
    const std::int64_t cells = quantizer.cells_per_dim()[d];
    auto& list = per_dim[d];

    if (grid.periodic[d]) {
      if (b - a >= hi - lo) {
        ++wide_warnings;
        list.resize(static_cast<std::size_t>(cells));
        for (std::int64_t i = 0; i < cells; ++i) list[static_cast<std::size_t>(i)] = i;
      } else {
        /* raw (unwrapped) index range, then fold modulo the cell count */
        const auto ia = static_cast<std::int64_t>(std::floor((a - lo) / grid.eta[d]));
        const auto ib = std::max(ia, upper_cell_index((b - lo) / grid.eta[d]));
        for (std::int64_t i = ia; i <= ib; ++i) {
          std::int64_t folded = i % cells;
          if (folded < 0) folded += cells;
          list.push_back(folded);
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
    } else {
      if (b - a >= hi - lo) ++wide_warnings;
      if (a < lo) out_of_domain = true;
      if (b > hi) out_of_domain = true;
      if (b <= lo || a >= hi) continue;  // the box misses the domain entirely
      auto ia = static_cast<std::int64_t>(std::floor((std::max(a, lo) - lo) / grid.eta[d]));
      auto ib = upper_cell_index((std::min(b, hi) - lo) / grid.eta[d]);
      if (ia < 0) ia = 0;
      if (ib >= cells) ib = cells - 1;
      if (ib < ia) ib = ia;  // degenerate interval inside one cell
      for (std::int64_t i = ia; i <= ib; ++i) list.push_back(i);
    }
  }

  bool any_grid_cell = true;
  for (std::size_t d = 0; d < n; ++d)
    if (per_dim[d].empty()) any_grid_cell = false;

  if (any_grid_cell) {
    /* odometer over the per-dimension lists; ascending lists and row-major
     * ids make the output ascending already */
    std::vector<std::size_t> pos(n, 0);
    std::vector<std::int64_t> idx(n);
    bool more = true;
    while (more) {
      for (std::size_t d = 0; d < n; ++d) idx[d] = per_dim[d][pos[d]];
      out.push_back(quantizer.from_indices(idx));
      more = false;
      for (std::size_t d = n; d-- > 0;) {
        if (++pos[d] < per_dim[d].size()) {
          more = true;
          break;
        }
        pos[d] = 0;
      }
    }
  }
  if (out_of_domain) out.push_back(quantizer.out_of_domain());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

SuccessorMap find_abstraction(const SampledSystem& sys, const Quantizer& quantizer, const Box& W,
                              unsigned jobs, AbstractionBuildStats* stats) {
  W.validate(sys.state_dim, "find_abstraction disturbance box");
  const StateId cells = quantizer.num_grid_cells();
  const StateId states = quantizer.num_states();
  const ActionId actions = static_cast<ActionId>(quantizer.grid().input_values.size());

  std::vector<double> w_zero(sys.state_dim, 0.0);
  std::vector<double> w_radius(sys.state_dim);
  for (std::size_t d = 0; d < sys.state_dim; ++d)
    w_radius[d] = std::max(std::fabs(W.lo[d]), std::fabs(W.hi[d]));

  std::vector<std::vector<StateId>> rows(static_cast<std::size_t>(states) * actions);

  if (jobs == 0) jobs = 1;
  std::atomic<StateId> next{0};
  std::atomic<std::uint64_t> wide_total{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    std::vector<StateId> buf;
    std::uint64_t wide = 0;
    try {
      while (true) {
        const StateId q = next.fetch_add(1);
        if (q >= cells) break;
        for (ActionId u = 0; u < actions; ++u) {
          successors_of_pair(sys, quantizer, w_zero, w_radius, q, u, buf, wide);
          rows[static_cast<std::size_t>(q) * actions + u] = buf;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
    wide_total.fetch_add(wide);
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  /* absorbing out-of-domain sink: one enabled action, self-loop */
  rows[static_cast<std::size_t>(quantizer.out_of_domain()) * actions + 0] = {quantizer.out_of_domain()};

  if (stats) stats->wide_attainable_warnings += wide_total.load();
  return SuccessorMap::from_rows(states, actions, std::move(rows));
}

LiftedColors lift_colors(const Quantizer& quantizer, const ColorMap& cmap) {
  const std::size_t n = quantizer.dim();
  const auto& grid = quantizer.grid();
  LiftedColors out;
  out.colors.resize(quantizer.num_grid_cells());
  out.obstacle.resize(quantizer.num_grid_cells());

  const double nudge = 1.0 - 1e-9;  // corners sampled just inside the half-open cell
  std::vector<double> sample(n);
  for (StateId q = 0; q < quantizer.num_grid_cells(); ++q) {
    const auto center = quantizer.cell_center(q);
    const int color = cmap.color_of(center);
    const bool obst = cmap.is_obstacle(center);
    const std::size_t corners = static_cast<std::size_t>(1) << n;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      for (std::size_t d = 0; d < n; ++d) {
        const double off = 0.5 * grid.eta[d] * nudge;
        sample[d] = center[d] + (((mask >> d) & 1u) ? off : -off);
      }
      if (cmap.color_of(sample) != color || cmap.is_obstacle(sample) != obst) {
        std::string where;
        for (std::size_t d = 0; d < n; ++d)
          where += (d ? ", " : "") + std::to_string(center[d]);
        throw ConfigError("lift_colors: cell " + std::to_string(q) + " (center " + where +
                          ") straddles a color or obstacle boundary; align regions to the grid");
      }
    }
    out.colors[q] = color;
    out.obstacle[q] = obst ? 1 : 0;
  }
  return out;
}

BimodalAbstraction apply_obstacle_sinks(BimodalAbstraction gamma,
                                        const std::vector<std::uint8_t>& obstacle) {
  if (obstacle.size() != gamma.num_states)
    throw InternalError("apply_obstacle_sinks: obstacle mask size mismatch");

  const std::size_t pairs = static_cast<std::size_t>(gamma.num_states) * gamma.num_actions;
  std::vector<std::vector<StateId>> nor_rows(pairs), dist_rows(pairs);
  for (StateId q = 0; q < gamma.num_states; ++q) {
    for (ActionId u = 0; u < gamma.num_actions; ++u) {
      const std::size_t p = static_cast<std::size_t>(q) * gamma.num_actions + u;
      if (obstacle[q]) {
        if (gamma.action_enabled(q, u)) nor_rows[p] = {q};
      } else {
        const auto nor = gamma.normal.successors(q, u);
        const auto dst = gamma.dist.successors(q, u);
        nor_rows[p].assign(nor.begin(), nor.end());
        dist_rows[p].assign(dst.begin(), dst.end());
      }
    }
  }
  gamma.normal = SuccessorMap::from_rows(gamma.num_states, gamma.num_actions, std::move(nor_rows));
  gamma.dist = SuccessorMap::from_rows(gamma.num_states, gamma.num_actions, std::move(dist_rows));
  gamma.obstacle = obstacle;
  gamma.validate();
  return gamma;
}

BimodalAbstraction find_risk_aware_abstraction(const SampledSystem& sys, const Quantizer& quantizer,
                                               const ColorMap& cmap, unsigned jobs,
                                               AbstractionBuildStats* stats) {
  const auto issues = validate_problem(sys, cmap);
  if (!issues.empty()) {
    std::string msg = "invalid problem:";
    for (const auto& i : issues) msg += "\n  - " + i;
    throw ConfigError(msg);
  }

  const auto lifted = lift_colors(quantizer, cmap);
  const auto nor = find_abstraction(sys, quantizer, sys.w_normal, jobs, stats);
  const auto high = find_abstraction(sys, quantizer, sys.w_high, jobs, stats);

  const StateId states = quantizer.num_states();
  const ActionId actions = nor.num_actions();
  const std::size_t pairs = static_cast<std::size_t>(states) * actions;
  std::vector<std::vector<StateId>> nor_rows(pairs), dist_rows(pairs);
  for (StateId q = 0; q < states; ++q) {
    for (ActionId u = 0; u < actions; ++u) {
      const std::size_t p = static_cast<std::size_t>(q) * actions + u;
      const auto sn = nor.successors(q, u);
      const auto sh = high.successors(q, u);
      nor_rows[p].assign(sn.begin(), sn.end());
      std::set_difference(sh.begin(), sh.end(), sn.begin(), sn.end(),
                          std::back_inserter(dist_rows[p]));
    }
  }

  BimodalAbstraction gamma;
  gamma.num_states = states;
  gamma.num_actions = actions;
  gamma.normal = SuccessorMap::from_rows(states, actions, std::move(nor_rows));
  gamma.dist = SuccessorMap::from_rows(states, actions, std::move(dist_rows));
  gamma.colors = lifted.colors;
  gamma.colors.push_back(worst_odd_color(std::max(
      lifted.colors.empty() ? 0 : *std::max_element(lifted.colors.begin(), lifted.colors.end()),
      cmap.max_color())));
  gamma.obstacle = lifted.obstacle;
  gamma.obstacle.push_back(0);
  gamma.validate();

  std::vector<std::uint8_t> mask = gamma.obstacle;
  return apply_obstacle_sinks(std::move(gamma), mask);
}

FrrSampleReport check_frr_sample(const SampledSystem& sys, const BimodalAbstraction& gamma,
                                 const Quantizer& quantizer, std::uint64_t samples,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& grid = quantizer.grid();
  const std::size_t n = grid.dim();

  auto draw_in = [&rng](const Box& box, std::vector<double>& w) {
    for (std::size_t d = 0; d < w.size(); ++d) {
      std::uniform_real_distribution<double> dist(box.lo[d], box.hi[d]);
      w[d] = box.lo[d] == box.hi[d] ? box.lo[d] : dist(rng);
    }
  };

  FrrSampleReport report;
  std::vector<double> x(n), w(sys.state_dim);
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = samples * 100 + 1000;
  while (report.samples < samples && attempts < max_attempts) {
    ++attempts;
    for (std::size_t d = 0; d < n; ++d) {
      std::uniform_real_distribution<double> dist(grid.state_lo[d], grid.state_hi[d]);
      x[d] = dist(rng);
    }
    const StateId q = quantizer.quantize(x);
    if (quantizer.is_out_of_domain(q) || gamma.obstacle[q]) continue;
    const auto enabled = gamma.enabled_actions(q);
    if (enabled.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, enabled.size() - 1);
    const ActionId u = enabled[pick(rng)];
    const auto& uvals = grid.input_values[u];

    draw_in(sys.w_normal, w);
    auto x1 = integrate_nominal(sys, x, uvals, w, sys.tau);
    if (!gamma.normal.contains(q, u, quantizer.quantize(x1))) ++report.violations_normal;

    draw_in(sys.w_high, w);
    auto x2 = integrate_nominal(sys, x, uvals, w, sys.tau);
    const StateId q2 = quantizer.quantize(x2);
    if (!gamma.normal.contains(q, u, q2) && !gamma.dist.contains(q, u, q2))
      ++report.violations_high;

    ++report.samples;
  }
  return report;
}

}  // namespace rescot
