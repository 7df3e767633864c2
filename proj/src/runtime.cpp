#include "rescot/runtime.hpp"

#include <algorithm>
#include <random>

#include "rescot/errors.hpp"

namespace rescot {

void SpikeSchedule::validate(const SampledSystem& sys) const {
  std::uint64_t last = 0;
  bool first = true;
  for (const auto& [step, w] : spikes) {
    if (!first && step <= last)
      throw ConfigError("spike schedule: step indices must be strictly increasing");
    first = false;
    last = step;
    if (w.size() != sys.state_dim)
      throw ConfigError("spike schedule: spike disturbance dimension mismatch");
    if (!sys.w_high.contains(w))
      throw ConfigError("spike schedule: spike at step " + std::to_string(step) +
                        " lies outside w_high");
    if (sys.w_normal.contains(w))
      throw ConfigError("spike schedule: spike at step " + std::to_string(step) +
                        " lies inside w_normal (not a spike)");
  }
  if (nominal == Nominal::kConstant) {
    if (constant_w.size() != sys.state_dim)
      throw ConfigError("spike schedule: constant disturbance dimension mismatch");
    if (!sys.w_normal.contains(constant_w))
      throw ConfigError("spike schedule: constant disturbance lies outside w_normal");
  }
}

RefinedController::RefinedController(const Quantizer& quantizer, const BimodalAbstraction& gamma,
                                     const ResilientController& rc)
    : quantizer_(&quantizer), gamma_(&gamma), rc_(&rc) {
  if (rc.num_states != gamma.num_states || quantizer.num_states() != gamma.num_states)
    throw InternalError("refine: quantizer, abstraction and controller disagree on state count");
}

void RefinedController::reset(std::span<const double> x0) {
  const StateId q = quantizer_->quantize(x0);
  if (quantizer_->is_out_of_domain(q))
    throw DomainError("controller queried outside the state domain");
  if (rc_->selector[q] < 0)
    throw DomainError("controller undefined at cell " + std::to_string(q) +
                      " (resilience 0)");
  active_sub_ = rc_->selector[q];
}

std::int32_t RefinedController::action_index(StateId q) const {
  if (active_sub_ < 0) return -1;
  return rc_->action_of(active_sub_, q);
}

std::vector<double> RefinedController::action_values(std::span<const double> x) const {
  const StateId q = quantizer_->quantize(x);
  if (quantizer_->is_out_of_domain(q))
    throw DomainError("controller queried outside the state domain");
  const std::int32_t u = action_index(q);
  if (u < 0) throw DomainError("controller undefined at cell " + std::to_string(q));
  return quantizer_->grid().input_values[static_cast<std::size_t>(u)];
}

bool RefinedController::observe(StateId q, ActionId u, StateId q_next) {
  if (gamma_->normal.contains(q, u, q_next)) return false;
  active_sub_ = rc_->selector[q_next];  // may become -1: resilience exhausted
  return true;
}

RefinedController refine(const Quantizer& quantizer, const BimodalAbstraction& gamma,
                         const ResilientController& rc) {
  return RefinedController(quantizer, gamma, rc);
}

Trace simulate_closed_loop(const SampledSystem& sys, RefinedController controller,
                           std::span<const double> x0, const SpikeSchedule& schedule,
                           std::uint64_t horizon) {
  schedule.validate(sys);
  Trace trace;
  trace.final_verdict = "ok";
  if (horizon == 0) return trace;

  controller.reset(x0);
  const Quantizer& quantizer = controller.quantizer();

  std::mt19937_64 rng(schedule.seed);
  std::size_t next_spike = 0;
  auto disturbance_at = [&](std::uint64_t step, std::vector<double>& w) {
    if (next_spike < schedule.spikes.size() && schedule.spikes[next_spike].first == step) {
      w = schedule.spikes[next_spike].second;
      ++next_spike;
      return;
    }
    switch (schedule.nominal) {
      case SpikeSchedule::Nominal::kZero:
        std::fill(w.begin(), w.end(), 0.0);
        break;
      case SpikeSchedule::Nominal::kConstant:
        w = schedule.constant_w;
        break;
      case SpikeSchedule::Nominal::kRandomInNormal:
        for (std::size_t d = 0; d < w.size(); ++d) {
          if (sys.w_normal.lo[d] == sys.w_normal.hi[d]) {
            w[d] = sys.w_normal.lo[d];
          } else {
            std::uniform_real_distribution<double> dist(sys.w_normal.lo[d], sys.w_normal.hi[d]);
            w[d] = dist(rng);
          }
        }
        break;
    }
  };

  std::vector<double> x(x0.begin(), x0.end());
  StateId q = quantizer.quantize(x);
  std::vector<double> w(sys.state_dim, 0.0);

  for (std::uint64_t step = 0; step < horizon; ++step) {
    const std::int32_t u_index = controller.action_index(q);
    if (u_index < 0) {
      trace.steps.push_back({x, std::vector<double>(sys.input_dim, 0.0),
                             std::vector<double>(sys.state_dim, 0.0), q, false,
                             "controller_undefined"});
      trace.final_verdict = "controller_undefined";
      return trace;
    }
    const auto& u = quantizer.grid().input_values[static_cast<std::size_t>(u_index)];
    disturbance_at(step, w);
    const bool spike = !sys.w_normal.contains(w);

    trace.steps.push_back({x, u, w, q, spike, "ok"});

    x = integrate_nominal(sys, x, u, w, sys.tau);
    const StateId q_next = quantizer.quantize(x);

    if (quantizer.is_out_of_domain(q_next)) {
      trace.steps.push_back({x, std::vector<double>(sys.input_dim, 0.0),
                             std::vector<double>(sys.state_dim, 0.0), q_next, false,
                             "out_of_domain"});
      trace.final_verdict = "out_of_domain";
      return trace;
    }
    controller.observe(q, static_cast<ActionId>(u_index), q_next);
    q = q_next;
    if (controller.abstraction().obstacle[q]) {
      trace.steps.push_back({x, std::vector<double>(sys.input_dim, 0.0),
                             std::vector<double>(sys.state_dim, 0.0), q, false, "obstacle"});
      trace.final_verdict = "obstacle";
      return trace;
    }
  }
  return trace;
}

std::uint64_t num_spikes(const Trace& trace) {
  std::uint64_t n = 0;
  for (const auto& step : trace.steps)
    if (step.spike) ++n;
  return n;
}

std::uint64_t num_spikes(const BimodalAbstraction& gamma,
                         const std::vector<std::tuple<StateId, ActionId, StateId>>& abstract_trace) {
  std::uint64_t n = 0;
  for (const auto& [q, u, q_next] : abstract_trace)
    if (gamma.dist.contains(q, u, q_next)) ++n;
  return n;
}

namespace {

/* Product of the abstraction under the stitched controller with a spike
 * counter; the environment owns every choice. Nodes are (cell, active sub,
 * spikes used); exploration is on the fly. */
struct ControlledProduct {
  const BimodalAbstraction& gamma;
  const ResilientController& rc;
  std::uint64_t budget;  // allowed spikes; ignored when unbounded
  bool unbounded;

  std::uint64_t counter_values() const { return unbounded ? 1 : budget + 1; }
  std::uint64_t num_nodes() const {
    return static_cast<std::uint64_t>(gamma.num_states) * rc.subs.size() * counter_values();
  }

  std::uint64_t encode(StateId q, std::int32_t mem, std::uint64_t j) const {
    return (static_cast<std::uint64_t>(q) * rc.subs.size() + static_cast<std::uint64_t>(mem)) *
               counter_values() +
           j;
  }
  StateId node_state(std::uint64_t node) const {
    return static_cast<StateId>(node / (rc.subs.size() * counter_values()));
  }
  std::int32_t node_mem(std::uint64_t node) const {
    return static_cast<std::int32_t>((node / counter_values()) % rc.subs.size());
  }
  std::uint64_t node_counter(std::uint64_t node) const { return node % counter_values(); }

  /* successor enumeration by position; returns false when exhausted. A stuck
   * configuration (controller undefined) is reported via `stuck`. */
  bool successor(std::uint64_t node, std::size_t position, std::uint64_t& out, bool& stuck) const {
    const StateId q = node_state(node);
    const std::int32_t mem = node_mem(node);
    const std::uint64_t j = node_counter(node);
    const std::int32_t u = rc.action_of(mem, q);
    if (u < 0) {
      stuck = true;
      return false;
    }
    const auto nor = gamma.normal.successors(q, static_cast<ActionId>(u));
    if (position < nor.size()) {
      out = encode(nor[position], mem, j);
      return true;
    }
    const bool spikes_allowed = unbounded || j < budget;
    if (!spikes_allowed) return false;
    const auto dst = gamma.dist.successors(q, static_cast<ActionId>(u));
    const std::size_t k = position - nor.size();
    if (k >= dst.size()) return false;
    const StateId t = dst[k];
    const std::int32_t mem2 = rc.selector[t];
    if (mem2 < 0) {
      stuck = true;  // spike lands where the controller has nothing left
      return false;
    }
    out = encode(t, mem2, unbounded ? j : j + 1);
    return true;
  }
};

/* accepts iff no reachable stuck node and no reachable cycle whose maximum
 * color is odd */
bool product_accepts(const ControlledProduct& product, StateId q0) {
  const std::int32_t mem0 = product.rc.selector[q0];
  if (mem0 < 0) return false;

  const std::uint64_t N = product.num_nodes();
  std::vector<std::uint8_t> reachable(N, 0);
  std::vector<std::uint64_t> queue;
  const std::uint64_t start = product.encode(q0, mem0, 0);
  reachable[start] = 1;
  queue.push_back(start);
  while (!queue.empty()) {
    const std::uint64_t node = queue.back();
    queue.pop_back();
    bool stuck = false;
    std::uint64_t next = 0;
    for (std::size_t pos = 0; product.successor(node, pos, next, stuck); ++pos) {
      if (!reachable[next]) {
        reachable[next] = 1;
        queue.push_back(next);
      }
    }
    if (stuck) return false;
  }

  /* collect the odd colors present among reachable nodes */
  std::vector<int> odd_colors;
  for (std::uint64_t node = 0; node < N; ++node) {
    if (!reachable[node]) continue;
    const int c = product.gamma.colors[product.node_state(node)];
    if (c % 2 == 1) odd_colors.push_back(c);
  }
  std::sort(odd_colors.begin(), odd_colors.end());
  odd_colors.erase(std::unique(odd_colors.begin(), odd_colors.end()), odd_colors.end());

  /* per odd color c: any cycle within colors <= c that touches color c is a
   * violation; iterative Tarjan over the induced subgraph */
  for (const int c : odd_colors) {
    auto in_subgraph = [&](std::uint64_t node) {
      return reachable[node] && product.gamma.colors[product.node_state(node)] <= c;
    };

    std::vector<std::int64_t> index(N, -1), lowlink(N, 0);
    std::vector<std::uint8_t> on_stack(N, 0);
    std::vector<std::uint64_t> stack;
    std::int64_t next_index = 0;

    struct Frame {
      std::uint64_t node;
      std::size_t pos;
    };
    std::vector<Frame> call;

    for (std::uint64_t root = 0; root < N; ++root) {
      if (!in_subgraph(root) || index[root] >= 0) continue;
      call.push_back({root, 0});
      index[root] = lowlink[root] = next_index++;
      stack.push_back(root);
      on_stack[root] = 1;

      while (!call.empty()) {
        Frame& frame = call.back();
        bool stuck = false;
        std::uint64_t next = 0;
        bool descended = false;
        while (product.successor(frame.node, frame.pos, next, stuck)) {
          ++frame.pos;
          if (!in_subgraph(next)) continue;
          if (index[next] < 0) {
            index[next] = lowlink[next] = next_index++;
            stack.push_back(next);
            on_stack[next] = 1;
            call.push_back({next, 0});
            descended = true;
            break;
          }
          if (on_stack[next])
            lowlink[frame.node] = std::min(lowlink[frame.node], index[next]);
        }
        if (descended) continue;

        /* frame exhausted: pop an SCC if this is its root */
        const std::uint64_t node = frame.node;
        call.pop_back();
        if (!call.empty())
          lowlink[call.back().node] = std::min(lowlink[call.back().node], lowlink[node]);
        if (lowlink[node] == index[node]) {
          std::vector<std::uint64_t> scc;
          for (;;) {
            const std::uint64_t member = stack.back();
            stack.pop_back();
            on_stack[member] = 0;
            scc.push_back(member);
            if (member == node) break;
          }
          bool touches_c = false;
          for (std::uint64_t member : scc)
            if (product.gamma.colors[product.node_state(member)] == c) touches_c = true;
          if (!touches_c) continue;
          bool has_cycle = scc.size() >= 2;
          if (!has_cycle) {
            /* single node: self-loop? */
            bool stuck2 = false;
            std::uint64_t t = 0;
            for (std::size_t pos = 0; product.successor(scc[0], pos, t, stuck2); ++pos)
              if (t == scc[0]) has_cycle = true;
          }
          if (has_cycle) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool verify_k_resilient(const BimodalAbstraction& gamma, const ResilientController& rc, StateId q0,
                        ResilienceValue k) {
  if (q0 >= gamma.num_states) throw ReferenceError("verify_k_resilient: unknown state id");
  if (rc.subs.empty()) throw InternalError("verify_k_resilient: controller has no sub-controllers");

  if (k.is_omega_plus_one()) {
    ControlledProduct product{gamma, rc, 0, true};
    return product_accepts(product, q0);
  }
  if (k.is_omega()) {
    for (std::uint64_t budget = 0; budget <= gamma.num_states + 1; ++budget) {
      ControlledProduct product{gamma, rc, budget, false};
      if (!product_accepts(product, q0)) return false;
    }
    return true;
  }
  const std::uint32_t kv = k.finite_value();
  if (kv == 0) return true;  // no plays have fewer than zero spikes
  ControlledProduct product{gamma, rc, kv - 1, false};
  return product_accepts(product, q0);
}

}  // namespace rescot
