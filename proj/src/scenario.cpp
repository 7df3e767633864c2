#include "rescot/scenario.hpp"

#include <cmath>

#include "rescot/errors.hpp"

namespace rescot {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Box xy_box(double x0, double x1, double y0, double y1) {
  /* full angular range; cells sample strictly inside [0, 2*pi) */
  return Box({x0, y0, -0.1}, {x1, y1, 6.4});
}

std::vector<std::vector<double>> unicycle_inputs(double speed, double eta_theta, double tau) {
  const double turn = eta_theta / tau;  // one angular cell per step
  std::vector<std::vector<double>> inputs;
  for (double v : {0.0, speed})
    for (double scale : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0})
      inputs.push_back({v, scale * turn});
  return inputs;
}

/* Two constraints pin the scale. A straight step must leave its cell even
 * with the heading only known up to half an angular cell, or the abstract
 * adversary stalls every plan forever; and the per-step position scatter
 * must stay near one cell, or no region is large enough to loop through
 * again and again. With tau 0.3 and eta 0.2 that takes sixteen angular
 * cells and v around 1.2; eight angular cells admit no winning state at
 * any speed. */
ScenarioConfig unicycle_base(double eta_xy, double default_d) {
  ScenarioConfig config;
  config.dynamics = "unicycle";
  config.tau = 0.3;
  config.w_normal = Box({-0.05, -0.05, 0.0}, {0.05, 0.05, 0.0});
  apply_spike_magnitude(config, default_d);

  const double eta_theta = kTwoPi / 16.0;
  config.grid.state_lo = {0.0, 0.0, 0.0};
  config.grid.state_hi = {6.0, 6.0, kTwoPi};
  config.grid.eta = {eta_xy, eta_xy, eta_theta};
  config.grid.periodic = {0, 0, 1};
  config.grid.input_values = unicycle_inputs(1.2, eta_theta, config.tau);

  config.run.mode = SynthesisMode::kReference;
  config.run.seed = 1;
  config.run.horizon = 150;
  return config;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"reach_avoid_two_passages", "two_targets_buchi_cobuchi", "two_targets_obstacles"};
}

ScenarioConfig make_scenario_config(const std::string& name) {
  if (name == "reach_avoid_two_passages") {
    /* a wall with a narrow and a wide gap between start and target; the
     * target must be (re)visited forever: color 2 on the target, 1 elsewhere */
    ScenarioConfig config = unicycle_base(0.2, 0.5);
    config.name = name;
    config.cmap.default_color = 1;
    config.cmap.regions.push_back({{xy_box(4.0, 5.6, 2.2, 3.8)}, 2});
    config.cmap.obstacle_boxes = {
        xy_box(2.8, 3.2, 0.0, 0.8),  // below the narrow gap [0.8, 2.0]
        xy_box(2.8, 3.2, 2.0, 3.2),  // between the gaps
        xy_box(2.8, 3.2, 5.2, 6.0),  // above the wide gap [3.2, 5.2]
    };
    config.run.x0 = {1.0, 2.9, 0.0};
    config.run.probes = {{"wide_passage", {3.0, 4.2, 0.0}},
                         {"narrow_passage", {3.0, 1.4, 0.0}}};
    return config;
  }

  if (name == "two_targets_buchi_cobuchi") {
    /* open space, two targets: settle inside the left one (color 0) or visit
     * the right one (color 2) again and again; color 1 elsewhere */
    ScenarioConfig config = unicycle_base(0.2, 0.5);
    config.name = name;
    config.cmap.default_color = 1;
    config.cmap.regions.push_back({{xy_box(0.6, 1.8, 2.4, 3.6)}, 0});
    config.cmap.regions.push_back({{xy_box(4.2, 5.4, 2.4, 3.6)}, 2});
    config.run.x0 = {3.0, 1.1, 0.0};
    config.run.probes = {{"left_target", {1.2, 3.0, 0.0}},
                         {"right_target", {4.8, 3.0, 0.0}},
                         {"between", {3.0, 3.0, 0.0}}};
    return config;
  }

  if (name == "two_targets_obstacles") {
    /* the two-target scenario with an obstacle wall (color 3) guarding the
     * right target; four colors in total */
    ScenarioConfig config = unicycle_base(0.2, 0.5);
    config.name = name;
    config.cmap.default_color = 1;
    const Box wall_low = xy_box(3.4, 3.8, 0.0, 2.4);
    const Box wall_high = xy_box(3.4, 3.8, 3.6, 6.0);
    config.cmap.regions.push_back({{wall_low, wall_high}, 3});
    config.cmap.regions.push_back({{xy_box(0.6, 1.8, 2.4, 3.6)}, 0});
    config.cmap.regions.push_back({{xy_box(4.2, 5.4, 2.4, 3.6)}, 2});
    config.cmap.obstacle_boxes = {wall_low, wall_high};
    config.run.x0 = {3.0, 1.1, 0.0};
    config.run.probes = {{"left_target", {1.2, 3.0, 0.0}},
                         {"right_target", {4.8, 3.0, 0.0}},
                         {"risky_passage", {3.6, 3.0, 0.0}}};
    return config;
  }

  throw ConfigError("unknown scenario '" + name + "'");
}

BimodalAbstraction make_g1() {
  return make_bimodal(3, 1,
                      {{1}, {1}, {2}},      // normal: q0 -> q1, q1 -> q1, q2 -> q2
                      {{}, {2}, {}},        // disturbance: q1 -> q2
                      {1, 2, 1});
}

BimodalAbstraction make_g2() {
  return make_bimodal(2, 1,
                      {{0}, {0}},           // normal: a -> a, c -> a
                      {{1}, {1}},           // disturbance: a -> c, c -> c
                      {2, 1});
}

bool is_fixture_name(const std::string& name) { return name == "g1" || name == "g2"; }

}  // namespace rescot
