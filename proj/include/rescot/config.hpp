#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rescot/resilience.hpp"
#include "rescot/system.hpp"

namespace rescot {

struct ProbePoint {
  std::string name;
  std::vector<double> x;
};

struct RunBlock {
  SynthesisMode mode = SynthesisMode::kReference;
  std::uint64_t seed = 1;
  std::uint64_t horizon = 150;
  std::vector<double> x0;
  std::vector<ProbePoint> probes;
};

/* Parsed scenario document: system block (dynamics registry name, sampling
 * period, disturbance boxes or spike magnitude d), grid block, coloring and
 * obstacles, and run defaults. */
struct ScenarioConfig {
  std::string dynamics;
  double tau = 0.3;
  Box w_normal;
  Box w_high;                 // derived from `d` when only d is given
  std::optional<double> d;    // spike magnitude shorthand
  GridParams grid;
  ColorMap cmap;
  RunBlock run;

  std::string name;  // optional label
};

/* Strict JSON parsing: unknown keys, missing keys and shape errors fail with
 * a message carrying the json path and, for syntax errors, line and column. */
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

std::string config_to_json(const ScenarioConfig& config);

/* w_high from a spike magnitude: every dimension with a non-degenerate
 * w_normal component becomes [-d, d], degenerate dimensions stay fixed */
void apply_spike_magnitude(ScenarioConfig& config, double d);

/* instantiate the registered dynamics for this configuration */
SampledSystem make_system(const ScenarioConfig& config);

}  // namespace rescot
