#pragma once

#include <string>
#include <vector>

#include "rescot/abstraction.hpp"
#include "rescot/config.hpp"

namespace rescot {

/* Built-in unicycle scenarios at desk scale. Geometry is fixed here and
 * documented in the README; pass a spike magnitude to override the default
 * w_high. */
std::vector<std::string> scenario_names();
ScenarioConfig make_scenario_config(const std::string& name);

/* Tiny hand-written abstractions used as shipped test fixtures. g1 has three
 * states on one action where one disturbance edge feeds an odd sink; g2 is a
 * two-state system every finite spike burst can recover from. */
BimodalAbstraction make_g1();
BimodalAbstraction make_g2();
bool is_fixture_name(const std::string& name);

}  // namespace rescot
