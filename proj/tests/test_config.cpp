#include <catch2/catch_amalgamated.hpp>

#include "rescot/commands.hpp"
#include "rescot/config.hpp"
#include "rescot/errors.hpp"
#include "rescot/scenario.hpp"

using namespace rescot;

namespace {

const char* kMinimalConfig = R"({
  "system": {
    "dynamics": "integrator",
    "tau": 1.0,
    "w_normal": {"lo": [-0.05], "hi": [0.05]},
    "d": 1.2
  },
  "grid": {
    "state_lo": [0.0],
    "state_hi": [8.0],
    "eta": [1.0],
    "periodic": [false],
    "inputs": [[-2.0], [0.0], [2.0]]
  },
  "spec": {
    "regions": [{"boxes": [{"lo": [3.0], "hi": [6.0]}], "color": 2}],
    "default_color": 1,
    "obstacles": []
  },
  "run": {"mode": "reference", "seed": 3, "horizon": 25, "x0": [1.5], "probes": []}
})";

}  // namespace

TEST_CASE("a complete config parses and instantiates") {
  const auto config = parse_config_text(kMinimalConfig);
  CHECK(config.dynamics == "integrator");
  CHECK(config.tau == 1.0);
  CHECK(config.w_high.lo == std::vector<double>{-1.2});
  CHECK(config.run.horizon == 25);
  const auto sys = make_system(config);
  CHECK(sys.state_dim == 1);
  CHECK(validate_problem(sys, config.cmap).empty());
}

TEST_CASE("syntax errors carry line and column") {
  const std::string broken = "{\n  \"system\": {\n  oops\n}";
  try {
    parse_config_text(broken);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected with their path") {
  std::string text = kMinimalConfig;
  text.replace(text.find("\"tau\""), 5, "\"tau_typo\"");
  try {
    parse_config_text(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string message = e.what();
    CHECK(message.find("system") != std::string::npos);
    CHECK(message.find("tau_typo") != std::string::npos);
  }
}

TEST_CASE("w_high and d are mutually exclusive and one is required") {
  std::string both = kMinimalConfig;
  both.replace(both.find("\"d\": 1.2"), 8,
               "\"d\": 1.2, \"w_high\": {\"lo\": [-1.0], \"hi\": [1.0]}");
  CHECK_THROWS_AS(parse_config_text(both), ConfigError);

  std::string neither = kMinimalConfig;
  neither.replace(neither.find(",\n    \"d\": 1.2"), 14, "");
  CHECK_THROWS_AS(parse_config_text(neither), ConfigError);
}

TEST_CASE("spike magnitude only widens non-degenerate components") {
  auto config = parse_config_text(kMinimalConfig);
  config.w_normal = Box({-0.05, 0.0}, {0.05, 0.0});
  apply_spike_magnitude(config, 2.0);
  CHECK(config.w_high.lo == std::vector<double>{-2.0, 0.0});
  CHECK(config.w_high.hi == std::vector<double>{2.0, 0.0});
}

TEST_CASE("built-in scenarios export and re-parse identically") {
  for (const auto& name : scenario_names()) {
    const auto config = make_scenario_config(name);
    const auto text = config_to_json(config);
    const auto reparsed = parse_config_text(text);
    CHECK(reparsed.dynamics == config.dynamics);
    CHECK(reparsed.grid.eta == config.grid.eta);
    CHECK(reparsed.grid.input_values == config.grid.input_values);
    CHECK(reparsed.cmap.regions.size() == config.cmap.regions.size());
    CHECK(reparsed.run.x0 == config.run.x0);
    CHECK(config_to_json(reparsed) == text);
  }
}

TEST_CASE("built-in scenarios pass problem validation") {
  for (const auto& name : scenario_names()) {
    const auto config = make_scenario_config(name);
    const auto sys = make_system(config);
    CHECK(validate_problem(sys, config.cmap).empty());
    CHECK_NOTHROW(Quantizer(config.grid));
  }
}

TEST_CASE("unknown dynamics name is a config error") {
  auto config = parse_config_text(kMinimalConfig);
  config.dynamics = "hovercraft";
  CHECK_THROWS_AS(make_system(config), ConfigError);
}

TEST_CASE("mode divergence report pins the g1 disagreement") {
  const auto report = mode_divergence_report(make_g1());
  CHECK(report ==
        "state_id,reference,paper_literal,differs\n"
        "0,1,0,1\n"
        "1,1,0,1\n"
        "2,0,0,0\n");
}
