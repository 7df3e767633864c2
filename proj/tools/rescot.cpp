/* rescot: resilient controller synthesis for sampled nonlinear systems on
 * uniform grid abstractions. Subcommands: abstract, classify, simulate,
 * verify, scenario. */

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rescot/commands.hpp"
#include "rescot/errors.hpp"
#include "rescot/scenario.hpp"

namespace {

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::pair<std::uint64_t, std::vector<double>> parse_spike(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw rescot::ConfigError("--spike expects <step>:<w0,w1,...>, got '" + text + "'");
  return {std::stoull(text.substr(0, colon)), parse_vector(text.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resilient abstraction-based controller synthesis"};
  app.require_subcommand(1);

  rescot::AbstractOptions abstract_options;
  auto* cmd_abstract = app.add_subcommand("abstract", "build a risk-aware abstraction");
  cmd_abstract->add_option("--config", abstract_options.config_path, "scenario config (json)");
  cmd_abstract->add_option("--scenario", abstract_options.scenario, "built-in scenario name");
  double abstract_d = 0.0;
  auto* abstract_d_opt = cmd_abstract->add_option("--d", abstract_d, "spike magnitude override");
  cmd_abstract->add_option("--jobs", abstract_options.jobs, "worker threads");
  cmd_abstract->add_option("--out", abstract_options.out, "output abstraction file")->required();

  rescot::ClassifyOptions classify_options;
  std::string classify_mode = "reference";
  auto* cmd_classify = app.add_subcommand("classify", "compute resilience values and controller");
  cmd_classify->add_option("--abstraction", classify_options.abstraction_path, "abstraction file")
      ->required();
  cmd_classify->add_option("--mode", classify_mode, "reference | paper-literal");
  cmd_classify->add_option("--out", classify_options.out_prefix, "output file prefix")->required();
  cmd_classify->add_option("--compare-modes", classify_options.compare_modes_path,
                           "also write a per-state mode divergence report");

  rescot::SimulateOptions simulate_options;
  std::string simulate_x0;
  std::vector<std::string> simulate_spikes;
  std::uint64_t simulate_seed = 0, simulate_horizon = 0;
  double simulate_d = 0.0;
  auto* cmd_simulate = app.add_subcommand("simulate", "closed-loop rollout to a trace csv");
  cmd_simulate->add_option("--controller", simulate_options.controller_path, "controller file")
      ->required();
  cmd_simulate->add_option("--config", simulate_options.config_path, "scenario config (json)");
  cmd_simulate->add_option("--scenario", simulate_options.scenario, "built-in scenario name");
  auto* simulate_d_opt = cmd_simulate->add_option("--d", simulate_d, "spike magnitude override");
  cmd_simulate->add_option("--abstraction", simulate_options.abstraction_path,
                           "abstraction file (otherwise rebuilt from the config)");
  cmd_simulate->add_option("--x0", simulate_x0, "start state, comma separated");
  cmd_simulate->add_option("--spike", simulate_spikes,
                           "inject a spike, format <step>:<w0,w1,...>; repeatable");
  cmd_simulate->add_option("--nominal", simulate_options.nominal,
                           "non-spike disturbances: zero | random | const:<w0,...>");
  auto* simulate_seed_opt = cmd_simulate->add_option("--seed", simulate_seed, "schedule seed");
  auto* simulate_horizon_opt =
      cmd_simulate->add_option("--horizon", simulate_horizon, "number of steps");
  cmd_simulate->add_option("--jobs", simulate_options.jobs, "worker threads");
  cmd_simulate->add_option("--out", simulate_options.out, "output trace csv")->required();

  rescot::VerifyOptions verify_options;
  std::vector<std::uint64_t> verify_probes;
  auto* cmd_verify = app.add_subcommand("verify", "check resilience of a controller at probe cells");
  cmd_verify->add_option("--abstraction", verify_options.abstraction_path, "abstraction file")
      ->required();
  cmd_verify->add_option("--controller", verify_options.controller_path, "controller file")
      ->required();
  cmd_verify->add_option("--probe", verify_probes, "probe cell id; repeatable")->required();
  cmd_verify->add_option("--k", verify_options.k, "resilience value to check (int, omega, omega+1)");

  rescot::ScenarioOptions scenario_options;
  auto* cmd_scenario = app.add_subcommand("scenario", "export a built-in scenario or fixture");
  std::string scenario_list;
  cmd_scenario->add_option("name", scenario_options.name,
                           "scenario name (or fixture g1 / g2)");
  double scenario_d = 0.0;
  auto* scenario_d_opt = cmd_scenario->add_option("--d", scenario_d, "spike magnitude override");
  cmd_scenario->add_option("--out", scenario_options.out, "output path");
  auto* scenario_list_flag = cmd_scenario->add_flag("--list", "list available scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_abstract->parsed()) {
      if (abstract_d_opt->count()) abstract_options.d = abstract_d;
      return rescot::run_abstract(abstract_options, std::cout);
    }
    if (cmd_classify->parsed()) {
      classify_options.mode = rescot::parse_mode(classify_mode);
      return rescot::run_classify(classify_options, std::cout);
    }
    if (cmd_simulate->parsed()) {
      if (simulate_d_opt->count()) simulate_options.d = simulate_d;
      if (!simulate_x0.empty()) simulate_options.x0 = parse_vector(simulate_x0);
      for (const auto& s : simulate_spikes) simulate_options.spikes.push_back(parse_spike(s));
      if (simulate_seed_opt->count()) simulate_options.seed = simulate_seed;
      if (simulate_horizon_opt->count()) simulate_options.horizon = simulate_horizon;
      return rescot::run_simulate(simulate_options, std::cout);
    }
    if (cmd_verify->parsed()) {
      for (auto p : verify_probes) verify_options.probes.push_back(static_cast<rescot::StateId>(p));
      return rescot::run_verify(verify_options, std::cout);
    }
    if (cmd_scenario->parsed()) {
      if (*scenario_list_flag) {
        for (const auto& name : rescot::scenario_names()) std::cout << name << '\n';
        std::cout << "g1\ng2\n";
        return rescot::kExitOk;
      }
      if (scenario_d_opt->count()) scenario_options.d = scenario_d;
      return rescot::run_scenario(scenario_options, std::cout);
    }
  } catch (const rescot::ConfigError& e) {
    std::cout << "error: " << e.what() << '\n';
    return rescot::kExitConfig;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << '\n';
    return rescot::kExitInternal;
  }
  return rescot::kExitOk;
}
