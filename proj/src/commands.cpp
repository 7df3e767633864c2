#include "rescot/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "rescot/abstraction_io.hpp"
#include "rescot/errors.hpp"
#include "rescot/formats.hpp"
#include "rescot/scenario.hpp"

namespace rescot {

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const DomainError*>(&e)) return kExitDomain;
  if (dynamic_cast<const ReferenceError*>(&e)) return kExitReference;
  return kExitInternal;
}

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

ScenarioConfig resolve_config(const std::string& config_path, const std::string& scenario,
                              const std::optional<double>& d) {
  if (config_path.empty() == scenario.empty())
    throw ConfigError("give exactly one of --config or --scenario");
  ScenarioConfig config =
      config_path.empty() ? make_scenario_config(scenario) : load_config_file(config_path);
  if (d) apply_spike_magnitude(config, *d);
  return config;
}

SpikeSchedule parse_schedule(const SimulateOptions& options, const SampledSystem& sys,
                             std::uint64_t seed) {
  SpikeSchedule schedule;
  schedule.spikes = options.spikes;
  schedule.seed = seed;
  if (options.nominal == "zero") {
    schedule.nominal = SpikeSchedule::Nominal::kZero;
  } else if (options.nominal == "random") {
    schedule.nominal = SpikeSchedule::Nominal::kRandomInNormal;
  } else if (options.nominal.rfind("const:", 0) == 0) {
    schedule.nominal = SpikeSchedule::Nominal::kConstant;
    std::istringstream in(options.nominal.substr(6));
    std::string tok;
    while (std::getline(in, tok, ',')) schedule.constant_w.push_back(std::stod(tok));
  } else {
    throw ConfigError("unknown nominal disturbance policy '" + options.nominal +
                      "' (zero, random, const:<w,...>)");
  }
  schedule.validate(sys);
  return schedule;
}

}  // namespace

BuiltProblem build_problem(const ScenarioConfig& config, unsigned jobs) {
  SampledSystem system = make_system(config);
  Quantizer quantizer(config.grid);
  AbstractionBuildStats stats;
  BimodalAbstraction gamma = find_risk_aware_abstraction(system, quantizer, config.cmap, jobs, &stats);
  if (stats.wide_attainable_warnings > 0)
    std::cerr << "warning: " << stats.wide_attainable_warnings
              << " attainable boxes were wider than the whole domain (abstraction stays sound)\n";
  return BuiltProblem{config, std::move(system), std::move(quantizer), std::move(gamma)};
}

int run_abstract(const AbstractOptions& options, std::ostream& log) {
  return guarded(log, [&]() {
    if (options.out.empty()) throw ConfigError("abstract: --out is required");
    const ScenarioConfig config = resolve_config(options.config_path, options.scenario, options.d);
    BuiltProblem problem = build_problem(config, options.jobs);

    AbstractionBundle bundle{std::move(problem.gamma), problem.config.grid};
    save_abstraction_file(options.out, bundle);

    const auto& g = bundle.gamma;
    log << "states " << g.num_states << " (grid " << problem.quantizer.num_grid_cells()
        << " + out-of-domain)\n";
    log << "actions " << g.num_actions << '\n';
    log << "normal edges " << g.normal.num_edges() << '\n';
    log << "disturbance edges " << g.dist.num_edges() << '\n';
    log << "wrote " << options.out << '\n';
    return kExitOk;
  });
}

std::string mode_divergence_report(const BimodalAbstraction& gamma) {
  const auto ref = classify(gamma, SynthesisMode::kReference);
  const auto lit = classify(gamma, SynthesisMode::kPaperLiteral);
  std::ostringstream os;
  os << "state_id,reference,paper_literal,differs\n";
  for (StateId q = 0; q < gamma.num_states; ++q) {
    const bool differs = ref.map[q] != lit.map[q];
    os << q << ',' << ref.map[q].to_string() << ',' << lit.map[q].to_string() << ','
       << (differs ? 1 : 0) << '\n';
  }
  return os.str();
}

int run_classify(const ClassifyOptions& options, std::ostream& log) {
  return guarded(log, [&]() {
    if (options.out_prefix.empty()) throw ConfigError("classify: --out is required");
    const AbstractionBundle bundle = load_abstraction_file(options.abstraction_path);

    const ClassifyResult result = classify(bundle.gamma, options.mode);
    save_resilience_csv_file(options.out_prefix + ".resilience.csv", result.map);
    save_controller_file(options.out_prefix + ".controller.txt", result.controller);
    save_histogram_csv_file(options.out_prefix + ".histogram.csv", result.map);

    log << "resilience histogram (" << to_string(options.mode) << "):\n";
    for (const auto& [value, count] : resilience_histogram(result.map))
      log << "  " << value.to_string() << ": " << count << '\n';

    if (!options.compare_modes_path.empty()) {
      std::ofstream os(options.compare_modes_path, std::ios::binary);
      if (!os)
        throw ReferenceError("cannot open '" + options.compare_modes_path + "' for writing");
      os << mode_divergence_report(bundle.gamma);
      log << "wrote mode divergence report to " << options.compare_modes_path << '\n';
    }

    log << "wrote " << options.out_prefix << ".resilience.csv, .controller.txt, .histogram.csv\n";
    return kExitOk;
  });
}

int run_simulate(const SimulateOptions& options, std::ostream& log) {
  return guarded(log, [&]() {
    if (options.out.empty()) throw ConfigError("simulate: --out is required");
    const ScenarioConfig config = resolve_config(options.config_path, options.scenario, options.d);
    const SampledSystem system = make_system(config);

    Quantizer quantizer(config.grid);
    BimodalAbstraction gamma;
    if (!options.abstraction_path.empty()) {
      AbstractionBundle bundle = load_abstraction_file(options.abstraction_path);
      if (!bundle.grid)
        throw ReferenceError("simulate: abstraction file carries no grid block");
      quantizer = Quantizer(*bundle.grid);
      gamma = std::move(bundle.gamma);
    } else {
      gamma = build_problem(config, options.jobs).gamma;
    }

    const ResilientController rc = load_controller_file(options.controller_path);
    if (rc.num_states != gamma.num_states)
      throw ReferenceError("simulate: controller and abstraction state counts disagree");

    std::vector<double> x0 = options.x0.empty() ? config.run.x0 : options.x0;
    if (x0.size() != system.state_dim)
      throw ConfigError("simulate: x0 must have " + std::to_string(system.state_dim) +
                        " components");

    const std::uint64_t seed = options.seed.value_or(config.run.seed);
    const std::uint64_t horizon = options.horizon.value_or(config.run.horizon);
    const SpikeSchedule schedule = parse_schedule(options, system, seed);

    RefinedController controller = refine(quantizer, gamma, rc);
    const Trace trace = simulate_closed_loop(system, controller, x0, schedule, horizon);
    save_trace_csv_file(options.out, trace, system.state_dim, system.input_dim);

    log << "steps " << trace.steps.size() << ", spikes " << num_spikes(trace) << ", verdict "
        << trace.final_verdict << '\n';
    log << "wrote " << options.out << '\n';
    return kExitOk;
  });
}

int run_verify(const VerifyOptions& options, std::ostream& log) {
  return guarded(log, [&]() {
    const AbstractionBundle bundle = load_abstraction_file(options.abstraction_path);
    const ResilientController rc = load_controller_file(options.controller_path);
    if (rc.num_states != bundle.gamma.num_states)
      throw ReferenceError("verify: controller and abstraction state counts disagree");
    const ResilienceValue k = ResilienceValue::parse(options.k);

    log << "cell_id,k,resilient\n";
    bool all = true;
    for (const StateId q : options.probes) {
      if (q >= bundle.gamma.num_states)
        throw ReferenceError("verify: unknown cell id " + std::to_string(q));
      const bool ok = verify_k_resilient(bundle.gamma, rc, q, k);
      all = all && ok;
      log << q << ',' << k.to_string() << ',' << (ok ? "pass" : "fail") << '\n';
    }
    log << (all ? "all probes pass" : "some probes fail") << '\n';
    return kExitOk;
  });
}

int run_scenario(const ScenarioOptions& options, std::ostream& log) {
  return guarded(log, [&]() {
    if (options.out.empty()) throw ConfigError("scenario: --out is required");
    if (is_fixture_name(options.name)) {
      const BimodalAbstraction gamma = options.name == "g1" ? make_g1() : make_g2();
      save_abstraction_file(options.out, AbstractionBundle{gamma, std::nullopt});
      log << "wrote fixture abstraction " << options.name << " to " << options.out << '\n';
      return kExitOk;
    }
    ScenarioConfig config = make_scenario_config(options.name);
    if (options.d) apply_spike_magnitude(config, *options.d);
    std::ofstream os(options.out, std::ios::binary);
    if (!os) throw ReferenceError("cannot open '" + options.out + "' for writing");
    os << config_to_json(config);
    log << "wrote scenario config " << options.name << " to " << options.out << '\n';
    return kExitOk;
  });
}

}  // namespace rescot
