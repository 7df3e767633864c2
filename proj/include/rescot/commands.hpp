#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rescot/config.hpp"
#include "rescot/runtime.hpp"

namespace rescot {

/* exit-code contract: 0 ok, 2 config, 3 domain, 4 reference, 5 internal */
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitReference = 4;
inline constexpr int kExitInternal = 5;

struct AbstractOptions {
  std::string config_path;   // one of config_path / scenario
  std::string scenario;
  std::optional<double> d;
  unsigned jobs = 1;
  std::string out;
};

struct ClassifyOptions {
  std::string abstraction_path;
  SynthesisMode mode = SynthesisMode::kReference;
  std::string out_prefix;
  std::string compare_modes_path;  // optional divergence report
};

struct SimulateOptions {
  std::string controller_path;
  std::string config_path;
  std::string scenario;
  std::optional<double> d;
  std::string abstraction_path;  // optional; rebuilt from the config when empty
  std::vector<double> x0;        // empty: take run.x0 from the config
  std::vector<std::pair<std::uint64_t, std::vector<double>>> spikes;
  std::string nominal = "zero";  // zero | random | const:<w0,w1,...>
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  unsigned jobs = 1;
  std::string out;
};

struct VerifyOptions {
  std::string abstraction_path;
  std::string controller_path;
  std::vector<StateId> probes;
  std::string k = "1";  // finite value, omega, or omega+1
};

struct ScenarioOptions {
  std::string name;
  std::optional<double> d;
  std::string out;
};

int run_abstract(const AbstractOptions& options, std::ostream& log);
int run_classify(const ClassifyOptions& options, std::ostream& log);
int run_simulate(const SimulateOptions& options, std::ostream& log);
int run_verify(const VerifyOptions& options, std::ostream& log);
int run_scenario(const ScenarioOptions& options, std::ostream& log);

/* shared pipeline pieces, also used by the test suites */
struct BuiltProblem {
  ScenarioConfig config;
  SampledSystem system;
  Quantizer quantizer;
  BimodalAbstraction gamma;
};

BuiltProblem build_problem(const ScenarioConfig& config, unsigned jobs);

/* per-state comparison of the two synthesis modes */
std::string mode_divergence_report(const BimodalAbstraction& gamma);

}  // namespace rescot
