#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "viscolab/config.hpp"
#include "viscolab/solver.hpp"

namespace viscolab {

/// Raised for malformed or inconsistent configuration (exit code 2);
/// anything else escaping a pipeline is a runtime failure (exit code 3).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shared config -> object builders (also used by tests and tools).
Domain parse_domain(const Config& cfg);
GridPtr parse_grid(const Config& cfg, const Domain& domain);
/// Coefficient block under `prefix.`: kind = constant | affine | oscillatory
/// | singular | radial | abs_power. Missing block yields the fallback.
CoefficientField parse_coefficient(const Config& cfg, const std::string& prefix,
                                   const CoefficientField& fallback);
OperatorSpec parse_operator(const Config& cfg);
SolveConfig parse_solve(const Config& cfg, int dim);

struct ExperimentOutcome {
  int exit_code = 0;  // 0 pass, 1 expectation fail, 2 config error, 3 failure
  std::string message;
  std::vector<std::string> files;  // emitted artifacts (absolute or out-relative)
};

/// Runs the configured experiment, writing report.json, any CSV artifacts
/// and manifest.json into out_dir. Never throws; failures land in the exit
/// code and message.
ExperimentOutcome run_experiment(const Config& cfg, const std::string& out_dir,
                                 std::optional<std::uint64_t> seed_override = {});

/// Resolved execution plan without computing.
std::string describe_experiment(const Config& cfg);

/// The config grammar (schema subcommand).
std::string config_grammar();

}  // namespace viscolab
