// Command-line front end: run, describe, or print the config schema.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "viscolab/config.hpp"
#include "viscolab/experiment.hpp"

namespace {

viscolab::Config load(const std::string& path) {
  return viscolab::Config::parse_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viscolab: monotone schemes for fully nonlinear elliptic "
               "problems with unbounded lower-order terms"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;

  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Path to the config file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default: out)");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_value, "Override the config seed");

  CLI::App* describe =
      app.add_subcommand("describe", "Print the resolved experiment plan");
  describe->add_option("config", config_path, "Path to the config file")
      ->required()
      ->check(CLI::ExistingFile);

  app.add_subcommand("schema", "Print the config grammar");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("schema")) {
      std::fputs(viscolab::config_grammar().c_str(), stdout);
      return 0;
    }
    if (app.got_subcommand("describe")) {
      std::fputs(viscolab::describe_experiment(load(config_path)).c_str(),
                 stdout);
      return 0;
    }
    if (seed_opt->count() > 0) seed = seed_value;
    const viscolab::ExperimentOutcome out =
        viscolab::run_experiment(load(config_path), out_dir, seed);
    if (out.exit_code == 0) {
      std::printf("pass: %s\n", config_path.c_str());
    } else {
      std::fprintf(stderr, "exit %d: %s\n", out.exit_code,
                   out.message.c_str());
    }
    for (const std::string& f : out.files)
      std::printf("  wrote %s\n", f.c_str());
    return out.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
