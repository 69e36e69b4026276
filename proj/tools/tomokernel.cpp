// tomokernel: command-line front end.
//
// Usage:
//   tomokernel <subcommand> [--config cfg.json] [--output out.csv] [--seed N]
//              [--threads N] [--compare]
//   tomokernel --version
//
// Subcommands: husimi-direct, husimi-kernel, husimi-mc, sample, kernel-eval,
// check-identities, inverse-divergence. The config is a JSON record; see
// README.md for the schema. Flags override the corresponding config keys.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tomokernel/cli.hpp"
#include "tomokernel/errors.hpp"

namespace tk = tomokernel;

int main(int argc, char** argv) {
  CLI::App app{"Homodyne tomography to Husimi transform via the Dawson-derivative kernel"};
  app.set_version_flag("--version", std::string("tomokernel ") + TOMOKERNEL_VERSION + " (interface 1)");

  std::string subcommand;
  std::string config_path;
  std::string output_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool compare = false;

  app.add_option("subcommand", subcommand, "Computation to run")
      ->required()
      ->check(CLI::IsMember(tk::cli::subcommand_names()));
  app.add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* output_opt = app.add_option("-o,--output", output_path, "Output CSV path ('-' for stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_flag("--compare", compare,
               "husimi-kernel/husimi-direct: also compute the other path and fail if they disagree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << "error[config]: " << e.what() << "\n";
      return tk::cli::exit_code(tk::ErrorCategory::config);
    }
    return app.exit(e);
  }

  tk::cli::RunConfig config;
  try {
    nlohmann::json record;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      record = nlohmann::json::parse(in);
    }
    config = tk::cli::parse_config(record, tk::cli::parse_subcommand(subcommand));
  } catch (const tk::Error& e) {
    std::cerr << "error[config]: " << e.what() << "\n";
    return tk::cli::exit_code(tk::ErrorCategory::config);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error[config]: " << e.what() << "\n";
    return tk::cli::exit_code(tk::ErrorCategory::config);
  }
  if (*output_opt) config.output_path = output_path;
  if (*seed_opt) config.seed = seed;
  if (*threads_opt) config.threads = threads;
  config.compare = compare;
  return tk::cli::run(config, std::cout, std::cerr);
}
