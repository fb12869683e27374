#include <cstring>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thincascade/cli/run_command.hpp"
#include "thincascade/errors.hpp"

int main(int argc, char** argv) {
  using namespace thincascade;
  for (int i = 1; i < argc; ++i)
    if (std::strncmp(argv[i], "--seedless=", 11) == 0) {
      std::cerr << "error: --seedless takes no value (no random numbers are used anywhere)\n";
      return 1;
    }

  CLI::App app{"Matched asymptotic expansions for Poisson's equation in a thin cascade junction"};
  std::string config_path, command, out_dir;
  int jobs = -1;
  app.add_option("--config", config_path, "INI file with [geometry], [problem] and [study] sections")->check(CLI::ExistingFile);
  app.add_option("--command", command, "limit, inner, reference, composite, study or all");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--seedless", "accepted for compatibility; the program is deterministic");
  CLI11_PARSE(app, argc, argv);

  try {
    cli::RunConfig cfg = config_path.empty() ? cli::parse_config("") : cli::load_config(config_path);
    if (!command.empty()) cfg.command = command;
    if (!out_dir.empty()) cfg.output = out_dir;
    if (jobs >= 0) cfg.jobs = jobs;
    cli::validate(cfg);
    std::cout << "# configuration\n" << cli::echo_config(cfg) << '\n';
    const int code = cli::run_command(cfg, std::cout);
    std::cout << "exit " << code << '\n';
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
