#include <iostream>

#include <CLI11.hpp>

#include "mfregret_cli/commands.h"

namespace {

using mfregret::cli::ExperimentConfig;

int dispatch(const std::string& config_path, const std::string& out_arg,
             int (*command)(const ExperimentConfig&, const std::filesystem::path&,
                            std::ostream&)) {
  try {
    const ExperimentConfig cfg = mfregret::cli::load_config(config_path);
    std::filesystem::path out = out_arg;
    if (out.empty()) {
      if (!cfg.output_dir) {
        std::cerr << "error: no output directory (pass --out or set \"output\")\n";
        return 1;
      }
      out = *cfg.output_dir;
    }
    return command(cfg, out, std::cout);
  } catch (const mfregret::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const mfregret::cli::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regret-optimal measurement-feedback control experiments"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const ExperimentConfig&, const std::filesystem::path&, std::ostream&);
  };
  const Command commands[] = {
      {"synthesize", "Synthesize controllers and write their certificates",
       mfregret::cli::run_synthesize},
      {"simulate", "Roll out controllers over seeds and write summary.csv",
       mfregret::cli::run_simulate},
      {"verify", "Run the property suite and write verify_report.csv",
       mfregret::cli::run_verify},
  };
  int code = 0;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config, "JSON experiment configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides \"output\")");
    sub->callback([&config, &out, &code, run = c.run] {
      code = dispatch(config, out, run);
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 1;
  }
  return code;
}
