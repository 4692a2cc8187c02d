// ebk: equivariant section spaces and Bergman-type densities on P^1 models.

#include <CLI11.hpp>
#include <iostream>

#include "ebk/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"equivariant section spaces and densities on P^1 and P^1xP^1"};
  std::string task, config_path, out_dir = ".";
  int threads = 0;
  app.add_option("task", task, "dims | decompose | density | scan | fit | ladder | verify")
      ->required();
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--out", out_dir, "output directory (default .)");
  app.add_option("--threads", threads, "worker threads, overrides the config value");
  CLI11_PARSE(app, argc, argv);

  try {
    ebk::ExperimentConfig cfg;
    if (config_path.empty()) {
      if (task != "verify") throw ebk::ConfigError("--config is required for task " + task);
      cfg.task = ebk::Task::Verify;
    } else {
      cfg = ebk::load_config(config_path);
      if (task != ebk::task_name(cfg.task))
        throw ebk::ConfigError(std::string("command line task '") + task +
                               "' does not match config task '" + ebk::task_name(cfg.task) + "'");
    }
    if (threads > 0) cfg.threads = threads;
    return ebk::run(cfg, out_dir);
  } catch (const ebk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
