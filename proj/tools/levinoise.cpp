#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "levinoise/cli/recipes.hpp"
#include "levinoise/cli/runner.hpp"

using namespace levinoise;
using namespace levinoise::cli;

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, domain_error = 3, numeric_error = 4 };

std::string output_directory(const std::string& flag, const RunConfig& cfg) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LEVINOISE_OUT"); env && *env) return env;
  if (!cfg.output_directory.empty()) return cfg.output_directory;
  return "out";
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return domain_error;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return numeric_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise budgets for levitated-particle collapse-model tests"};
  app.set_version_flag("--version", LEVINOISE_VERSION);
  app.require_subcommand(1);

  std::string cfg_path, out_dir;
  unsigned threads = 1;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a config or recipe and write CSV + manifest");
  run_cmd->add_option("config", cfg_path, "Config file or recipe name")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides LEVINOISE_OUT)");
  run_cmd->add_option("--threads", threads, "Worker threads, 0 = all cores")
      ->check(CLI::Range(0u, 1024u));

  auto* list_cmd = app.add_subcommand("list-recipes", "List built-in recipes");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a config without running it");
  validate_cmd->add_option("config", validate_path, "Config file or recipe name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : config_error;
  }

  if (*list_cmd) {
    for (const auto& r : recipes()) {
      const auto cfg = parse_config(std::string(r.text), "recipe:" + std::string(r.name),
                                    std::string(r.name));
      std::cout << r.name << '\t' << to_string(cfg.kind) << '\n';
    }
    return ok;
  }

  if (*validate_cmd) {
    return guarded([&] {
      const auto cfg = load_config(validate_path);
      validate(cfg.model.particle);
      validate(cfg.model.environment);
      validate(cfg.model.trap);
      std::size_t points = 1;
      if (cfg.series) points *= cfg.series->values.size();
      if (cfg.sweep) points *= cfg.sweep->values.size();
      std::cout << cfg.source << ": ok (" << to_string(cfg.kind) << ", " << points << " point"
                << (points == 1 ? "" : "s") << ")\n";
      return static_cast<int>(ok);
    });
  }

  return guarded([&] {
    const auto cfg = load_config(cfg_path);
    const auto summary = run(cfg, output_directory(out_dir, cfg), threads);
    for (const auto& f : summary.files) std::cout << f << '\n';
    return static_cast<int>(ok);
  });
}
