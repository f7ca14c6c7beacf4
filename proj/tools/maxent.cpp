// Command-line front end: maxent <command> [--config FILE] [--key value ...]

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "maxent/app/commands.hpp"
#include "maxent/app/config.hpp"
#include "maxent/errors.hpp"
#include "maxent/parallel.hpp"

namespace {

struct CommandInfo {
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {"check", "Evaluate the expansion condition on a derivative grid"},
    {"measure", "Compute the maximal-entropy eigenmeasure by Ulam power iteration"},
    {"orbit", "Hyperbolic times, Lyapunov exponents and backward contraction along an orbit"},
    {"entropy", "Jacobian, Rokhlin, Brin-Katok and separated-set entropy estimates"},
    {"diagnose", "Mixing, full support, ball lower bound and uniqueness evidence"},
    {"verify", "Run every stage and report a pass/fail entry per claim"},
};

std::string option_name(const std::string& key) {
  return key.size() == 1 ? "-" + key + ",--" + key : "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace maxent;
  try {
    configure_workers_from_env();
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return app::kExitConfig;
  }

  CLI::App cli{"Maximal-entropy measures of expanding-on-average torus maps"};
  cli.set_version_flag("--version", std::string(app::kArtifactName) + " " + app::kArtifactVersion);
  cli.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  for (const auto& info : kCommands) {
    CLI::App* sub = cli.add_subcommand(info.name, info.help);
    sub->add_option("--config", config_path, "key = value configuration file");
    for (const auto& key : app::config_keys()) {
      if (app::is_flag_key(key)) {
        sub->add_flag(option_name(key), switches[key], "switch: " + key);
      } else {
        sub->add_option(option_name(key), values[key], key);
      }
    }
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : app::kExitConfig;
  }

  const std::string command = cli.get_subcommands().front()->get_name();
  const CLI::App* sub = cli.get_subcommands().front();
  app::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file " + config_path);
      std::ostringstream text;
      text << in.rdbuf();
      for (const auto& [k, v] : app::parse_key_values(text.str())) app::apply_setting(cfg, k, v);
    }
    for (const auto& key : app::config_keys()) {
      if (sub->count("--" + key) == 0) continue;
      if (app::is_flag_key(key)) app::apply_setting(cfg, key, switches[key] ? "true" : "false");
      else app::apply_setting(cfg, key, values[key]);
    }
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return app::kExitConfig;
  }
  return app::run_command(command, cfg, std::cerr);
}
