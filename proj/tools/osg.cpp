// osg: writes the simulation tables for each subcommand.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "osg/commands.hpp"
#include "osg/config.hpp"
#include "osg/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Traveling-wave optical Stern-Gerlach simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::string format;
  std::string method;

  for (const auto& name : osg::subcommand_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file (key = value, [sections])");
    sub->add_option("--preset", preset, "named preset (fig2 ... fig7)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--method", method, "analytic or numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));
  }
  CLI11_PARSE(app, argc, argv);

  osg::configure_threads_from_env();
  const std::string name = app.get_subcommands().front()->get_name();

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "osg: error: cannot read config file " << config_path << '\n';
      return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (preset.empty()) {
    std::cerr << "osg: error: --config or --preset is required\n";
    return 1;
  }

  osg::RunConfig config;
  try {
    config = osg::parse_config(text, preset.empty() ? std::nullopt : std::optional(preset));
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!format.empty()) config.format = osg::parse_format(format);
    if (!method.empty()) config.method = osg::parse_method(method);
  } catch (const std::exception& e) {
    std::cerr << "osg: error: " << (config_path.empty() ? std::string("config") : config_path)
              << ": " << e.what() << '\n';
    return 1;
  }
  return osg::run_subcommand(name, config, std::cout, std::cerr);
}
