#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "planeset/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rectangle-property scans, tangent-disk classification and packing probes"};
  app.require_subcommand(1, 1);

  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool verbose = false;
  for (const char* name : {"generate", "scan", "classify", "pack", "probe", "search", "render"}) {
    auto* sub = app.add_subcommand(name, std::string("run a '") + name + "' scenario");
    sub->add_option("--config", config, "scenario JSON file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_flag("--verbose", verbose, "print a summary to stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : planeset::kExitConfig;
  }

  planeset::RunOptions opt;
  opt.out_dir = out_dir;
  opt.kind = app.get_subcommands().front()->get_name();
  opt.verbose = verbose;
  if (app.get_subcommands().front()->count("--seed") > 0) opt.seed = seed;

  const auto outcome = planeset::run_scenario(config, opt);
  if (outcome.exit_code != planeset::kExitOk) {
    std::cerr << "planeset: " << outcome.diagnostic << '\n';
    return outcome.exit_code;
  }
  if (verbose) {
    for (const auto& f : outcome.files) std::cerr << "wrote " << f.string() << '\n';
  }
  return 0;
}
