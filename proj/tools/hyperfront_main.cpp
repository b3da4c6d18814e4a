#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hyperfront/commands.hpp"

using namespace hyperfront;

int main(int argc, char** argv) {
  CLI::App app{
      "hyperfront: wave front tracking for the scaled potential-flow system "
      "and its hypersonic small-disturbance limit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  auto add_sub = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("config", config_path, "run configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (default: .)");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_flag("--quiet", quiet, "suppress progress output");
    return sub;
  };

  CLI::App* c_run = add_sub("run", "single front-tracking run");
  CLI::App* c_cmp = add_sub("compare", "paired run against the tau=0 system");
  CLI::App* c_swp = add_sub("sweep", "tau sweep with log-log rate fit");
  CLI::App* c_wng = add_sub("wing", "wing halves, glued Cauchy tail, decay study");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig rc = load_config_file(config_path);
    if (seed) rc.seed = *seed;
    if (c_run->parsed())
      cmd_run(rc, out_dir, quiet);
    else if (c_cmp->parsed())
      cmd_compare(rc, out_dir, quiet);
    else if (c_swp->parsed())
      cmd_sweep(rc, out_dir, quiet);
    else if (c_wng->parsed())
      cmd_wing(rc, out_dir, quiet);
    return 0;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const budget_exceeded_error& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
