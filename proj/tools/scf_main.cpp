#include <string>

#include "CLI11.hpp"
#include "scf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral correction experiments on finite abelian groups"};
  app.require_subcommand(1);

  scf::CliOverrides overrides;
  std::string config_path;
  std::string run_dir;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
      seed_set = true;
    });
    cmd->add_option("--threads", overrides.threads, "worker threads for sweeps");
    cmd->add_flag("--no-checks", overrides.no_checks,
                  "skip sufficiency and coordination checks");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute one correction run");
  run_cmd->add_option("--config", config_path, "config JSON path")->required();
  add_common(run_cmd);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "recompute a run's report from artifacts");
  verify_cmd->add_option("dir", run_dir, "run output directory")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "epsilon sweep (log law)");
  sweep_cmd->add_option("--config", config_path, "config JSON path")->required();
  add_common(sweep_cmd);

  CLI::App* demo_cmd = app.add_subcommand("demo", "run a built-in showcase");
  add_common(demo_cmd);

  CLI11_PARSE(app, argc, argv);

  if (!out_dir.empty()) overrides.out_dir = out_dir;
  if (seed_set) overrides.seed = seed;

  if (run_cmd->parsed()) return scf::cmd_run(config_path, overrides);
  if (verify_cmd->parsed()) return scf::cmd_verify(run_dir);
  if (sweep_cmd->parsed()) return scf::cmd_sweep(config_path, overrides);
  if (demo_cmd->parsed()) return scf::cmd_demo(overrides);
  return 1;
}
