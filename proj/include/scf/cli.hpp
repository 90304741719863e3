#pragma once

#include <optional>
#include <string>

namespace scf {

/// Exit codes: 0 success, 1 config or file errors, 2 non-convergence (run)
/// or a failed sweep, 3 construction errors, 4 verification mismatch.

struct CliOverrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool no_checks = false;
};

int cmd_run(const std::string& config_path, const CliOverrides& overrides);
int cmd_verify(const std::string& run_dir);
int cmd_sweep(const std::string& config_path, const CliOverrides& overrides);
int cmd_demo(const CliOverrides& overrides);

}  // namespace scf
