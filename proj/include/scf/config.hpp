#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scf/construction.hpp"
#include "scf/report.hpp"

namespace scf {

/// Experiment configuration, loaded from JSON. The seed pins every random
/// choice, so a config reproduces its run byte for byte.
struct RunConfig {
  std::vector<int> orders;

  struct SetSpec {
    std::string kind = "interval";  // interval | random | explicit | cells
    std::uint32_t start = 0;        // interval
    std::uint32_t length = 0;       // interval
    std::uint32_t size = 0;         // random
    std::vector<std::uint32_t> indices;  // explicit
    int cell_bits = 0;              // cells (dyadic): low-index fibres
    int full_cells = 0;
    int half_cells = 0;
  } set;

  struct WeightSpec {
    std::string kind = "constant";  // constant | explicit | ramp
    double value = 1.0;
    std::vector<double> values;
    double low = 0.5;   // ramp endpoints
    double high = 1.0;
  } weight;

  struct PairSpec {
    std::string kind = "gapped";   // gapped | explicit
    struct Block { std::uint32_t start = 0; std::uint32_t width = 0; };
    std::vector<Block> blocks;     // gapped: S as index blocks, R = -S
    bool mirror = true;            // gapped: R = -S (else R = S)
    std::vector<std::uint32_t> R;  // explicit
    std::vector<std::uint32_t> S;
    struct Admissible {
      std::string kind = "boxes";  // boxes | dyadic-blocks
      std::vector<int> caps;       // boxes (empty: default N_j/8)
      int max_bits = 3;            // dyadic-blocks
    } admissible;
  } pair;

  struct BasisSpec {
    std::string kind = "symmetric-interval";  // symmetric-interval |
                                              // walsh-prefix | solid | explicit
    std::size_t member_cap = 4096;            // solid
    std::vector<std::vector<std::uint32_t>> members;  // explicit
  } basis;

  struct ScheduleSpec {
    double epsilon = 0.1;
    int n_max = 12;
    double g_tol = 0.15;
    std::vector<double> t;    // optional explicit lists
    std::vector<double> rho;
  } schedules;

  std::optional<std::string> partition_style;  // triangle | coset
  std::optional<std::string> window_style;     // interval | subgroup
  bool check_sufficiency = true;
  bool check_coordination = true;
  std::uint64_t seed = 1;
  bool svg = true;
  std::string output_dir;
  std::vector<double> eps_list;  // sweep only

  static RunConfig from_json(const std::string& text);
  std::string to_json() const;
};

/// Materialized inputs for the pipeline, built deterministically from a
/// config.
struct ResolvedConfig {
  GroupPtr group;
  IndexSet a;
  GroupFunction w;
  SufficientPair pair;
  SummationBasis basis;
  Schedules schedules;
  RunOptions options;
};

ResolvedConfig resolve(const RunConfig& config);

}  // namespace scf
