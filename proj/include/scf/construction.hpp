#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scf/basis.hpp"
#include "scf/group.hpp"
#include "scf/pair.hpp"
#include "scf/partition.hpp"
#include "scf/schedules.hpp"
#include "scf/spectrum_set.hpp"
#include "scf/window.hpp"

namespace scf {

struct RunOptions {
  bool check_sufficiency = true;
  bool check_coordination = true;
  std::optional<Partition::Style> partition_style;   // default: coset on dyadic
  std::optional<SpectrumWindow::Style> window_style; // default: subgroup on dyadic
  double max_weight = 1.0;  // 2 for the two-rail correction pipeline
};

/// One modulated bump Re(c_i beta_i gamma_i) of a step.
struct BumpRecord {
  std::uint32_t center = 0;
  double coefficient = 0.0;   // c_i = truncated g at the center
  std::uint32_t gamma = 0;
  bool order_two = false;     // 2*gamma = 0
  IndexSet spectrum;          // placed support of F(Re beta_i gamma_i)
  GroupFunction beta;         // Phi_{U_n} * alpha_i
};

struct StepTrace {
  int level = 0;
  std::size_t window_size = 0;
  bool window_retried = false;
  double g_norm = 0.0;        // ||g_n||_2 entering the step
  double delta = 0.0;
  int active_bumps = 0;
  double h_energy_sq = 0.0;          // ||h_n||_2^2
  double coeff_energy_sq = 0.0;      // sum c_i^2 ||alpha_i||_2^2
  int partition_dimension = 0;
};

/// Full history of the triangular family: the current row f_0..f_level, the
/// nested windows, recorded spectra and the forbidden set driving character
/// selection. Mutated only by step(); safe to copy.
struct ConstructionState {
  GroupPtr group;
  IndexSet domain;        // a
  GroupFunction weight;   // w
  GroupFunction target;   // chi_a w
  SufficientPair pair;
  SummationBasis basis;
  Schedules schedules;
  RunOptions options;
  bool unit_weight = false;

  int level = 0;
  std::vector<GroupFunction> row;         // f_k^{(level)}, k = 0..level
  std::vector<SpectrumWindow> windows;    // U_0 subset ... subset U_level
  IndexSet compact_set;                   // K = U_0 + U_0
  IndexSet initial_spectrum;              // supp F f_0^{(0)}
  std::vector<IndexSet> increment_spectra;        // level n >= 1
  std::vector<std::vector<BumpRecord>> bump_history;
  std::vector<std::uint8_t> forbidden;    // spectra placed so far + their
                                          // splitting unions
  std::vector<std::uint8_t> rs_mask;      // membership in R cup S
  std::vector<std::uint32_t> search_order;
  double target_integral = 0.0;           // int_a w
  double max_conservation_residual = 0.0;
  std::vector<StepTrace> trace;

  const GroupFunction& latest() const { return row.back(); }
  double t_at(int n) const { return schedules.t[static_cast<std::size_t>(n)]; }
};

struct CorrectionResult {
  IndexSet b;
  GroupFunction f_final;
  double t_final = 1.0;
  double g_residual = 0.0;           // ||g||_2 at termination
  double g_residual_relative = 0.0;  // divided by ||chi_a w||_2
  ConstructionState state;
};

/// g = f (1 - f/(t w)); f is clamped into [0, t w] first and a violation
/// beyond 1e-9 (relative to t max w) raises RangeViolation.
GroupFunction auxiliary(const GroupFunction& f, double t, const GroupFunction& w);

struct Truncation {
  double delta = 0.0;
  GroupFunction truncated;  // (g - delta) chi_{g >= delta}
};

/// Largest delta (by bisection, relative width 1e-9) whose truncation keeps
/// more than 9/10 of the L^2 mass of g.
Truncation threshold_truncate(const GroupFunction& g);

struct BumpPlan {
  Partition partition;
  std::vector<double> coefficients;  // c_i, one per center
  GroupFunction h;                   // sum c_i alpha_i
  double coeff_energy_sq = 0.0;      // sum c_i^2 ||alpha_i||_2^2
  int active = 0;
};

/// Coarsest block (refining on failure) whose sampled combination stays
/// below g_orig pointwise and keeps at least half of its L^2 energy.
BumpPlan build_h(const GroupFunction& g_trunc, const GroupFunction& g_orig,
                 Partition::Style style);

/// First admissible character in the deterministic order: shifted spectra
/// inside R cup S, disjoint from the forbidden set, and free of the
/// self-interference of beta^2 unless the character has order 2. Marks the
/// placed spectrum and its splitting union as forbidden before returning.
BumpRecord select_character(ConstructionState& state, std::uint32_t center,
                            double coefficient, const GroupFunction& beta,
                            const IndexSet& beta_spectrum);

ConstructionState init(const IndexSet& a, const GroupFunction& w,
                       const SufficientPair& pair, const SummationBasis& basis,
                       const Schedules& schedules, const RunOptions& options = {});

/// Adds one row to the triangular family: smooths the previous row through
/// the next window and appends the modulated bump combination.
void step(ConstructionState& state);

CorrectionResult run(const IndexSet& a, const GroupFunction& w,
                     const SufficientPair& pair, const SummationBasis& basis,
                     const Schedules& schedules, const RunOptions& options = {});

struct RailOutcome {
  int part = 0;           // 0: +Re, 1: -Re, 2: +Im, 3: -Im
  CorrectionResult heavy; // rail w = v + 1
  CorrectionResult unit;  // rail w = 1
  double part_sup = 0.0;  // sup of chi_{b1} w1 - chi_{b2}
};

struct BoundedCorrection {
  GroupFunction f;
  std::vector<RailOutcome> rails;
  double mismatch_fraction = 0.0;  // |{h != f}| / |G|
  double residual_bound = 0.0;     // aggregated g residuals of the rails
};

/// Two-rail pipeline: splits h into at most four nonnegative parts, corrects
/// each along the rails v+1 and 1 with budget eps/4, and recombines.
BoundedCorrection correct_bounded(const GroupFunction& h, double eps,
                                  const SufficientPair& pair,
                                  const SummationBasis& basis,
                                  const RunOptions& options = {});

}  // namespace scf
