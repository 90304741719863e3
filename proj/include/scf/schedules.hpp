#pragma once

#include <vector>

#include "scf/errors.hpp"

namespace scf {

/// Iteration schedules: target budget epsilon, level bounds t_0 < t_1 < ...
/// staying in (1, 1+eps] (identically 1 for unit weight), smoothing budgets
/// rho_n, iteration cap and the stopping threshold on the auxiliary residual.
///
/// Defaults: rho_0 = eps/2 (the initial smoothing budget stays O(eps)) and
/// rho_n = eps^2 4^{-n-2} for n >= 1, so sum_{n>=1} sqrt(rho_n) = eps/4.
struct Schedules {
  double epsilon = 0.1;
  std::vector<double> t;    // size n_max + 1
  std::vector<double> rho;  // size n_max + 1
  int n_max = 12;
  double g_tol = 0.15;      // stop when ||g_n||_2 <= g_tol * ||chi_a w||_2

  static Schedules defaults(double epsilon, bool unit_weight, int n_max = 12,
                            double g_tol = 0.15);

  /// Throws ConfigError when a constraint fails. Unit-weight schedules may
  /// hold t identically 1; otherwise t must increase strictly inside
  /// (1, 1+eps].
  void validate(bool unit_weight) const;

  bool unit_t() const;
};

}  // namespace scf
