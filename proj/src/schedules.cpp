#include "scf/schedules.hpp"

#include <cmath>

namespace scf {

Schedules Schedules::defaults(double epsilon, bool unit_weight, int n_max,
                              double g_tol) {
  Schedules s;
  s.epsilon = epsilon;
  s.n_max = n_max;
  s.g_tol = g_tol;
  s.t.resize(n_max + 1);
  s.rho.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    s.t[n] = unit_weight ? 1.0
                         : 1.0 + (epsilon / 2.0) * (1.0 - std::pow(2.0, -n - 1));
    s.rho[n] = (n == 0) ? epsilon / 2.0
                        : epsilon * epsilon * std::pow(4.0, -n - 2);
  }
  return s;
}

bool Schedules::unit_t() const {
  for (double v : t) {
    if (v != 1.0) return false;
  }
  return true;
}

void Schedules::validate(bool unit_weight) const {
  if (!(epsilon > 0.0)) fail(ErrorCode::ConfigError, "epsilon must be positive");
  if (n_max < 0) fail(ErrorCode::ConfigError, "n_max must be nonnegative");
  if (!(g_tol > 0.0)) fail(ErrorCode::ConfigError, "g_tol must be positive");
  const auto want = static_cast<std::size_t>(n_max) + 1;
  if (t.size() != want || rho.size() != want) {
    fail(ErrorCode::ConfigError, "schedules need n_max+1 entries of t and rho");
  }

  if (unit_t()) {
    if (!unit_weight) {
      fail(ErrorCode::ConfigError,
           "t identically 1 is only admissible for unit weight");
    }
  } else {
    for (std::size_t n = 0; n < t.size(); ++n) {
      if (!(t[n] > 1.0) || t[n] > 1.0 + epsilon) {
        fail(ErrorCode::ConfigError, "t must stay inside (1, 1+epsilon]");
      }
      if (n > 0 && !(t[n] > t[n - 1])) {
        fail(ErrorCode::ConfigError, "t must increase strictly");
      }
    }
  }

  double tail = 0.0;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    if (!(rho[n] > 0.0)) fail(ErrorCode::ConfigError, "rho must be positive");
    if (n > 0) tail += std::sqrt(rho[n]);
  }
  if (!(rho[0] < epsilon)) {
    fail(ErrorCode::ConfigError, "rho_0 must stay below epsilon");
  }
  if (!(tail < epsilon)) {
    fail(ErrorCode::ConfigError,
         "sum of sqrt(rho_n) for n >= 1 must stay below epsilon");
  }
}

}  // namespace scf
