#pragma once

#include <optional>
#include <vector>

#include "scf/group.hpp"
#include "scf/spectrum_set.hpp"

namespace scf {

/// Symmetric neighborhood U of zero in the dual group. Interval style is a
/// product of symmetric segments {-u_j..u_j}; subgroup style is a subgroup of
/// the dual (used on dyadic groups, where the Walsh prefixes form a chain).
class SpectrumWindow {
 public:
  enum class Style { Interval, Subgroup };

  static SpectrumWindow interval(GroupPtr group, std::vector<int> halfwidths);
  static SpectrumWindow subgroup(GroupPtr group, IndexSet members);
  /// Subgroup spanned by the first `bits` order-2 factors: indices 0..2^bits-1.
  static SpectrumWindow dyadic_prefix(GroupPtr group, int bits);
  static SpectrumWindow full(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  Style style() const { return style_; }
  const std::vector<int>& halfwidths() const { return halfwidths_; }
  int prefix_bits() const { return prefix_bits_; }

  const IndexSet& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool is_full() const { return members_.size() == group_->size(); }
  bool contains_window(const SpectrumWindow& other) const;

  /// K = U + U as an exact index set.
  IndexSet doubled() const;

 private:
  SpectrumWindow(GroupPtr group, Style style, IndexSet members)
      : group_(std::move(group)), style_(style), members_(std::move(members)) {}

  GroupPtr group_;
  Style style_;
  IndexSet members_;
  std::vector<int> halfwidths_;  // interval style only
  int prefix_bits_ = -1;         // dyadic prefix subgroups only
};

/// Fejer-type system for a window: psi = (chi_U * chi_U)/|U| on the dual
/// (computed combinatorially, so supp psi = U+U holds as exact index sets)
/// and Phi = the inverse transform, a nonnegative kernel with mass one.
struct FejerSystem {
  SpectrumWindow window;
  SpectralFunction psi;
  GroupFunction phi;

  /// Convolution with Phi, evaluated as a spectral multiplier by psi; kills
  /// coefficients outside U+U exactly.
  GroupFunction apply(const GroupFunction& f) const;
};

FejerSystem fejer_system(const SpectrumWindow& window);

/// Conditions a window must satisfy in select_window. All are optional;
/// the full dual group always satisfies every condition, so the search
/// terminates.
struct WindowConstraints {
  std::optional<SpectrumWindow> previous;       // require U to contain this
  std::vector<GroupFunction> reproduce;         // ||Phi_U*f - f||_1 < rho
  double rho = 0.0;
  std::optional<GroupFunction> weight;          // Phi_U*w <= ratio*w pointwise
  double weight_ratio = 1.0;
  std::vector<GroupFunction> bumps;             // ||Phi_U*a||_2^2 >= 1/2 ||a||_2^2
  SpectrumWindow::Style style = SpectrumWindow::Style::Interval;
};

/// Smallest window, under a doubling-then-bisection search on the size
/// parameter, containing `previous` and satisfying every supplied condition.
SpectrumWindow select_window(const GroupPtr& group,
                             const WindowConstraints& constraints);

}  // namespace scf
