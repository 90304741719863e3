#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scf/group.hpp"
#include "scf/spectrum_set.hpp"

namespace scf {

/// B splits E when both E∩B and E∖B are nonempty (positive counting measure).
bool splits(const IndexSet& B, const IndexSet& E);

/// Family of bounded dual sets such that every singleton is contained in some
/// member; defines the partial-sum operators and the u-norm.
///
/// Kinds:
///  - SymmetricInterval: products of symmetric segments, one member per size
///    parameter s (segment halfwidth min(s, N_j/2) in factor j).
///  - WalshPrefix: prefixes {0..n-1} of the standard (Paley) enumeration on a
///    dyadic group.
///  - Solid: boxes (products of symmetric segments with independent
///    halfwidths), the canonical staircase subfamily, enumerated up to a cap.
///  - Explicit: user-supplied member list.
class SummationBasis {
 public:
  enum class Kind { SymmetricInterval, WalshPrefix, Solid, Explicit };

  SummationBasis() : kind_(Kind::Explicit) {}  // empty until assigned

  static SummationBasis symmetric_interval(GroupPtr group);
  static SummationBasis walsh_prefix(GroupPtr group);
  static SummationBasis solid(GroupPtr group, std::size_t member_cap = 4096);
  static SummationBasis explicit_list(GroupPtr group, std::vector<IndexSet> members);

  Kind kind() const { return kind_; }
  const GroupPtr& group() const { return group_; }

  std::size_t member_count() const;
  IndexSet member(std::size_t i) const;

  /// Union of the members that split E (literal, the dual group is finite).
  IndexSet splitting_union(const IndexSet& E) const;

  /// Marks the splitting union of E in a dense mask (avoids materializing
  /// intermediate sets in hot loops).
  void mark_splitting_union(const IndexSet& E, std::vector<std::uint8_t>& mask) const;

 private:
  explicit SummationBasis(GroupPtr group, Kind kind)
      : group_(std::move(group)), kind_(kind) {}

  GroupPtr group_;
  Kind kind_;
  std::vector<IndexSet> members_;     // Solid / Explicit
  std::size_t interval_sizes_ = 0;    // SymmetricInterval: s = 0..interval_sizes_-1
};

/// P_B f: zero the coefficients outside B and invert.
GroupFunction partial_sum(const GroupFunction& f, const IndexSet& B);

struct UNormResult {
  double value = 0.0;
  std::size_t attaining_member = 0;
  double partial_sup = 0.0;  // sup norm part at the attaining member
};

/// ||f||_u = max over members of ||P_B f||_inf + ||f||_1 (normalized measure).
UNormResult u_norm(const GroupFunction& f, const SummationBasis& basis);

}  // namespace scf
