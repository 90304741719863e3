#pragma once

#include <vector>

#include "scf/group.hpp"
#include "scf/spectrum_set.hpp"

namespace scf {

/// Partition of unity from a covering neighborhood V of zero: translates of V
/// by the centers tile the group, and each bump is the normalized
/// autocorrelation of chi_V moved to its center. Triangle style uses a
/// product of symmetric segments (tent-shaped bumps), coset style a subgroup
/// (indicator bumps of its cosets).
struct Partition {
  enum class Style { Triangle, Coset };

  GroupPtr group;
  Style style = Style::Triangle;
  IndexSet block;                      // V as an element set
  std::vector<std::uint32_t> centers;  // x_i
  std::vector<GroupFunction> bumps;    // alpha_i

  /// Number of factors of order > 2 for triangle style (0 for coset style);
  /// the support covering has multiplicity at most 2^dimension.
  int dimension() const;

  /// max over x of the number of bump supports containing x.
  int support_multiplicity() const;
};

struct BlockSpec {
  Partition::Style style = Partition::Style::Triangle;
  std::vector<int> halfwidths;  // triangle: b_j with (2b_j+1) dividing N_j
  IndexSet subgroup;            // coset: V
};

Partition covering_partition(const GroupPtr& group, const BlockSpec& block);

/// Triangle block spec; throws NonDividingBlock unless (2b_j+1) | N_j for all j.
BlockSpec triangle_block(const GroupPtr& group, std::vector<int> halfwidths);

/// Coset block spec for a subgroup of the group.
BlockSpec coset_block(const GroupPtr& group, IndexSet subgroup);

/// Dyadic helper: the subgroup where the first `low_bits` coordinates vanish
/// (its cosets are enumerated by the low coordinates).
IndexSet high_bit_subgroup(const GroupPtr& group, int low_bits);

}  // namespace scf
