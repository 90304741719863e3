#pragma once

#include <cstdint>
#include <vector>

#include "scf/group.hpp"

namespace scf {

/// A subset of the (self-dual) index space, kept sorted and deduplicated.
/// Used both for element subsets of the group and for spectra in the dual.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(GroupPtr group, std::vector<std::uint32_t> indices);
  static IndexSet empty(GroupPtr group);
  static IndexSet full(GroupPtr group);
  static IndexSet from_mask(GroupPtr group, const std::vector<std::uint8_t>& mask);

  const GroupPtr& group() const { return group_; }
  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty_set() const { return indices_.empty(); }

  bool contains(std::uint32_t index) const;
  bool is_subset_of(const IndexSet& other) const;
  bool intersects(const IndexSet& other) const;
  bool is_symmetric() const;  // closed under negation

  IndexSet unite(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  IndexSet difference(const IndexSet& other) const;
  IndexSet shifted(std::size_t gamma) const;  // { gamma + e }
  IndexSet negated() const;                   // { -e }
  IndexSet sum_with(const IndexSet& other) const;  // { e + f } pairwise

  std::vector<std::uint8_t> mask() const;

  bool operator==(const IndexSet& other) const {
    return indices_ == other.indices_;
  }

 private:
  GroupPtr group_;
  std::vector<std::uint32_t> indices_;
};

using SpectrumSet = IndexSet;

/// Indicator function of a subset (values 1 on the set, 0 elsewhere).
GroupFunction indicator(const IndexSet& set);

/// { gamma : |coefficient(gamma)| > tol }.
IndexSet support(const SpectralFunction& h, double tol = kSupportTol);

}  // namespace scf
