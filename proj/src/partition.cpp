#include "scf/partition.hpp"

#include <algorithm>
#include <cmath>

namespace scf {

int Partition::dimension() const {
  if (style == Style::Coset) return 0;
  int d = 0;
  for (int n : group->orders()) {
    if (n > 2) ++d;
  }
  return d;
}

int Partition::support_multiplicity() const {
  std::vector<int> counts(group->size(), 0);
  for (const GroupFunction& bump : bumps) {
    for (std::size_t x = 0; x < bump.size(); ++x) {
      if (std::abs(bump[x]) > kSupportTol) ++counts[x];
    }
  }
  return *std::max_element(counts.begin(), counts.end());
}

BlockSpec triangle_block(const GroupPtr& group, std::vector<int> halfwidths) {
  if (halfwidths.size() != group->rank()) {
    fail(ErrorCode::GroupMismatch, "one halfwidth per cyclic factor expected");
  }
  for (std::size_t j = 0; j < group->rank(); ++j) {
    int side = 2 * halfwidths[j] + 1;
    if (halfwidths[j] < 0 || group->orders()[j] % side != 0) {
      fail(ErrorCode::NonDividingBlock,
           "block side " + std::to_string(side) + " does not divide factor " +
               std::to_string(group->orders()[j]));
    }
  }
  BlockSpec spec;
  spec.style = Partition::Style::Triangle;
  spec.halfwidths = std::move(halfwidths);
  return spec;
}

BlockSpec coset_block(const GroupPtr& group, IndexSet subgroup) {
  if (!subgroup.contains(0)) {
    fail(ErrorCode::NonDividingBlock, "coset block must contain 0");
  }
  for (std::uint32_t a : subgroup.indices()) {
    for (std::uint32_t b : subgroup.indices()) {
      if (!subgroup.contains(static_cast<std::uint32_t>(group->add(a, b)))) {
        fail(ErrorCode::NonDividingBlock, "coset block is not a subgroup");
      }
    }
  }
  BlockSpec spec;
  spec.style = Partition::Style::Coset;
  spec.subgroup = std::move(subgroup);
  return spec;
}

IndexSet high_bit_subgroup(const GroupPtr& group, int low_bits) {
  if (!group->is_dyadic()) {
    fail(ErrorCode::GroupMismatch, "high_bit_subgroup needs a dyadic group");
  }
  low_bits = std::clamp(low_bits, 0, static_cast<int>(group->rank()));
  std::vector<std::uint32_t> idx;
  const std::uint32_t step = std::uint32_t{1} << low_bits;
  for (std::uint32_t i = 0; i < group->size(); i += step) idx.push_back(i);
  return IndexSet(group, std::move(idx));
}

Partition covering_partition(const GroupPtr& group, const BlockSpec& spec) {
  Partition part;
  part.group = group;
  part.style = spec.style;

  if (spec.style == Partition::Style::Triangle) {
    // Validate divisibility again in case the spec was hand-built.
    triangle_block(group, spec.halfwidths);
    std::vector<std::uint32_t> block_idx;
    for (std::uint32_t i = 0; i < group->size(); ++i) {
      bool in = true;
      for (std::size_t j = 0; j < group->rank(); ++j) {
        if (std::abs(group->signed_coord(i, j)) > spec.halfwidths[j]) {
          in = false;
          break;
        }
      }
      if (in) block_idx.push_back(i);
    }
    part.block = IndexSet(group, std::move(block_idx));

    // Centers on the exact tiling lattice: multiples of (2b_j+1) per factor.
    std::vector<int> coord(group->rank(), 0);
    std::vector<std::uint32_t> centers;
    bool done = false;
    while (!done) {
      centers.push_back(static_cast<std::uint32_t>(
          group->index(std::span<const int>(coord))));
      done = true;
      for (std::size_t j = 0; j < group->rank(); ++j) {
        coord[j] += 2 * spec.halfwidths[j] + 1;
        if (coord[j] < group->orders()[j]) {
          done = false;
          break;
        }
        coord[j] = 0;
      }
    }
    std::sort(centers.begin(), centers.end());
    part.centers = std::move(centers);
  } else {
    part.block = spec.subgroup;
    // Transversal of the subgroup, chosen greedily in index order.
    std::vector<std::uint8_t> covered(group->size(), 0);
    for (std::uint32_t x = 0; x < group->size(); ++x) {
      if (covered[x]) continue;
      part.centers.push_back(x);
      for (std::uint32_t v : part.block.indices()) covered[group->add(x, v)] = 1;
    }
  }

  // alpha_i(t) = (chi_V * chi_V)(t - x_i) / |V|, with |V| the normalized
  // measure of the block; peak value 1 at the center.
  GroupFunction chi = indicator(part.block);
  GroupFunction auto_corr = convolve(chi, chi);
  const double measure =
      static_cast<double>(part.block.size()) / static_cast<double>(group->size());
  part.bumps.reserve(part.centers.size());
  for (std::uint32_t center : part.centers) {
    GroupFunction bump = GroupFunction::zero(group);
    for (std::size_t t = 0; t < group->size(); ++t) {
      double v = auto_corr[group->sub(t, center)].real() / measure;
      if (std::abs(v) < kSupportTol) v = 0.0;
      bump[t] = cplx(v, 0.0);
    }
    part.bumps.push_back(std::move(bump));
  }
  return part;
}

}  // namespace scf
