#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scf/basis.hpp"
#include "scf/group.hpp"
#include "scf/spectrum_set.hpp"

namespace scf {

/// Finite stand-in for "every compact set": the test sets E against which
/// sufficiency is decided. Box families are products of symmetric segments
/// with per-factor halfwidth at most the cap, translated to every center in
/// the listed range. Dyadic block families use cosets of prefix subgroups.
class AdmissibleFamily {
 public:
  enum class Kind { Boxes, DyadicBlocks, Explicit };

  AdmissibleFamily() : kind_(Kind::Explicit) {}  // empty until assigned

  /// All translates of boxes with halfwidths up to cap_j (default N_j/8).
  static AdmissibleFamily boxes(GroupPtr group, std::vector<int> caps = {});
  /// All cosets of the prefix subgroups of size up to 2^max_bits.
  static AdmissibleFamily dyadic_blocks(GroupPtr group, int max_bits);
  static AdmissibleFamily explicit_list(GroupPtr group, std::vector<IndexSet> sets);

  Kind kind() const { return kind_; }
  const GroupPtr& group() const { return group_; }
  const std::vector<int>& caps() const { return caps_; }
  int max_bits() const { return max_bits_; }

  /// Base shapes; each is translated to every center of the family.
  std::vector<IndexSet> shapes() const;
  /// Centers used with the shapes. Full index range for Boxes/DyadicBlocks.
  std::vector<std::uint32_t> centers() const;

  /// Reduced near-origin family used when re-checking coordination: same
  /// shapes, centers bounded like the shapes themselves. On a finite dual a
  /// far translate is split by essentially every basis member, which would
  /// strip any thin pair; the bounded probes keep the check meaningful.
  std::vector<std::uint32_t> probe_centers() const;

  bool nonempty() const;

 private:
  AdmissibleFamily(GroupPtr group, Kind kind)
      : group_(std::move(group)), kind_(kind) {}

  GroupPtr group_;
  Kind kind_;
  std::vector<int> caps_;
  int max_bits_ = 0;
  std::vector<IndexSet> explicit_sets_;
};

/// Candidate characters in deterministic order: increasing max coordinate
/// magnitude, ties broken by flat index.
std::vector<std::uint32_t> character_search_order(const GroupPtr& group);

struct SufficiencyWitness {
  IndexSet test_set;
  std::optional<std::uint32_t> gamma;
};

struct SufficiencyResult {
  bool sufficient = false;
  std::vector<SufficiencyWitness> witnesses;  // one entry per tested E
  std::optional<IndexSet> counterexample;
};

/// (R, S) together with the family of test sets deciding sufficiency.
struct SufficientPair {
  IndexSet R;
  IndexSet S;
  AdmissibleFamily admissible;
};

/// For every E in the family, search for gamma with -gamma+E in R and
/// gamma+E in S; first hit in the deterministic order is the witness.
SufficiencyResult is_sufficient(const SufficientPair& pair,
                                bool keep_witnesses = false);

struct CoordinationResult {
  bool coordinated = false;
  std::optional<IndexSet> counterexample;  // probe E whose stripped pair fails
};

/// Strips the splitting union of each probe set from both halves and
/// re-checks sufficiency. Probes are the family's near-origin translates;
/// stripped pairs are deduplicated before the re-check.
CoordinationResult is_coordinated(const SummationBasis& basis,
                                  const SufficientPair& pair);

}  // namespace scf
