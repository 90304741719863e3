#include "scf/basis.hpp"

#include <algorithm>
#include <cmath>

namespace scf {

bool splits(const IndexSet& B, const IndexSet& E) {
  return E.intersects(B) && !E.is_subset_of(B);
}

SummationBasis SummationBasis::symmetric_interval(GroupPtr group) {
  SummationBasis b(group, Kind::SymmetricInterval);
  int s_max = 0;
  for (int n : group->orders()) s_max = std::max(s_max, n / 2);
  b.interval_sizes_ = static_cast<std::size_t>(s_max) + 1;
  return b;
}

SummationBasis SummationBasis::walsh_prefix(GroupPtr group) {
  if (!group->is_dyadic()) {
    fail(ErrorCode::BasisNotEnumerable,
         "Walsh prefix basis requires a dyadic group");
  }
  return SummationBasis(std::move(group), Kind::WalshPrefix);
}

SummationBasis SummationBasis::solid(GroupPtr group, std::size_t member_cap) {
  // Canonical staircase subfamily: all boxes. Every singleton needs a member
  // containing it, so the halfwidth ranges must be full.
  std::size_t count = 1;
  for (int n : group->orders()) {
    count *= static_cast<std::size_t>(n / 2) + 1;
    if (count > member_cap) {
      fail(ErrorCode::BasisNotEnumerable,
           "solid basis would need " + std::to_string(count) +
               " members, cap is " + std::to_string(member_cap));
    }
  }
  SummationBasis b(group, Kind::Solid);
  std::vector<int> hw(group->rank(), 0);
  while (true) {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < group->size(); ++i) {
      bool in = true;
      for (std::size_t j = 0; j < group->rank(); ++j) {
        if (std::abs(group->signed_coord(i, j)) > hw[j]) { in = false; break; }
      }
      if (in) idx.push_back(i);
    }
    b.members_.emplace_back(group, std::move(idx));
    std::size_t j = 0;
    for (; j < hw.size(); ++j) {
      if (hw[j] < group->orders()[j] / 2) { ++hw[j]; break; }
      hw[j] = 0;
    }
    if (j == hw.size()) break;
  }
  return b;
}

SummationBasis SummationBasis::explicit_list(GroupPtr group,
                                             std::vector<IndexSet> members) {
  if (members.empty()) {
    fail(ErrorCode::BasisNotEnumerable, "explicit basis needs at least one member");
  }
  // Summation basis requirement: every singleton lies in some member.
  std::vector<std::uint8_t> covered(group->size(), 0);
  for (const IndexSet& m : members) {
    for (std::uint32_t i : m.indices()) covered[i] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    fail(ErrorCode::BasisNotEnumerable,
         "explicit basis does not cover every character");
  }
  SummationBasis b(std::move(group), Kind::Explicit);
  b.members_ = std::move(members);
  return b;
}

std::size_t SummationBasis::member_count() const {
  switch (kind_) {
    case Kind::SymmetricInterval: return interval_sizes_;
    case Kind::WalshPrefix: return group_->size();
    case Kind::Solid:
    case Kind::Explicit: return members_.size();
  }
  return 0;
}

IndexSet SummationBasis::member(std::size_t i) const {
  switch (kind_) {
    case Kind::SymmetricInterval: {
      std::vector<std::uint32_t> idx;
      const int s = static_cast<int>(i);
      for (std::uint32_t k = 0; k < group_->size(); ++k) {
        if (group_->max_norm(k) <= s) idx.push_back(k);
      }
      return IndexSet(group_, std::move(idx));
    }
    case Kind::WalshPrefix: {
      std::vector<std::uint32_t> idx(i + 1);
      for (std::uint32_t k = 0; k <= i; ++k) idx[k] = k;
      return IndexSet(group_, std::move(idx));
    }
    case Kind::Solid:
    case Kind::Explicit:
      return members_[i];
  }
  return IndexSet::empty(group_);
}

void SummationBasis::mark_splitting_union(const IndexSet& E,
                                          std::vector<std::uint8_t>& mask) const {
  if (E.empty_set()) return;
  switch (kind_) {
    case Kind::SymmetricInterval: {
      // Member s contains gamma iff max_norm(gamma) <= s, so the splitting
      // members are exactly s in [min norm, max norm) over E.
      int lo = group_->size(), hi = 0;
      for (std::uint32_t e : E.indices()) {
        int n = group_->max_norm(e);
        lo = std::min(lo, n);
        hi = std::max(hi, n);
      }
      if (hi <= lo) return;  // no member splits E
      const int top = hi - 1;
      for (std::uint32_t k = 0; k < group_->size(); ++k) {
        if (group_->max_norm(k) <= top) mask[k] = 1;
      }
      return;
    }
    case Kind::WalshPrefix: {
      // Prefix {0..n-1} splits E iff min(E) < n <= max(E).
      std::uint32_t lo = E.indices().front();
      std::uint32_t hi = E.indices().back();
      if (hi <= lo) return;
      for (std::uint32_t k = 0; k < hi; ++k) mask[k] = 1;
      return;
    }
    case Kind::Solid:
    case Kind::Explicit: {
      for (const IndexSet& B : members_) {
        if (splits(B, E)) {
          for (std::uint32_t k : B.indices()) mask[k] = 1;
        }
      }
      return;
    }
  }
}

IndexSet SummationBasis::splitting_union(const IndexSet& E) const {
  std::vector<std::uint8_t> mask(group_->size(), 0);
  mark_splitting_union(E, mask);
  return IndexSet::from_mask(group_, mask);
}

GroupFunction partial_sum(const GroupFunction& f, const IndexSet& B) {
  SpectralFunction hat = fourier(f);
  std::vector<cplx> kept(hat.size(), cplx(0.0, 0.0));
  for (std::uint32_t gamma : B.indices()) kept[gamma] = hat[gamma];
  return inverse_fourier(SpectralFunction(f.group(), std::move(kept)));
}

UNormResult u_norm(const GroupFunction& f, const SummationBasis& basis) {
  SpectralFunction hat = fourier(f);
  const double l1 = f.norm_l1();
  UNormResult best;
  for (std::size_t i = 0; i < basis.member_count(); ++i) {
    IndexSet B = basis.member(i);
    std::vector<cplx> kept(hat.size(), cplx(0.0, 0.0));
    for (std::uint32_t gamma : B.indices()) kept[gamma] = hat[gamma];
    double sup = inverse_fourier(SpectralFunction(f.group(), std::move(kept)))
                     .norm_sup();
    if (sup + l1 > best.value) {
      best.value = sup + l1;
      best.attaining_member = i;
      best.partial_sup = sup;
    }
  }
  return best;
}

}  // namespace scf
