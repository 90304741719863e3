#include "scf/spectrum_set.hpp"

#include <algorithm>

namespace scf {

IndexSet::IndexSet(GroupPtr group, std::vector<std::uint32_t> indices)
    : group_(std::move(group)), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.back() >= group_->size()) {
    fail(ErrorCode::GroupMismatch, "index set entry exceeds group size");
  }
}

IndexSet IndexSet::empty(GroupPtr group) { return IndexSet(std::move(group), {}); }

IndexSet IndexSet::full(GroupPtr group) {
  std::vector<std::uint32_t> all(group->size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  return IndexSet(std::move(group), std::move(all));
}

IndexSet IndexSet::from_mask(GroupPtr group, const std::vector<std::uint8_t>& mask) {
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) idx.push_back(i);
  }
  return IndexSet(std::move(group), std::move(idx));
}

bool IndexSet::contains(std::uint32_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

bool IndexSet::intersects(const IndexSet& other) const {
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

bool IndexSet::is_symmetric() const {
  for (std::uint32_t i : indices_) {
    if (!contains(static_cast<std::uint32_t>(group_->negate(i)))) return false;
  }
  return true;
}

IndexSet IndexSet::unite(const IndexSet& other) const {
  std::vector<std::uint32_t> out;
  out.reserve(indices_.size() + other.indices_.size());
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(out));
  return IndexSet(group_, std::move(out));
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  std::vector<std::uint32_t> out;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(out));
  return IndexSet(group_, std::move(out));
}

IndexSet IndexSet::difference(const IndexSet& other) const {
  std::vector<std::uint32_t> out;
  std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(),
                      other.indices_.end(), std::back_inserter(out));
  return IndexSet(group_, std::move(out));
}

IndexSet IndexSet::shifted(std::size_t gamma) const {
  std::vector<std::uint32_t> out(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(group_->add(gamma, indices_[i]));
  }
  return IndexSet(group_, std::move(out));
}

IndexSet IndexSet::negated() const {
  std::vector<std::uint32_t> out(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(group_->negate(indices_[i]));
  }
  return IndexSet(group_, std::move(out));
}

IndexSet IndexSet::sum_with(const IndexSet& other) const {
  std::vector<std::uint8_t> mask(group_->size(), 0);
  for (std::uint32_t a : indices_) {
    for (std::uint32_t b : other.indices_) {
      mask[group_->add(a, b)] = 1;
    }
  }
  return from_mask(group_, mask);
}

std::vector<std::uint8_t> IndexSet::mask() const {
  std::vector<std::uint8_t> m(group_->size(), 0);
  for (std::uint32_t i : indices_) m[i] = 1;
  return m;
}

GroupFunction indicator(const IndexSet& set) {
  GroupFunction f = GroupFunction::zero(set.group());
  for (std::uint32_t i : set.indices()) f[i] = cplx(1.0, 0.0);
  return f;
}

IndexSet support(const SpectralFunction& h, double tol) {
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < h.size(); ++i) {
    if (std::abs(h[i]) > tol) idx.push_back(i);
  }
  return IndexSet(h.group(), std::move(idx));
}

}  // namespace scf
