#include "scf/pair.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace scf {

AdmissibleFamily AdmissibleFamily::boxes(GroupPtr group, std::vector<int> caps) {
  AdmissibleFamily fam(group, Kind::Boxes);
  if (caps.empty()) {
    caps.resize(group->rank());
    for (std::size_t j = 0; j < group->rank(); ++j) {
      caps[j] = group->orders()[j] / 8;
    }
  }
  if (caps.size() != group->rank()) {
    fail(ErrorCode::GroupMismatch, "one halfwidth cap per factor expected");
  }
  for (std::size_t j = 0; j < caps.size(); ++j) {
    caps[j] = std::clamp(caps[j], 0, group->orders()[j] / 2);
  }
  fam.caps_ = std::move(caps);
  return fam;
}

AdmissibleFamily AdmissibleFamily::dyadic_blocks(GroupPtr group, int max_bits) {
  if (!group->is_dyadic()) {
    fail(ErrorCode::GroupMismatch, "dyadic block family needs a dyadic group");
  }
  AdmissibleFamily fam(std::move(group), Kind::DyadicBlocks);
  fam.max_bits_ = std::clamp(max_bits, 0, static_cast<int>(fam.group_->rank()));
  return fam;
}

AdmissibleFamily AdmissibleFamily::explicit_list(GroupPtr group,
                                                 std::vector<IndexSet> sets) {
  AdmissibleFamily fam(std::move(group), Kind::Explicit);
  fam.explicit_sets_ = std::move(sets);
  return fam;
}

std::vector<IndexSet> AdmissibleFamily::shapes() const {
  std::vector<IndexSet> out;
  switch (kind_) {
    case Kind::Boxes: {
      std::vector<int> hw(group_->rank(), 0);
      while (true) {
        std::vector<std::uint32_t> idx;
        for (std::uint32_t i = 0; i < group_->size(); ++i) {
          bool in = true;
          for (std::size_t j = 0; j < group_->rank(); ++j) {
            if (std::abs(group_->signed_coord(i, j)) > hw[j]) { in = false; break; }
          }
          if (in) idx.push_back(i);
        }
        out.emplace_back(group_, std::move(idx));
        std::size_t j = 0;
        for (; j < hw.size(); ++j) {
          if (hw[j] < caps_[j]) { ++hw[j]; break; }
          hw[j] = 0;
        }
        if (j == hw.size()) break;
      }
      return out;
    }
    case Kind::DyadicBlocks: {
      for (int m = 0; m <= max_bits_; ++m) {
        std::vector<std::uint32_t> idx(std::size_t{1} << m);
        for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
        out.emplace_back(group_, std::move(idx));
      }
      return out;
    }
    case Kind::Explicit:
      return explicit_sets_;
  }
  return out;
}

std::vector<std::uint32_t> AdmissibleFamily::centers() const {
  if (kind_ == Kind::Explicit) return {0};
  std::vector<std::uint32_t> out(group_->size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<std::uint32_t> AdmissibleFamily::probe_centers() const {
  std::vector<std::uint32_t> out;
  switch (kind_) {
    case Kind::Boxes: {
      for (std::uint32_t i = 0; i < group_->size(); ++i) {
        bool near = true;
        for (std::size_t j = 0; j < group_->rank(); ++j) {
          if (std::abs(group_->signed_coord(i, j)) > caps_[j]) { near = false; break; }
        }
        if (near) out.push_back(i);
      }
      return out;
    }
    case Kind::DyadicBlocks: {
      const std::uint32_t limit = std::uint32_t{1}
                                  << std::min<std::size_t>(max_bits_ + 2, group_->rank());
      for (std::uint32_t i = 0; i < limit; ++i) out.push_back(i);
      return out;
    }
    case Kind::Explicit:
      return {0};
  }
  return out;
}

bool AdmissibleFamily::nonempty() const {
  return kind_ != Kind::Explicit || !explicit_sets_.empty();
}

std::vector<std::uint32_t> character_search_order(const GroupPtr& group) {
  std::vector<std::uint32_t> order(group->size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return group->max_norm(a) < group->max_norm(b);
                   });
  return order;
}

namespace {

/// Erosion { mu : mu + shape subset of set } as a dense mask.
std::vector<std::uint8_t> erosion(const IndexSet& set, const IndexSet& shape) {
  const Group& g = *set.group();
  const auto set_mask = set.mask();
  std::vector<std::uint8_t> out(g.size(), 0);
  for (std::uint32_t mu = 0; mu < g.size(); ++mu) {
    bool all = true;
    for (std::uint32_t e : shape.indices()) {
      if (!set_mask[g.add(mu, e)]) { all = false; break; }
    }
    out[mu] = all ? 1 : 0;
  }
  return out;
}

SufficiencyResult check_sufficiency(const IndexSet& R, const IndexSet& S,
                                    const AdmissibleFamily& family,
                                    bool keep_witnesses) {
  const GroupPtr& group = family.group();
  SufficiencyResult result;
  result.sufficient = true;
  const auto order = character_search_order(group);
  const auto centers = family.centers();

  for (const IndexSet& shape : family.shapes()) {
    // gamma works for E = c + shape iff c - gamma lies in the R-erosion and
    // c + gamma in the S-erosion of the shape.
    const auto ero_r = erosion(R, shape);
    const auto ero_s = erosion(S, shape);
    for (std::uint32_t c : centers) {
      std::optional<std::uint32_t> witness;
      for (std::uint32_t gamma : order) {
        if (ero_r[group->sub(c, gamma)] && ero_s[group->add(c, gamma)]) {
          witness = gamma;
          break;
        }
      }
      if (!witness) {
        result.sufficient = false;
        if (!result.counterexample) result.counterexample = shape.shifted(c);
        if (!keep_witnesses) return result;
      }
      if (keep_witnesses) {
        result.witnesses.push_back({shape.shifted(c), witness});
      }
    }
  }
  return result;
}

}  // namespace

SufficiencyResult is_sufficient(const SufficientPair& pair, bool keep_witnesses) {
  if (!pair.admissible.nonempty()) {
    fail(ErrorCode::BasisNotEnumerable, "admissible family is empty");
  }
  return check_sufficiency(pair.R, pair.S, pair.admissible, keep_witnesses);
}

CoordinationResult is_coordinated(const SummationBasis& basis,
                                  const SufficientPair& pair) {
  CoordinationResult result;
  result.coordinated = true;

  // Distinct splitting unions are far fewer than probes; dedupe on the union.
  std::map<std::vector<std::uint32_t>, bool> verdicts;
  for (const IndexSet& shape : pair.admissible.shapes()) {
    for (std::uint32_t c : pair.admissible.probe_centers()) {
      IndexSet probe = shape.shifted(c);
      IndexSet stripped_zone = basis.splitting_union(probe);
      auto [it, fresh] = verdicts.try_emplace(stripped_zone.indices(), false);
      if (fresh) {
        SufficiencyResult sub = check_sufficiency(pair.R.difference(stripped_zone),
                                                  pair.S.difference(stripped_zone),
                                                  pair.admissible, false);
        it->second = sub.sufficient;
      }
      if (!it->second) {
        result.coordinated = false;
        if (!result.counterexample) result.counterexample = probe;
        return result;
      }
    }
  }
  return result;
}

}  // namespace scf
