#include "scf/window.hpp"

#include <algorithm>
#include <cmath>

namespace scf {
namespace {

constexpr double kPhiClampTol = 1e-12;

IndexSet interval_members(const GroupPtr& group, const std::vector<int>& halfwidths) {
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < group->size(); ++i) {
    bool in = true;
    for (std::size_t j = 0; j < group->rank(); ++j) {
      if (std::abs(group->signed_coord(i, j)) > halfwidths[j]) {
        in = false;
        break;
      }
    }
    if (in) idx.push_back(i);
  }
  return IndexSet(group, std::move(idx));
}

}  // namespace

SpectrumWindow SpectrumWindow::interval(GroupPtr group, std::vector<int> halfwidths) {
  if (halfwidths.size() != group->rank()) {
    fail(ErrorCode::GroupMismatch, "one halfwidth per cyclic factor expected");
  }
  for (std::size_t j = 0; j < halfwidths.size(); ++j) {
    halfwidths[j] = std::clamp(halfwidths[j], 0, group->orders()[j] / 2);
  }
  IndexSet members = interval_members(group, halfwidths);
  SpectrumWindow w(group, Style::Interval, std::move(members));
  w.halfwidths_ = std::move(halfwidths);
  return w;
}

SpectrumWindow SpectrumWindow::subgroup(GroupPtr group, IndexSet members) {
  if (!members.contains(0)) {
    fail(ErrorCode::GroupMismatch, "subgroup window must contain 0");
  }
  for (std::uint32_t a : members.indices()) {
    for (std::uint32_t b : members.indices()) {
      if (!members.contains(static_cast<std::uint32_t>(group->add(a, b)))) {
        fail(ErrorCode::GroupMismatch, "subgroup window not closed under addition");
      }
    }
  }
  return SpectrumWindow(std::move(group), Style::Subgroup, std::move(members));
}

SpectrumWindow SpectrumWindow::dyadic_prefix(GroupPtr group, int bits) {
  if (!group->is_dyadic()) {
    fail(ErrorCode::GroupMismatch, "prefix subgroups need a dyadic group");
  }
  bits = std::clamp(bits, 0, static_cast<int>(group->rank()));
  std::vector<std::uint32_t> idx(std::size_t{1} << bits);
  for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
  SpectrumWindow w(group, Style::Subgroup, IndexSet(group, std::move(idx)));
  w.prefix_bits_ = bits;
  return w;
}

SpectrumWindow SpectrumWindow::full(GroupPtr group) {
  if (group->is_dyadic()) {
    return dyadic_prefix(group, static_cast<int>(group->rank()));
  }
  std::vector<int> hw(group->rank());
  for (std::size_t j = 0; j < group->rank(); ++j) hw[j] = group->orders()[j] / 2;
  return interval(std::move(group), std::move(hw));
}

bool SpectrumWindow::contains_window(const SpectrumWindow& other) const {
  return other.members_.is_subset_of(members_);
}

IndexSet SpectrumWindow::doubled() const { return members_.sum_with(members_); }

GroupFunction FejerSystem::apply(const GroupFunction& f) const {
  SpectralFunction hat = fourier(f);
  for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= psi[i];
  return inverse_fourier(hat);
}

FejerSystem fejer_system(const SpectrumWindow& window) {
  const GroupPtr& group = window.group();
  const auto mask = window.members().mask();
  const double card = static_cast<double>(window.size());

  // psi(gamma) = |U cap (gamma - U)| / |U|, an exact count.
  std::vector<cplx> psi_vals(group->size(), cplx(0.0, 0.0));
  for (std::uint32_t gamma = 0; gamma < group->size(); ++gamma) {
    std::size_t count = 0;
    for (std::uint32_t lambda : window.members().indices()) {
      if (mask[group->sub(gamma, lambda)]) ++count;
    }
    psi_vals[gamma] = cplx(static_cast<double>(count) / card, 0.0);
  }
  SpectralFunction psi(group, std::move(psi_vals));

  GroupFunction phi = inverse_fourier(psi);
  for (std::size_t x = 0; x < phi.size(); ++x) {
    double re = phi[x].real();
    if (re < 0.0 && re > -kPhiClampTol) re = 0.0;
    phi[x] = cplx(re, 0.0);
  }
  return FejerSystem{window, std::move(psi), std::move(phi)};
}

namespace {

SpectrumWindow window_for_size(const GroupPtr& group,
                               const WindowConstraints& c, int s) {
  if (c.style == SpectrumWindow::Style::Subgroup) {
    int bits = s;
    if (c.previous) bits = std::max(bits, c.previous->prefix_bits());
    return SpectrumWindow::dyadic_prefix(group, bits);
  }
  std::vector<int> hw(group->rank());
  for (std::size_t j = 0; j < group->rank(); ++j) {
    int prev = c.previous ? c.previous->halfwidths()[j] : 0;
    hw[j] = std::min(std::max(prev, s), group->orders()[j] / 2);
  }
  return SpectrumWindow::interval(group, std::move(hw));
}

bool window_satisfies(const SpectrumWindow& w, const WindowConstraints& c,
                      const std::vector<SpectralFunction>& reproduce_hats,
                      const SpectralFunction* weight_hat) {
  FejerSystem sys = fejer_system(w);
  for (std::size_t i = 0; i < reproduce_hats.size(); ++i) {
    SpectralFunction hat = reproduce_hats[i];
    for (std::size_t k = 0; k < hat.size(); ++k) {
      hat[k] *= (sys.psi[k] - cplx(1.0, 0.0));
    }
    if (inverse_fourier(hat).norm_l1() >= c.rho) return false;
  }
  if (weight_hat != nullptr) {
    SpectralFunction hat = *weight_hat;
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= sys.psi[k];
    GroupFunction conv = inverse_fourier(hat);
    const GroupFunction& wgt = *c.weight;
    for (std::size_t x = 0; x < conv.size(); ++x) {
      if (conv[x].real() > c.weight_ratio * wgt[x].real() + 1e-12) return false;
    }
  }
  for (const GroupFunction& bump : c.bumps) {
    SpectralFunction hat = fourier(bump);
    double full = 0.0, kept = 0.0;
    for (std::size_t k = 0; k < hat.size(); ++k) {
      double e = std::norm(hat[k]);
      full += e;
      kept += e * std::norm(sys.psi[k]);
    }
    if (kept < 0.5 * full - 1e-15) return false;
  }
  return true;
}

}  // namespace

SpectrumWindow select_window(const GroupPtr& group,
                             const WindowConstraints& constraints) {
  std::vector<SpectralFunction> reproduce_hats;
  reproduce_hats.reserve(constraints.reproduce.size());
  for (const GroupFunction& f : constraints.reproduce) {
    reproduce_hats.push_back(fourier(f));
  }
  std::optional<SpectralFunction> weight_hat;
  if (constraints.weight) weight_hat = fourier(*constraints.weight);

  auto ok = [&](int s) {
    return window_satisfies(window_for_size(group, constraints, s), constraints,
                            reproduce_hats,
                            weight_hat ? &*weight_hat : nullptr);
  };

  if (constraints.style == SpectrumWindow::Style::Subgroup) {
    // The chain is short, so scan it directly: the result is exactly minimal.
    int s_max = static_cast<int>(group->rank());
    int s0 = constraints.previous ? constraints.previous->prefix_bits() : 0;
    for (int s = s0; s <= s_max; ++s) {
      if (ok(s)) return window_for_size(group, constraints, s);
    }
    return window_for_size(group, constraints, s_max);
  }

  int s_max = 0;
  for (int n : group->orders()) s_max = std::max(s_max, n / 2);
  int s0 = 0;
  if (constraints.previous) {
    for (int h : constraints.previous->halfwidths()) s0 = std::max(s0, h);
  }
  if (ok(s0)) return window_for_size(group, constraints, s0);

  // Double the increment until a size passes, then bisect back to the first
  // passing size in that bracket.
  int lo = s0;  // known failing
  int hi = -1;
  for (int step = 1;; step *= 2) {
    int s = std::min(s0 + step, s_max);
    if (ok(s)) {
      hi = s;
      break;
    }
    lo = s;
    if (s == s_max) break;
  }
  if (hi < 0) return window_for_size(group, constraints, s_max);
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    if (ok(mid)) hi = mid; else lo = mid;
  }
  return window_for_size(group, constraints, hi);
}

}  // namespace scf
