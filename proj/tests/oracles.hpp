#pragma once

// Independent reference implementations used as test oracles. Everything in
// here evaluates defining sums or exhaustive searches directly, without going
// through the library's fast paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "scf/group.hpp"
#include "scf/spectrum_set.hpp"

namespace scf::oracle {

inline cplx character(const Group& g, std::size_t gamma, std::size_t x) {
  double phase = 0.0;
  std::size_t gg = gamma, xx = x;
  for (int n : g.orders()) {
    auto nn = static_cast<std::size_t>(n);
    phase += 2.0 * std::numbers::pi *
             static_cast<double>((gg % nn) * (xx % nn)) / static_cast<double>(n);
    gg /= nn;
    xx /= nn;
  }
  return cplx(std::cos(phase), std::sin(phase));
}

/// Defining sum: coefficient(gamma) = (1/|G|) sum_x f(x) conj(gamma(x)).
inline std::vector<cplx> naive_fourier(const GroupFunction& f) {
  const Group& g = *f.group();
  std::vector<cplx> out(g.size());
  for (std::size_t gamma = 0; gamma < g.size(); ++gamma) {
    cplx acc(0.0, 0.0);
    for (std::size_t x = 0; x < g.size(); ++x) {
      acc += f[x] * std::conj(character(g, gamma, x));
    }
    out[gamma] = acc / static_cast<double>(g.size());
  }
  return out;
}

inline std::vector<cplx> naive_inverse(const Group& g, const std::vector<cplx>& h) {
  std::vector<cplx> out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    cplx acc(0.0, 0.0);
    for (std::size_t gamma = 0; gamma < g.size(); ++gamma) {
      acc += h[gamma] * character(g, gamma, x);
    }
    out[x] = acc;
  }
  return out;
}

inline std::vector<cplx> naive_convolve(const GroupFunction& f, const GroupFunction& g) {
  const Group& grp = *f.group();
  std::vector<cplx> out(grp.size());
  for (std::size_t x = 0; x < grp.size(); ++x) {
    cplx acc(0.0, 0.0);
    for (std::size_t y = 0; y < grp.size(); ++y) {
      acc += f[y] * g[grp.sub(x, y)];
    }
    out[x] = acc / static_cast<double>(grp.size());
  }
  return out;
}

/// Truncated Fourier series evaluated from the defining sums only.
inline std::vector<cplx> naive_partial_sum(const GroupFunction& f, const IndexSet& B) {
  const Group& g = *f.group();
  std::vector<cplx> coef = naive_fourier(f);
  std::vector<cplx> kept(g.size(), cplx(0.0, 0.0));
  for (std::uint32_t gamma : B.indices()) kept[gamma] = coef[gamma];
  return naive_inverse(g, kept);
}

/// First character (in the given order) translating E into S and -E into R.
inline std::optional<std::uint32_t> witness_search(
    const IndexSet& E, const IndexSet& R, const IndexSet& S,
    const std::vector<std::uint32_t>& order) {
  const Group& g = *E.group();
  for (std::uint32_t gamma : order) {
    bool ok = true;
    for (std::uint32_t e : E.indices()) {
      if (!R.contains(static_cast<std::uint32_t>(g.add(g.negate(gamma), e))) ||
          !S.contains(static_cast<std::uint32_t>(g.add(gamma, e)))) {
        ok = false;
        break;
      }
    }
    if (ok) return gamma;
  }
  return std::nullopt;
}

}  // namespace scf::oracle
