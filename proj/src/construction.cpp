#include "scf/construction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scf/log.hpp"

namespace scf {
namespace {

constexpr double kRangeTol = 1e-9;
constexpr double kConservationTol = 1e-10;
constexpr double kSandwichTol = 1e-9;

Partition::Style default_partition_style(const Group& g) {
  return g.is_dyadic() ? Partition::Style::Coset : Partition::Style::Triangle;
}

SpectrumWindow::Style default_window_style(const Group& g) {
  return g.is_dyadic() ? SpectrumWindow::Style::Subgroup
                       : SpectrumWindow::Style::Interval;
}

void check_conservation(ConstructionState& state) {
  const double scale = std::max(1.0, std::abs(state.target_integral));
  for (const GroupFunction& f : state.row) {
    double res = std::abs(f.integral().real() - state.target_integral);
    state.max_conservation_residual =
        std::max(state.max_conservation_residual, res);
    if (res > kConservationTol * scale) {
      fail(ErrorCode::InvariantViolation,
           "integral drifted from int_a w by " + std::to_string(res));
    }
  }
}

void check_range(const ConstructionState& state) {
  const double t = state.t_at(state.level);
  double bound_scale = std::max(1.0, t * state.weight.norm_sup());
  for (const GroupFunction& f : state.row) {
    for (std::size_t x = 0; x < f.size(); ++x) {
      double v = f[x].real();
      double hi = t * state.weight[x].real();
      if (v < -kRangeTol * bound_scale || v > hi + kRangeTol * bound_scale) {
        fail(ErrorCode::InvariantViolation,
             "row left the strip [0, t w] at index " + std::to_string(x));
      }
    }
  }
}

/// Evaluate the truncation energy test at a given delta.
bool truncation_passes(const GroupFunction& g, double delta, double g_norm) {
  double energy = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) {
    double v = g[x].real();
    if (v >= delta) energy += (v - delta) * (v - delta);
  }
  energy /= static_cast<double>(g.size());
  return std::sqrt(energy) > 0.9 * g_norm;
}

std::vector<std::vector<int>> triangle_chain(const Group& g) {
  // Per factor: odd divisors descending, so the chain moves coarse -> fine.
  std::vector<std::vector<int>> lists(g.rank());
  std::size_t longest = 0;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    for (int d = g.orders()[j]; d >= 1; --d) {
      if (d % 2 == 1 && g.orders()[j] % d == 0) lists[j].push_back((d - 1) / 2);
    }
    longest = std::max(longest, lists[j].size());
  }
  std::vector<std::vector<int>> chain;
  for (std::size_t c = 0; c < longest; ++c) {
    std::vector<int> hw(g.rank());
    for (std::size_t j = 0; j < g.rank(); ++j) {
      hw[j] = lists[j][std::min(c, lists[j].size() - 1)];
    }
    chain.push_back(std::move(hw));
  }
  return chain;
}

}  // namespace

GroupFunction auxiliary(const GroupFunction& f, double t, const GroupFunction& w) {
  require_same_group(f, w);
  const double scale = std::max(1.0, t * w.norm_sup());
  GroupFunction g = GroupFunction::zero(f.group());
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double cap = t * w[x].real();
    double v = f[x].real();
    if (v < -kRangeTol * scale || v > cap + kRangeTol * scale) {
      fail(ErrorCode::RangeViolation,
           "auxiliary input leaves [0, t w] by " +
               std::to_string(std::max(-v, v - cap)));
    }
    v = std::clamp(v, 0.0, cap);
    g[x] = cplx(v * (1.0 - v / cap), 0.0);
  }
  return g;
}

Truncation threshold_truncate(const GroupFunction& g) {
  const double g_norm = g.norm_l2();
  if (g_norm == 0.0) {
    fail(ErrorCode::ZeroFunction, "cannot truncate the zero function");
  }
  double top = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) top = std::max(top, g[x].real());

  double lo = 0.0, hi = top;
  while (hi - lo > 1e-9 * top) {
    double mid = 0.5 * (lo + hi);
    if (truncation_passes(g, mid, g_norm)) lo = mid; else hi = mid;
  }
  double delta = lo > 0.0 ? lo : top * 1e-12;
  if (!truncation_passes(g, delta, g_norm)) delta = lo;

  Truncation out;
  out.delta = delta;
  out.truncated = GroupFunction::zero(g.group());
  for (std::size_t x = 0; x < g.size(); ++x) {
    double v = g[x].real();
    out.truncated[x] = cplx(v >= delta ? v - delta : 0.0, 0.0);
  }
  return out;
}

BumpPlan build_h(const GroupFunction& g_trunc, const GroupFunction& g_orig,
                 Partition::Style style) {
  const GroupPtr& group = g_trunc.group();
  const double goal = 0.5 * g_orig.norm_l2() * g_orig.norm_l2();

  std::vector<BlockSpec> chain;
  if (style == Partition::Style::Coset) {
    if (!group->is_dyadic()) {
      fail(ErrorCode::ConfigError, "coset partitions require a dyadic group");
    }
    for (int m = 0; m <= static_cast<int>(group->rank()); ++m) {
      chain.push_back(coset_block(group, high_bit_subgroup(group, m)));
    }
  } else {
    for (auto& hw : triangle_chain(*group)) {
      chain.push_back(triangle_block(group, hw));
    }
  }

  for (const BlockSpec& spec : chain) {
    Partition part = covering_partition(group, spec);
    BumpPlan plan;
    plan.coefficients.resize(part.centers.size());
    plan.h = GroupFunction::zero(group);
    for (std::size_t i = 0; i < part.centers.size(); ++i) {
      double c = g_trunc[part.centers[i]].real();
      plan.coefficients[i] = c;
      if (c <= 0.0) continue;
      ++plan.active;
      double alpha_l2 = part.bumps[i].norm_l2();
      plan.coeff_energy_sq += c * c * alpha_l2 * alpha_l2;
      plan.h += c * GroupFunction(part.bumps[i]);
    }

    bool below = true;
    for (std::size_t x = 0; x < plan.h.size(); ++x) {
      if (plan.h[x].real() > g_orig[x].real() + 1e-10) {
        below = false;
        break;
      }
    }
    double h_l2 = plan.h.norm_l2();
    if (below && h_l2 * h_l2 >= goal - 1e-15) {
      plan.partition = std::move(part);
      return plan;
    }
  }
  fail(ErrorCode::PartitionExhausted,
       "no admissible block satisfies the pointwise and energy conditions");
}

BumpRecord select_character(ConstructionState& state, std::uint32_t center,
                            double coefficient, const GroupFunction& beta,
                            const IndexSet& beta_spectrum) {
  const GroupPtr& group = state.group;
  const bool dyadic = group->is_dyadic();

  IndexSet beta_sq_spectrum;
  if (!dyadic) {
    beta_sq_spectrum = support(fourier(beta.pointwise_product(beta)));
  }

  for (std::uint32_t gamma : state.search_order) {
    const std::uint32_t neg = static_cast<std::uint32_t>(group->negate(gamma));
    bool ok = true;
    for (std::uint32_t omega : beta_spectrum.indices()) {
      std::size_t up = group->add(gamma, omega);
      std::size_t dn = group->add(neg, omega);
      if (!state.rs_mask[up] || !state.rs_mask[dn] || state.forbidden[up] ||
          state.forbidden[dn]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    const bool order_two = (group->add(gamma, gamma) == 0);
    if (!order_two) {
      std::uint32_t twice = static_cast<std::uint32_t>(group->add(gamma, gamma));
      std::uint32_t ntwice = static_cast<std::uint32_t>(group->negate(twice));
      if (beta_sq_spectrum.contains(twice) || beta_sq_spectrum.contains(ntwice)) {
        continue;
      }
    }

    BumpRecord rec;
    rec.center = center;
    rec.coefficient = coefficient;
    rec.gamma = gamma;
    rec.order_two = order_two;
    rec.beta = beta;
    rec.spectrum = beta_spectrum.shifted(gamma).unite(
        beta_spectrum.shifted(group->negate(gamma)));
    for (std::uint32_t k : rec.spectrum.indices()) state.forbidden[k] = 1;
    state.basis.mark_splitting_union(rec.spectrum, state.forbidden);
    return rec;
  }
  fail(ErrorCode::SpectrumExhausted,
       "no admissible character for the bump at center " +
           std::to_string(center));
}

ConstructionState init(const IndexSet& a, const GroupFunction& w,
                       const SufficientPair& pair, const SummationBasis& basis,
                       const Schedules& schedules, const RunOptions& options) {
  if (a.empty_set()) {
    fail(ErrorCode::EmptySet, "the set to correct must have positive measure");
  }
  const GroupPtr group = a.group();
  if (w.max_imag() > 1e-10) fail(ErrorCode::ConfigError, "weight must be real");
  double wmin = 1e300, wmax = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    wmin = std::min(wmin, w[x].real());
    wmax = std::max(wmax, w[x].real());
  }
  if (!(wmin > 0.0)) {
    fail(ErrorCode::ConfigError, "weight must be bounded away from zero");
  }
  if (wmax > options.max_weight + 1e-12) {
    fail(ErrorCode::ConfigError, "weight exceeds its admissible bound");
  }

  ConstructionState state;
  state.group = group;
  state.domain = a;
  state.weight = w;
  state.pair = pair;
  state.basis = basis;
  state.schedules = schedules;
  state.options = options;
  state.unit_weight = (wmax - wmin < 1e-14 && std::abs(wmax - 1.0) < 1e-14);
  schedules.validate(state.unit_weight);

  if (options.check_sufficiency && !is_sufficient(pair).sufficient) {
    fail(ErrorCode::PairNotSufficient,
         "the pair is not sufficient for its admissible family");
  }
  if (options.check_coordination && !is_coordinated(basis, pair).coordinated) {
    fail(ErrorCode::NotCoordinated,
         "the summation basis is not coordinated with the pair");
  }

  state.target = indicator(a).pointwise_product(w);
  state.target_integral = state.target.integral().real();

  WindowConstraints c;
  c.style = options.window_style.value_or(default_window_style(*group));
  c.reproduce.push_back(state.target);
  c.rho = schedules.rho[0];
  if (!state.unit_weight) {
    c.weight = w;
    c.weight_ratio = schedules.t[0];
  }
  SpectrumWindow u0 = select_window(group, c);
  FejerSystem sys = fejer_system(u0);

  state.windows.push_back(u0);
  state.row.push_back(sys.apply(state.target).real_part());
  state.compact_set = u0.doubled();
  state.initial_spectrum = support(fourier(state.row[0]));
  state.rs_mask.assign(group->size(), 0);
  for (std::uint32_t k : pair.R.indices()) state.rs_mask[k] = 1;
  for (std::uint32_t k : pair.S.indices()) state.rs_mask[k] = 1;
  state.forbidden.assign(group->size(), 0);
  for (std::uint32_t k : state.initial_spectrum.indices()) state.forbidden[k] = 1;
  basis.mark_splitting_union(state.initial_spectrum, state.forbidden);
  state.search_order = character_search_order(group);

  check_conservation(state);
  check_range(state);
  log_info("init: window size " + std::to_string(u0.size()) + ", ||f0 - chi_a w||_1 = " +
           std::to_string((state.row[0] - state.target).norm_l1()));
  return state;
}

void step(ConstructionState& state) {
  const int n = state.level + 1;
  if (n > state.schedules.n_max) {
    fail(ErrorCode::NotConverged, "iteration cap reached", state.schedules.n_max);
  }
  const GroupPtr& group = state.group;
  const double t_prev = state.t_at(n - 1);
  const double t_cur = state.t_at(n);

  GroupFunction g = auxiliary(state.latest(), t_prev, state.weight);
  const double g_norm = g.norm_l2();
  const bool trivial = g_norm <= 1e-13 * std::max(1.0, state.weight.norm_sup());

  std::optional<Truncation> trunc;
  std::optional<BumpPlan> plan;
  if (!trivial) {
    trunc = threshold_truncate(g);
    plan = build_h(trunc->truncated, g,
                   state.options.partition_style.value_or(
                       default_partition_style(*group)));
  }

  WindowConstraints c;
  c.style = state.options.window_style.value_or(default_window_style(*group));
  c.previous = state.windows.back();
  c.rho = state.schedules.rho[n];
  for (const GroupFunction& f : state.row) c.reproduce.push_back(f);
  if (!state.unit_weight) {
    c.weight = state.weight;
    c.weight_ratio = t_cur / t_prev;
  }
  if (plan) {
    for (std::size_t i = 0; i < plan->partition.centers.size(); ++i) {
      if (plan->coefficients[i] > 0.0) {
        c.bumps.push_back(plan->partition.bumps[i]);
      }
    }
  }
  SpectrumWindow window = select_window(group, c);

  auto attempt = [&](const SpectrumWindow& u) {
    FejerSystem sys = fejer_system(u);
    std::vector<GroupFunction> next_row;
    next_row.reserve(state.row.size() + 1);
    for (const GroupFunction& f : state.row) {
      next_row.push_back(sys.apply(f).real_part());
    }

    std::vector<BumpRecord> records;
    GroupFunction wave = GroupFunction::zero(group);
    IndexSet placed = IndexSet::empty(group);
    if (plan) {
      for (std::size_t i = 0; i < plan->partition.centers.size(); ++i) {
        const double coeff = plan->coefficients[i];
        if (coeff <= 0.0) continue;
        GroupFunction beta = sys.apply(plan->partition.bumps[i]).real_part();
        IndexSet beta_spectrum = support(fourier(beta));
        BumpRecord rec = select_character(state, plan->partition.centers[i],
                                          coeff, beta, beta_spectrum);
        wave += coeff * modulate_real(beta, rec.gamma);
        placed = placed.unite(rec.spectrum);
        records.push_back(std::move(rec));
      }
    }

    GroupFunction f_new = next_row.back() + wave;

    // Sandwich: Phi*(f - g) <= f_new <= Phi*(f + g) pointwise.
    GroupFunction lower = sys.apply(state.latest() - g);
    GroupFunction upper = sys.apply(state.latest() + g);
    for (std::size_t x = 0; x < f_new.size(); ++x) {
      if (f_new[x].real() < lower[x].real() - kSandwichTol ||
          f_new[x].real() > upper[x].real() + kSandwichTol) {
        fail(ErrorCode::InvariantViolation, "sandwich inequality failed");
      }
    }

    next_row.push_back(std::move(f_new));
    state.row = std::move(next_row);
    state.windows.push_back(u);
    state.increment_spectra.push_back(placed);
    state.bump_history.push_back(std::move(records));
  };

  StepTrace tr;
  tr.level = n;
  tr.g_norm = g_norm;
  if (trunc) tr.delta = trunc->delta;
  if (plan) {
    tr.active_bumps = plan->active;
    tr.coeff_energy_sq = plan->coeff_energy_sq;
    tr.h_energy_sq = plan->h.norm_l2() * plan->h.norm_l2();
    tr.partition_dimension = plan->partition.dimension();
  }

  std::vector<std::uint8_t> forbidden_snapshot = state.forbidden;
  try {
    attempt(window);
    tr.window_size = window.size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SpectrumExhausted) throw;
    // Retry once with the window re-selected without the bump energy
    // condition: a smaller window shrinks every beta spectrum.
    state.forbidden = std::move(forbidden_snapshot);
    WindowConstraints relaxed = c;
    relaxed.bumps.clear();
    SpectrumWindow smaller = select_window(group, relaxed);
    if (smaller.size() >= window.size()) throw;
    log_info("step " + std::to_string(n) + ": retrying with window " +
             std::to_string(smaller.size()) + " after spectrum exhaustion");
    attempt(smaller);
    tr.window_size = smaller.size();
    tr.window_retried = true;
  }

  state.level = n;
  check_conservation(state);
  check_range(state);
  state.trace.push_back(tr);

  std::ostringstream msg;
  msg << "step " << n << ": window " << tr.window_size << ", ||g||_2 = "
      << tr.g_norm << ", bumps " << tr.active_bumps;
  log_info(msg.str());
}

CorrectionResult run(const IndexSet& a, const GroupFunction& w,
                     const SufficientPair& pair, const SummationBasis& basis,
                     const Schedules& schedules, const RunOptions& options) {
  ConstructionState state = init(a, w, pair, basis, schedules, options);
  const double stop = schedules.g_tol * state.target.norm_l2();

  double residual = auxiliary(state.latest(), state.t_at(state.level), w).norm_l2();
  while (residual > stop && state.level < schedules.n_max) {
    step(state);
    residual = auxiliary(state.latest(), state.t_at(state.level), w).norm_l2();
  }
  if (residual > stop) {
    fail(ErrorCode::NotConverged,
         "auxiliary residual " + std::to_string(residual) +
             " above threshold " + std::to_string(stop) + " at the iteration cap",
         residual);
  }

  CorrectionResult out;
  out.t_final = state.t_at(state.level);
  out.f_final = state.latest();
  out.g_residual = residual;
  out.g_residual_relative =
      state.target.norm_l2() > 0.0 ? residual / state.target.norm_l2() : 0.0;

  std::vector<std::uint32_t> b_idx;
  for (std::size_t x = 0; x < out.f_final.size(); ++x) {
    if (out.f_final[x].real() > 0.5 * out.t_final * w[x].real()) {
      b_idx.push_back(static_cast<std::uint32_t>(x));
    }
  }
  out.b = IndexSet(state.group, std::move(b_idx));
  out.state = std::move(state);
  return out;
}

BoundedCorrection correct_bounded(const GroupFunction& h, double eps,
                                  const SufficientPair& pair,
                                  const SummationBasis& basis,
                                  const RunOptions& options) {
  if (h.norm_sup() > 1.0 + 1e-12) {
    fail(ErrorCode::RangeViolation, "correct_bounded needs ||h||_inf <= 1");
  }
  const GroupPtr& group = h.group();

  BoundedCorrection out;
  out.f = GroupFunction::zero(group);

  const cplx unit_signs[4] = {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
  for (int part = 0; part < 4; ++part) {
    GroupFunction p = GroupFunction::zero(group);
    double sup = 0.0;
    for (std::size_t x = 0; x < h.size(); ++x) {
      double v = (part < 2) ? h[x].real() : h[x].imag();
      if (part % 2 == 1) v = -v;
      if (v > 0.0) {
        p[x] = cplx(v, 0.0);
        sup = std::max(sup, v);
      }
    }
    if (sup <= 1e-12) continue;

    std::vector<std::uint32_t> a_idx;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x].real() > 0.0) a_idx.push_back(static_cast<std::uint32_t>(x));
    }
    IndexSet a(group, a_idx);

    // Rails: w1 = v + 1 (at most 2) and w2 = 1, each with budget eps/4.
    GroupFunction w1 = p + GroupFunction::constant(group, 1.0);
    GroupFunction w2 = GroupFunction::constant(group, 1.0);
    RunOptions rail_options = options;
    rail_options.max_weight = 2.0;

    RailOutcome rail;
    rail.part = part;
    rail.heavy = run(a, w1, pair, basis,
                     Schedules::defaults(eps / 4.0, /*unit_weight=*/false),
                     rail_options);
    rail.unit = run(a, w2, pair, basis,
                    Schedules::defaults(eps / 4.0, /*unit_weight=*/true),
                    rail_options);

    GroupFunction piece = indicator(rail.heavy.b).pointwise_product(w1) -
                          indicator(rail.unit.b);
    rail.part_sup = piece.norm_sup();
    out.residual_bound += rail.heavy.g_residual_relative +
                          rail.unit.g_residual_relative;
    out.f += GroupFunction(group, [&] {
      std::vector<cplx> v(piece.size());
      for (std::size_t x = 0; x < piece.size(); ++x) {
        v[x] = unit_signs[part] * piece[x].real();
      }
      return v;
    }());
    out.rails.push_back(std::move(rail));
  }

  std::size_t mismatched = 0;
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (std::abs(h[x] - out.f[x]) > 1e-9) ++mismatched;
  }
  out.mismatch_fraction =
      static_cast<double>(mismatched) / static_cast<double>(h.size());
  return out;
}

}  // namespace scf
