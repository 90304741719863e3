#include "scf/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>

#include "json.hpp"
#include "scf/log.hpp"

namespace scf {

using ordered_json = nlohmann::ordered_json;

double sym_diff_weighted(const IndexSet& a, const IndexSet& b,
                         const GroupFunction& w) {
  if (!a.group()->same_as(*b.group()) || !a.group()->same_as(*w.group())) {
    fail(ErrorCode::GroupMismatch, "sym_diff_weighted needs one common group");
  }
  double sum = 0.0;
  IndexSet only_a = a.difference(b);
  IndexSet only_b = b.difference(a);
  for (std::uint32_t x : only_a.indices()) sum += w[x].real() * w[x].real();
  for (std::uint32_t x : only_b.indices()) sum += w[x].real() * w[x].real();
  return sum / static_cast<double>(w.size());
}

SpectrumCheck spectrum_within(const GroupFunction& f, const IndexSet& K,
                              const IndexSet& R, const IndexSet& S) {
  IndexSet spec = support(fourier(f));
  SpectrumCheck out;
  out.offenders = spec.difference(K).difference(R).difference(S);
  out.ok = out.offenders.empty_set();
  return out;
}

PartialSumReport partial_sum_report(const GroupFunction& f_final,
                                    const GroupFunction& f0_column,
                                    const IndexSet& K,
                                    const SummationBasis& basis,
                                    double inside_bound) {
  SpectralFunction f0_hat = fourier(f0_column);
  IndexSet f0_spec = support(f0_hat);
  SpectralFunction hat = fourier(f_final);

  PartialSumReport out;
  out.l1_bound_f00 = f0_hat.norm_l1();
  out.inside_bound = inside_bound;

  for (std::size_t i = 0; i < basis.member_count(); ++i) {
    IndexSet B = basis.member(i);
    const bool inside = K.is_subset_of(B);
    const bool splitting = splits(B, f0_spec);
    if (!inside && !splitting) continue;

    std::vector<cplx> kept(hat.size(), cplx(0.0, 0.0));
    for (std::uint32_t gamma : B.indices()) kept[gamma] = hat[gamma];
    double sup = inverse_fourier(SpectralFunction(f_final.group(), std::move(kept)))
                     .norm_sup();
    if (inside) {
      ++out.inside_members;
      out.usup_inside = std::max(out.usup_inside, sup);
    }
    if (splitting) {
      ++out.splitting_members;
      out.usup_splitting = std::max(out.usup_splitting, sup);
    }
  }
  out.inside_ok = out.usup_inside <= inside_bound + 1e-8;
  out.splitting_ok = out.usup_splitting <= out.l1_bound_f00 + 1e-8;
  return out;
}

Report build_report(const CorrectionResult& result) {
  const ConstructionState& state = result.state;
  Report r;
  r.epsilon = state.schedules.epsilon;
  r.iterations = state.level;
  r.t_final = result.t_final;
  r.set_size = result.b.size();

  r.sym_diff_weighted = sym_diff_weighted(state.domain, result.b, state.weight);
  r.sym_diff_over_epsilon = r.sym_diff_weighted / state.schedules.epsilon;

  SpectrumCheck spec = spectrum_within(result.f_final, state.compact_set,
                                       state.pair.R, state.pair.S);
  r.spectrum_ok = spec.ok;
  r.spectrum_offenders = spec.offenders.indices();

  const double wmax = state.weight.norm_sup();
  PartialSumReport ps =
      partial_sum_report(result.f_final, state.row[0], state.compact_set,
                         state.basis, result.t_final * wmax + 3.0);
  r.usup_inside = ps.usup_inside;
  r.usup_splitting = ps.usup_splitting;
  r.l1_bound_f00 = ps.l1_bound_f00;
  r.usup_inside_bound = ps.inside_bound;
  r.usup_inside_ok = ps.inside_ok;
  r.usup_splitting_ok = ps.splitting_ok;

  // Conservation recomputed from the surviving row and merged with the
  // per-level maxima recorded while stepping.
  double res = state.max_conservation_residual;
  for (const GroupFunction& f : state.row) {
    res = std::max(res, std::abs(f.integral().real() - state.target_integral));
  }
  r.conservation_residual = res;

  double b_weight = 0.0;
  for (std::uint32_t x : result.b.indices()) b_weight += state.weight[x].real();
  b_weight /= static_cast<double>(state.weight.size());
  r.extraction_residual =
      std::abs(result.t_final * b_weight - state.target_integral);

  r.g_residual = result.g_residual;
  r.g_residual_relative = result.g_residual_relative;
  if (state.unit_weight) {
    r.cardinality_delta = static_cast<long long>(result.b.size()) -
                          static_cast<long long>(state.domain.size());
  }
  return r;
}

std::string report_to_json(const Report& r) {
  ordered_json j;
  j["epsilon"] = r.epsilon;
  j["iterations"] = r.iterations;
  j["sym_diff_weighted"] = r.sym_diff_weighted;
  j["sym_diff_over_epsilon"] = r.sym_diff_over_epsilon;
  j["spectrum_ok"] = r.spectrum_ok;
  j["spectrum_offenders"] = r.spectrum_offenders;
  j["usup_inside"] = r.usup_inside;
  j["usup_splitting"] = r.usup_splitting;
  j["l1_bound_f00"] = r.l1_bound_f00;
  j["usup_inside_bound"] = r.usup_inside_bound;
  j["usup_inside_ok"] = r.usup_inside_ok;
  j["usup_splitting_ok"] = r.usup_splitting_ok;
  j["conservation_residual"] = r.conservation_residual;
  j["extraction_residual"] = r.extraction_residual;
  j["g_residual"] = r.g_residual;
  j["g_residual_relative"] = r.g_residual_relative;
  j["t_final"] = r.t_final;
  if (r.cardinality_delta) {
    j["cardinality_delta"] = *r.cardinality_delta;
  } else {
    j["cardinality_delta"] = nullptr;
  }
  j["set_size"] = r.set_size;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Report r;
  r.epsilon = j.at("epsilon").get<double>();
  r.iterations = j.at("iterations").get<int>();
  r.sym_diff_weighted = j.at("sym_diff_weighted").get<double>();
  r.sym_diff_over_epsilon = j.at("sym_diff_over_epsilon").get<double>();
  r.spectrum_ok = j.at("spectrum_ok").get<bool>();
  r.spectrum_offenders =
      j.at("spectrum_offenders").get<std::vector<std::uint32_t>>();
  r.usup_inside = j.at("usup_inside").get<double>();
  r.usup_splitting = j.at("usup_splitting").get<double>();
  r.l1_bound_f00 = j.at("l1_bound_f00").get<double>();
  r.usup_inside_bound = j.at("usup_inside_bound").get<double>();
  r.usup_inside_ok = j.at("usup_inside_ok").get<bool>();
  r.usup_splitting_ok = j.at("usup_splitting_ok").get<bool>();
  r.conservation_residual = j.at("conservation_residual").get<double>();
  r.extraction_residual = j.at("extraction_residual").get<double>();
  r.g_residual = j.at("g_residual").get<double>();
  r.g_residual_relative = j.at("g_residual_relative").get<double>();
  r.t_final = j.at("t_final").get<double>();
  if (!j.at("cardinality_delta").is_null()) {
    r.cardinality_delta = j.at("cardinality_delta").get<long long>();
  }
  r.set_size = j.at("set_size").get<std::size_t>();
  return r;
}

namespace {

SweepRow sweep_one(const IndexSet& a, const GroupFunction& w,
                   const SufficientPair& pair, const SummationBasis& basis,
                   double eps, const SweepOptions& options, bool unit_weight,
                   double log_term) {
  SweepRow row;
  row.epsilon = eps;
  row.log_term = log_term;
  const auto start = std::chrono::steady_clock::now();
  try {
    Schedules sched =
        Schedules::defaults(eps, unit_weight, options.n_max, options.g_tol);
    CorrectionResult result =
        run(a, w, pair, basis, sched, options.run_options);
    row.u_norm = u_norm(result.f_final, basis).value;
    row.ratio = row.u_norm / log_term;
    row.iterations = result.state.level;
    row.ok = true;
  } catch (const Error& e) {
    row.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return row;
}

}  // namespace

SweepResult log_law_sweep(const IndexSet& a, const GroupFunction& w,
                          const SufficientPair& pair, const SummationBasis& basis,
                          const std::vector<double>& eps_list,
                          const SweepOptions& options) {
  if (eps_list.empty()) {
    fail(ErrorCode::ConfigError, "sweep needs at least one epsilon");
  }
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) {
      fail(ErrorCode::ConfigError, "sweep epsilons must decrease strictly");
    }
  }

  GroupFunction target = indicator(a).pointwise_product(w);
  const double mass = target.integral().real();
  bool unit_weight = true;
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (std::abs(w[x].real() - 1.0) > 1e-14) { unit_weight = false; break; }
  }

  SweepResult out;
  out.rows.resize(eps_list.size());
  auto work = [&](std::size_t i) {
    return sweep_one(a, w, pair, basis, eps_list[i], options, unit_weight,
                     std::log(2.0 + mass / eps_list[i]));
  };
  if (options.threads > 1) {
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(eps_list.size());
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      futures.push_back(std::async(std::launch::async, work, i));
    }
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      out.rows[i] = futures[i].get();
    }
  } else {
    for (std::size_t i = 0; i < eps_list.size(); ++i) out.rows[i] = work(i);
  }

  std::vector<const SweepRow*> good;
  for (const SweepRow& row : out.rows) {
    if (row.ok) good.push_back(&row);
  }
  SweepFit& fit = out.fit;
  fit.points = static_cast<int>(good.size());
  if (good.empty()) {
    fit.pass = false;
    fit.note = "no successful rows";
    return out;
  }
  fit.min_ratio = 1e300;
  for (const SweepRow* row : good) {
    fit.min_ratio = std::min(fit.min_ratio, row->ratio);
    fit.max_ratio = std::max(fit.max_ratio, row->ratio);
  }
  if (good.size() < 4) {
    fit.pass = true;
    fit.note = "insufficient points";
    return out;
  }
  double mx = 0.0, my = 0.0;
  for (const SweepRow* row : good) {
    mx += row->log_term;
    my += row->u_norm;
  }
  mx /= fit.points;
  my /= fit.points;
  double cov = 0.0, var = 0.0;
  for (const SweepRow* row : good) {
    cov += (row->log_term - mx) * (row->u_norm - my);
    var += (row->log_term - mx) * (row->log_term - mx);
  }
  fit.slope = var > 0.0 ? cov / var : 0.0;
  fit.pass = fit.slope <= 2.0 * fit.min_ratio;
  if (!fit.pass) fit.note = "slope exceeds twice the smallest ratio";
  return out;
}

}  // namespace scf
