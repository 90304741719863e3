// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "scf/config.hpp"
#include "scf/report.hpp"
#include "scf/rng.hpp"

using namespace scf;

namespace {

int failures = 0;

void criterion(int id, const std::string& desc,
               const std::function<void(std::ostringstream&)>& body) {
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  try {
    body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail << " exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (!ok) ++failures;
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << desc
            << " (" << detail.str() << ", " << secs << " s)\n";
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error("requirement failed: " + what);
}

GroupFunction random_function(const GroupPtr& g, Rng& rng) {
  std::vector<cplx> v(g->size());
  for (auto& x : v) x = cplx(2.0 * rng.real() - 1.0, 2.0 * rng.real() - 1.0);
  return GroupFunction(g, std::move(v));
}

IndexSet interval_set(const GroupPtr& g, std::uint32_t start, std::uint32_t len) {
  std::vector<std::uint32_t> idx(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    idx[i] = static_cast<std::uint32_t>((start + i) % g->size());
  }
  return IndexSet(g, idx);
}

IndexSet blocks_set(const GroupPtr& g,
                    std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> blocks) {
  std::vector<std::uint32_t> idx;
  for (const auto& [start, width] : blocks) {
    for (std::uint32_t i = 0; i < width; ++i) {
      idx.push_back(static_cast<std::uint32_t>((start + i) % g->size()));
    }
  }
  return IndexSet(g, idx);
}

// Criterion 3 configuration (Theorem 1 end to end on Z_256).
CorrectionResult run_z256() {
  auto g = make_group({256});
  Rng rng(2024);
  IndexSet a(g, rng.sample(256, 77));
  auto w = GroupFunction::constant(g, 1.0);
  IndexSet S = blocks_set(g, {{8, 41}, {72, 41}, {136, 41}});
  SufficientPair pair{S.negated(), S, AdmissibleFamily::boxes(g, {4})};
  auto basis = SummationBasis::symmetric_interval(g);
  return run(a, w, pair, basis, Schedules::defaults(0.05, true, 12, 0.15));
}

// Criterion 5 configuration (dyadic run on Z_2^10).
CorrectionResult run_dyadic() {
  RunConfig c;
  c.orders = std::vector<int>(10, 2);
  c.set.kind = "cells";
  c.set.cell_bits = 5;
  c.set.full_cells = 20;
  c.set.half_cells = 8;
  c.pair.kind = "gapped";
  c.pair.blocks = {{128, 128}, {384, 128}, {640, 128}, {896, 128}};
  c.pair.mirror = false;
  c.pair.admissible.kind = "dyadic-blocks";
  c.pair.admissible.max_bits = 5;
  c.basis.kind = "walsh-prefix";
  c.schedules.epsilon = 0.3;
  c.schedules.g_tol = 0.111;
  c.seed = 41;
  ResolvedConfig rc = resolve(c);
  return run(rc.a, rc.w, rc.pair, rc.basis, rc.schedules, rc.options);
}

std::optional<CorrectionResult> g_run3;
std::optional<CorrectionResult> g_run5;

void check_theorem1_run(const CorrectionResult& result, double eps,
                        std::ostringstream& out) {
  Report r = build_report(result);
  require(result.state.level <= 12, "converged within the iteration cap");
  require(r.spectrum_ok && r.spectrum_offenders.empty(), "empty offender set");
  require(r.sym_diff_weighted <= 10.0 * eps, "weighted symmetric difference");
  require(r.conservation_residual <= 1e-10, "conservation at every level");
  out << "iters " << result.state.level << ", sym_diff/eps "
      << r.sym_diff_over_epsilon << ", conservation "
      << r.conservation_residual;
}

void check_partial_sums(const CorrectionResult& result, std::ostringstream& out) {
  const double wmax = result.state.weight.norm_sup();
  const double bound = result.t_final * wmax + 3.0;
  require(bound <= 5.0 + 1e-8, "three-term bound at most 5");
  PartialSumReport ps =
      partial_sum_report(result.f_final, result.state.row[0],
                         result.state.compact_set, result.state.basis, bound);
  require(ps.inside_ok, "sup over members containing K within t*max(w)+3");
  require(ps.splitting_ok, "sup over splitting members within l1 of F f_0");
  out << "inside " << ps.usup_inside << "<=" << bound << " over "
      << ps.inside_members << " members, splitting " << ps.usup_splitting
      << "<=" << ps.l1_bound_f00 << " over " << ps.splitting_members;
}

void check_orthogonality(const CorrectionResult& result, int& pairs,
                         int& bumps) {
  const ConstructionState& st = result.state;
  std::vector<GroupFunction> pieces;
  pieces.push_back(st.row[0]);
  for (std::size_t k = 1; k < st.row.size(); ++k) {
    pieces.push_back(st.row[k] - st.row[k - 1]);
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      cplx ip(0.0, 0.0);
      for (std::size_t x = 0; x < pieces[i].size(); ++x) {
        ip += pieces[i][x] * std::conj(pieces[j][x]);
      }
      ip /= static_cast<double>(pieces[i].size());
      double cap = 1e-9 * pieces[i].norm_l2() * pieces[j].norm_l2() + 1e-15;
      require(std::abs(ip) <= cap, "pairwise orthogonality of increments");
      ++pairs;
    }
  }
  for (const auto& level : st.bump_history) {
    for (const BumpRecord& rec : level) {
      GroupFunction modulated = modulate_real(rec.beta, rec.gamma);
      double lhs = modulated.norm_l2() * modulated.norm_l2();
      double beta_sq = rec.beta.norm_l2() * rec.beta.norm_l2();
      double rhs = rec.order_two ? beta_sq : 0.5 * beta_sq;
      require(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs),
              "modulated energy case formula");
      ++bumps;
    }
  }
}

}  // namespace

int main() {
  criterion(1, "transform core vs defining sums and unitarity", [](auto& out) {
    Rng rng(101);
    std::vector<std::vector<int>> shapes = {
        {4096}, {4095}, {2048}, {729}, {625},
        {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}, {8, 16, 32}, {6, 10, 15},
        {2, 3, 5, 7}, {256}, {121, 27}, {49, 64}, {17}, {3, 3, 3, 3}, {1000}};
    int count = 0;
    double worst_plancherel = 0.0, worst_roundtrip = 0.0;
    for (int i = 0; i < 1000; ++i) {
      auto g = make_group(shapes[i % shapes.size()]);
      auto f = random_function(g, rng);
      auto hat = fourier(f);
      double lhs = 0.0, rhs = 0.0;
      for (auto c : hat.coefficients()) lhs += std::norm(c);
      for (auto v : f.values()) rhs += std::norm(v);
      rhs /= static_cast<double>(g->size());
      double rel = std::abs(lhs - rhs) / std::max(1e-300, rhs);
      worst_plancherel = std::max(worst_plancherel, rel);

      auto back = inverse_fourier(hat);
      double err = 0.0;
      for (std::size_t x = 0; x < g->size(); ++x) {
        err = std::max(err, std::abs(back[x] - f[x]));
      }
      worst_roundtrip = std::max(worst_roundtrip, err / std::max(1.0, f.norm_sup()));
      ++count;
    }
    require(count == 1000, "corpus size");
    require(worst_plancherel <= 1e-10, "Plancherel to 1e-10 relative");
    require(worst_roundtrip <= 1e-10, "round trip to 1e-10 relative");

    double worst_oracle = 0.0;
    for (auto orders : std::vector<std::vector<int>>{
             {2}, {3}, {4}, {5}, {7}, {8}, {9}, {12}, {16}, {25}, {27}, {32},
             {48}, {64}, {2, 2, 2}, {4, 9}, {2, 3, 5}, {3, 3, 7},
             {2, 2, 2, 2, 2, 2}}) {
      auto g = make_group(orders);
      auto f = random_function(g, rng);
      auto fast = fourier(f);
      auto slow = oracle::naive_fourier(f);
      for (std::size_t i = 0; i < g->size(); ++i) {
        worst_oracle = std::max(worst_oracle, std::abs(fast[i] - slow[i]));
      }
    }
    require(worst_oracle <= 1e-12, "defining-sum oracle to 1e-12 absolute");
    out << "1000 functions, plancherel " << worst_plancherel << ", roundtrip "
        << worst_roundtrip << ", oracle " << worst_oracle;
  });

  criterion(2, "kernel and partition properties", [](auto& out) {
    int windows = 0, partitions = 0;
    for (auto orders : std::vector<std::vector<int>>{
             {16}, {256}, {9, 4}, {2, 2, 2, 2, 2, 2}, {243}}) {
      auto g = make_group(orders);
      std::vector<SpectrumWindow> sweep;
      if (g->is_dyadic()) {
        for (std::size_t b = 0; b <= g->rank(); ++b) {
          sweep.push_back(SpectrumWindow::dyadic_prefix(g, static_cast<int>(b)));
        }
      } else {
        for (int s : {0, 1, 2, 5, 1 << 20}) {
          sweep.push_back(SpectrumWindow::interval(
              g, std::vector<int>(g->rank(), s)));
        }
      }
      for (const auto& w : sweep) {
        auto sys = fejer_system(w);
        for (std::size_t x = 0; x < g->size(); ++x) {
          require(sys.phi[x].real() >= 0.0, "Phi nonnegative");
        }
        require(std::abs(sys.phi.integral().real() - 1.0) <= 1e-12,
                "Phi has unit mass");
        require(support(sys.psi) == w.members().sum_with(w.members()),
                "supp psi equals U+U exactly");
        ++windows;
      }
    }
    std::vector<std::pair<GroupPtr, BlockSpec>> blocks;
    {
      auto z9 = make_group({9});
      blocks.push_back({z9, triangle_block(z9, {1})});
      auto z27 = make_group({27});
      blocks.push_back({z27, triangle_block(z27, {4})});
      auto z243 = make_group({243});
      blocks.push_back({z243, triangle_block(z243, {13})});
      auto z99 = make_group({9, 9});
      blocks.push_back({z99, triangle_block(z99, {1, 4})});
      auto z154 = make_group({15, 4});
      blocks.push_back({z154, triangle_block(z154, {2, 0})});
      auto dy = make_group({2, 2, 2, 2, 2, 2, 2, 2});
      blocks.push_back({dy, coset_block(dy, high_bit_subgroup(dy, 3))});
    }
    for (const auto& [g, spec] : blocks) {
      auto part = covering_partition(g, spec);
      for (std::size_t x = 0; x < g->size(); ++x) {
        double sum = 0.0;
        for (const auto& b : part.bumps) sum += b[x].real();
        require(std::abs(sum - 1.0) <= 1e-12, "partition of unity");
      }
      for (const auto& b : part.bumps) {
        require(std::abs(fourier(b).norm_l1() - 1.0) <= 1e-10,
                "transform of each bump has unit l1 norm");
      }
      require(part.support_multiplicity() <= (1 << part.dimension()),
              "support multiplicity at most 2^dim");
      ++partitions;
    }
    out << windows << " windows, " << partitions << " partitions";
  });

  criterion(3, "Theorem 1 end to end on Z_256", [](auto& out) {
    g_run3 = run_z256();
    check_theorem1_run(*g_run3, 0.05, out);
  });

  criterion(4, "partial-sum bounds on the Z_256 run", [](auto& out) {
    require(g_run3.has_value(), "criterion 3 run available");
    check_partial_sums(*g_run3, out);
  });

  criterion(5, "dyadic run on Z_2^10 with Walsh prefixes", [](auto& out) {
    g_run5 = run_dyadic();
    check_theorem1_run(*g_run5, 0.3, out);
    out << "; ";
    check_partial_sums(*g_run5, out);

    // Order-two structure of the dual: the selection's second condition is
    // vacuous, and every recorded character confirms it.
    const GroupPtr& g = g_run5->state.group;
    for (std::size_t gamma = 0; gamma < g->size(); ++gamma) {
      require(g->add(gamma, gamma) == 0, "all dual elements have order two");
    }
    int bumps = 0;
    for (const auto& level : g_run5->state.bump_history) {
      for (const auto& rec : level) {
        require(rec.order_two, "selected characters have order two");
        ++bumps;
      }
    }
    require(bumps > 0, "the run exercised character selection");
    out << "; " << bumps << " modulated bumps";
  });

  criterion(6, "orthogonality and modulated energy", [](auto& out) {
    require(g_run3.has_value() && g_run5.has_value(), "runs available");
    int pairs = 0, bumps = 0;
    check_orthogonality(*g_run3, pairs, bumps);
    check_orthogonality(*g_run5, pairs, bumps);
    require(bumps > 0, "at least one modulated bump checked");
    out << pairs << " increment pairs, " << bumps << " bump energies";
  });

  criterion(7, "two-rail correction pipeline on Z_128", [](auto& out) {
    auto g = make_group({128});
    IndexSet S = blocks_set(g, {{8, 65}, {88, 33}});
    SufficientPair pair{S.negated(), S, AdmissibleFamily::boxes(g, {8})};
    auto basis = SummationBasis::symmetric_interval(g);

    // Real ramp on half the group.
    auto ramp = GroupFunction::zero(g);
    for (std::size_t x = 0; x < 64; ++x) ramp[x] = (x + 1.0) / 64.0;
    auto real_out = correct_bounded(ramp, 0.1, pair, basis);
    require(real_out.f.norm_sup() <= 3.0 + 1e-9, "nonnegative case within 3");
    require(real_out.mismatch_fraction <=
                0.1 + real_out.residual_bound + 1e-12,
            "mismatch within budget plus residuals");

    auto check_spectrum = [&](const BoundedCorrection& bc) {
      IndexSet allowed = pair.R.unite(pair.S);
      for (const auto& rail : bc.rails) {
        allowed = allowed.unite(rail.heavy.state.compact_set)
                      .unite(rail.unit.state.compact_set);
      }
      IndexSet spec = support(fourier(bc.f));
      require(spec.is_subset_of(allowed), "spectrum inside K cup R cup S");
    };
    check_spectrum(real_out);

    // Seeded complex data on the same support.
    Rng rng(555);
    auto h = GroupFunction::zero(g);
    for (std::size_t x = 0; x < 64; ++x) {
      h[x] = cplx(2.0 * rng.real() - 1.0, 2.0 * rng.real() - 1.0) / std::sqrt(2.0);
    }
    auto complex_out = correct_bounded(h, 0.1, pair, basis);
    require(complex_out.f.norm_sup() <= 12.0 + 1e-9, "complex case within 12");
    require(complex_out.mismatch_fraction <=
                0.1 + complex_out.residual_bound + 1e-12,
            "complex mismatch within budget");
    check_spectrum(complex_out);
    out << "real sup " << real_out.f.norm_sup() << ", complex sup "
        << complex_out.f.norm_sup() << ", rails "
        << real_out.rails.size() + complex_out.rails.size();
  });

  criterion(8, "log-law sweep on Z_512", [](auto& out) {
    auto g = make_group({512});
    IndexSet a = interval_set(g, 0, 464);
    auto w = GroupFunction::constant(g, 1.0);
    IndexSet S = blocks_set(g, {{16, 113}, {160, 113}, {304, 113}});
    SufficientPair pair{S.negated(), S, AdmissibleFamily::boxes(g, {16})};
    auto basis = SummationBasis::symmetric_interval(g);

    SweepOptions opts;
    opts.g_tol = 0.3;
    auto sweep = log_law_sweep(a, w, pair, basis, {0.2, 0.1, 0.05, 0.025}, opts);
    for (const auto& row : sweep.rows) {
      require(row.ok, "sweep row converged: " + row.error);
    }
    require(sweep.fit.points == 4, "four points fitted");
    require(sweep.fit.max_ratio <= 2.0 * sweep.fit.min_ratio,
            "ratio within a factor 2 of its minimum");
    require(sweep.fit.pass, "fit verdict");
    out << "ratios [" << sweep.fit.min_ratio << ", " << sweep.fit.max_ratio
        << "], slope " << sweep.fit.slope;
  });

  criterion(9, "sufficiency and splitting-union oracles", [](auto& out) {
    Rng rng(20240809);
    int cases = 0;
    std::vector<std::vector<int>> shapes = {
        {16}, {24}, {32}, {64}, {96}, {128}, {256}, {4, 8}, {3, 5, 7},
        {2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2, 2, 2}, {6, 6}};
    for (int rep = 0; rep < 200; ++rep) {
      auto g = make_group(shapes[rep % shapes.size()]);
      const auto n = static_cast<std::uint32_t>(g->size());
      IndexSet R(g, rng.sample(n, 1 + rng.below(n - 1)));
      IndexSet S(g, rng.sample(n, 1 + rng.below(n - 1)));
      AdmissibleFamily family =
          g->is_dyadic()
              ? AdmissibleFamily::dyadic_blocks(g, 2)
              : AdmissibleFamily::boxes(g, std::vector<int>(g->rank(), 1));
      SufficientPair pair{R, S, family};

      auto fast = is_sufficient(pair, true);
      const auto order = character_search_order(g);
      std::size_t i = 0;
      bool some_failure = false;
      for (const IndexSet& shape : family.shapes()) {
        for (std::uint32_t c : family.centers()) {
          auto slow = oracle::witness_search(shape.shifted(c), R, S, order);
          require(slow == fast.witnesses[i].gamma, "witness agreement");
          if (!slow.has_value()) some_failure = true;
          ++i;
        }
      }
      require(fast.sufficient == !some_failure, "verdict agreement");

      auto basis = g->is_dyadic() ? SummationBasis::walsh_prefix(g)
                                  : SummationBasis::symmetric_interval(g);
      IndexSet E(g, rng.sample(n, 1 + rng.below(8)));
      std::vector<std::uint8_t> expect(n, 0);
      for (std::size_t m = 0; m < basis.member_count(); ++m) {
        IndexSet B = basis.member(m);
        if (splits(B, E)) {
          for (auto k : B.indices()) expect[k] = 1;
        }
      }
      require(basis.splitting_union(E) == IndexSet::from_mask(g, expect),
              "splitting union agreement");
      ++cases;
    }
    require(cases == 200, "case count");
    out << cases << " seeded cases";
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << "\n";
  return failures;
}
