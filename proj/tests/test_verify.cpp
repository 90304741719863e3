#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "scf/report.hpp"
#include "scf/rng.hpp"

using namespace scf;

namespace {

// Shared small dyadic run used across report checks (8 full, 4 half cells).
CorrectionResult small_dyadic_run() {
  auto g = make_group({2, 2, 2, 2, 2, 2, 2, 2});
  std::vector<std::uint32_t> idx;
  for (std::uint32_t cell = 0; cell < 16; ++cell) {
    for (std::uint32_t hi = 0; hi < 16; ++hi) {
      std::uint32_t x = cell + hi * 16;
      if (cell < 8) idx.push_back(x);
      else if (cell < 12 && hi < 8) idx.push_back(x);
    }
  }
  IndexSet a(g, idx);
  auto w = GroupFunction::constant(g, 1.0);
  std::vector<std::uint32_t> s_idx;
  for (std::uint32_t i = 32; i < 128; ++i) s_idx.push_back(i);
  for (std::uint32_t i = 160; i < 256; ++i) s_idx.push_back(i);
  IndexSet S(g, s_idx);
  SufficientPair pair{S, S, AdmissibleFamily::dyadic_blocks(g, 4)};
  auto basis = SummationBasis::walsh_prefix(g);
  return run(a, w, pair, basis, Schedules::defaults(0.3, true, 12, 0.12));
}

}  // namespace

TEST_CASE("sym_diff_weighted") {
  auto g = make_group({16});
  auto w = GroupFunction::constant(g, 1.0);
  IndexSet a(g, {0, 1, 2, 3});
  CHECK(sym_diff_weighted(a, a, w) == 0.0);

  IndexSet b(g, {8, 9});
  CHECK(sym_diff_weighted(a, b, w) == doctest::Approx(6.0 / 16.0));

  // Weighted: only the differing points contribute w^2.
  auto w2 = GroupFunction::constant(g, 0.5);
  CHECK(sym_diff_weighted(a, IndexSet(g, {0, 1, 2}), w2) ==
        doctest::Approx(0.25 / 16.0));
}

TEST_CASE("spectrum_within") {
  auto g = make_group({32});
  auto zero = GroupFunction::zero(g);
  IndexSet K(g, {0, 1, 31});
  auto ok = spectrum_within(zero, K, IndexSet::empty(g), IndexSet::empty(g));
  CHECK(ok.ok);
  CHECK(ok.offenders.empty_set());

  auto chi = character_function(g, 5);
  auto bad = spectrum_within(chi, K, IndexSet::empty(g), IndexSet::empty(g));
  CHECK_FALSE(bad.ok);
  CHECK(bad.offenders.indices() == std::vector<std::uint32_t>{5});

  auto good = spectrum_within(chi, K, IndexSet(g, {5}), IndexSet::empty(g));
  CHECK(good.ok);
}

TEST_CASE("partial_sum_report") {
  SUBCASE("zero-step run: everything reduces to the smoothed function") {
    auto g = make_group({64});
    std::vector<std::uint32_t> s_idx;
    for (std::uint32_t i = 12; i <= 52; ++i) s_idx.push_back(i);
    IndexSet S(g, s_idx);
    SufficientPair pair{S.negated(), S, AdmissibleFamily::boxes(g, {4})};
    auto basis = SummationBasis::symmetric_interval(g);
    IndexSet a(g, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15,
                   16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31});
    auto w = GroupFunction::constant(g, 1.0);
    auto result = run(a, w, pair, basis, Schedules::defaults(0.4, true, 12, 0.3));
    REQUIRE(result.state.level == 0);

    auto ps = partial_sum_report(result.f_final, result.state.row[0],
                                 result.state.compact_set, basis,
                                 result.t_final + 3.0);
    // Members containing K reproduce f exactly, so the inside sup is the
    // plain sup norm, far below the three-term bound.
    CHECK(ps.usup_inside >= result.f_final.norm_sup() - 1e-12);
    CHECK(ps.inside_ok);
    CHECK(ps.splitting_ok);
    CHECK(ps.usup_splitting <= ps.l1_bound_f00 + 1e-8);
    CHECK(ps.inside_members > 0);
  }

  SUBCASE("single modulated bump obeys the l1 bound over every member") {
    auto g = make_group({64});
    auto alpha = covering_partition(g, triangle_block(g, {0})).bumps[0];
    auto U = SpectrumWindow::interval(g, {3});
    auto beta = fejer_system(U).apply(alpha).real_part();
    double c = 0.7;
    auto bump = c * modulate_real(beta, 20);
    auto basis = SummationBasis::symmetric_interval(g);
    auto hat = fourier(bump);
    for (std::size_t i = 0; i < basis.member_count(); ++i) {
      auto p = partial_sum(bump, basis.member(i));
      CHECK(p.norm_sup() <= c * fourier(alpha).norm_l1() + 1e-9);
    }
    CHECK(hat.norm_l1() <= c + 1e-9);
  }

  SUBCASE("iterated dyadic run satisfies both partial-sum bounds") {
    auto result = small_dyadic_run();
    REQUIRE(result.state.level == 2);
    auto ps = partial_sum_report(result.f_final, result.state.row[0],
                                 result.state.compact_set, result.state.basis,
                                 result.t_final * 1.0 + 3.0);
    CHECK(ps.inside_ok);
    CHECK(ps.splitting_ok);
    CHECK(ps.inside_members > 0);
    CHECK(ps.splitting_members > 0);

    // Exhaustive cross-check of the classified maxima over all members.
    auto f0_spec = support(fourier(result.state.row[0]));
    double inside = 0.0, splitting = 0.0;
    const auto& basis = result.state.basis;
    for (std::size_t i = 0; i < basis.member_count(); ++i) {
      IndexSet B = basis.member(i);
      double sup = partial_sum(result.f_final, B).norm_sup();
      if (result.state.compact_set.is_subset_of(B)) inside = std::max(inside, sup);
      if (splits(B, f0_spec)) splitting = std::max(splitting, sup);
    }
    CHECK(inside == doctest::Approx(ps.usup_inside).epsilon(1e-10));
    CHECK(splitting == doctest::Approx(ps.usup_splitting).epsilon(1e-10));
  }
}

TEST_CASE("build_report recomputes everything from raw outputs") {
  auto result = small_dyadic_run();
  Report r = build_report(result);

  CHECK(r.iterations == 2);
  CHECK(r.spectrum_ok);
  CHECK(r.spectrum_offenders.empty());
  CHECK(r.conservation_residual <= 1e-10);
  CHECK(r.sym_diff_weighted <= 10 * 0.3);
  CHECK(r.sym_diff_over_epsilon == doctest::Approx(r.sym_diff_weighted / 0.3));
  CHECK(r.usup_inside_ok);
  CHECK(r.usup_splitting_ok);
  CHECK(r.g_residual_relative <= 0.12);
  REQUIRE(r.cardinality_delta.has_value());
  CHECK(std::abs(*r.cardinality_delta) <= 64);
  CHECK(r.set_size == result.b.size());

  // JSON round trip is lossless for every reported field.
  Report back = report_from_json(report_to_json(r));
  CHECK(back.sym_diff_weighted == r.sym_diff_weighted);
  CHECK(back.usup_inside == r.usup_inside);
  CHECK(back.spectrum_ok == r.spectrum_ok);
  CHECK(back.cardinality_delta == r.cardinality_delta);
  CHECK(back.iterations == r.iterations);
}

TEST_CASE("log_law_sweep") {
  auto g = make_group({64});
  std::vector<std::uint32_t> s_idx;
  for (std::uint32_t i = 12; i <= 52; ++i) s_idx.push_back(i);
  IndexSet S(g, s_idx);
  SufficientPair pair{S.negated(), S, AdmissibleFamily::boxes(g, {4})};
  auto basis = SummationBasis::symmetric_interval(g);
  std::vector<std::uint32_t> half(32);
  for (std::uint32_t i = 0; i < 32; ++i) half[i] = i;
  IndexSet a(g, half);
  auto w = GroupFunction::constant(g, 1.0);

  SUBCASE("single epsilon: one finite row, fit marked insufficient") {
    SweepOptions opts;
    opts.g_tol = 0.4;
    auto sweep = log_law_sweep(a, w, pair, basis, {0.3}, opts);
    REQUIRE(sweep.rows.size() == 1);
    CHECK(sweep.rows[0].ok);
    CHECK(std::isfinite(sweep.rows[0].ratio));
    CHECK(sweep.rows[0].ratio > 0.0);
    CHECK(sweep.fit.pass);
    CHECK(sweep.fit.note == "insufficient points");
  }

  SUBCASE("empty set is rejected per row, not globally") {
    SweepOptions opts;
    auto sweep = log_law_sweep(IndexSet::empty(g), w, pair, basis, {0.3, 0.2}, opts);
    CHECK_FALSE(sweep.rows[0].ok);
    CHECK(sweep.rows[0].error.find("EmptySet") != std::string::npos);
    CHECK_FALSE(sweep.fit.pass);
  }

  SUBCASE("increasing epsilon list is rejected") {
    CHECK_THROWS_AS(log_law_sweep(a, w, pair, basis, {0.1, 0.2}, SweepOptions{}),
                    Error);
  }
}
