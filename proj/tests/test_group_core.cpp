#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "scf/group.hpp"
#include "scf/rng.hpp"
#include "scf/spectrum_set.hpp"

using namespace scf;

namespace {

GroupFunction random_function(const GroupPtr& g, Rng& rng) {
  std::vector<cplx> v(g->size());
  for (auto& x : v) x = cplx(2.0 * rng.real() - 1.0, 2.0 * rng.real() - 1.0);
  return GroupFunction(g, std::move(v));
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("make_group validates orders") {
  CHECK_THROWS_WITH_AS(make_group({}), doctest::Contains("cyclic factor"),
                       Error);
  try {
    make_group({});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyOrders);
  }
  CHECK_THROWS_AS(make_group({4, 1}), Error);
  CHECK_THROWS_AS(make_group({1 << 12, 1 << 12}), Error);  // above the 2^22 cap

  auto g = make_group({8});
  CHECK(g->size() == 8);
  CHECK(g->rank() == 1);

  auto d = make_group({2, 2, 2});
  CHECK(d->size() == 8);
  CHECK(d->is_dyadic());
  // Every character of a rank-3 dyadic group takes values in {-1, +1}.
  for (std::size_t gamma = 0; gamma < 8; ++gamma) {
    for (std::size_t x = 0; x < 8; ++x) {
      cplx v = d->character_value(gamma, x);
      CHECK(std::abs(v.imag()) < 1e-15);
      CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("index arithmetic round-trips") {
  auto g = make_group({4, 3, 5});
  std::vector<int> c(3);
  for (std::size_t i = 0; i < g->size(); ++i) {
    g->coords(i, c);
    CHECK(g->index(c) == i);
    CHECK(g->add(i, g->negate(i)) == 0);
  }
  CHECK(g->signed_coord(g->index(std::vector<int>{3, 2, 4}), 0) == -1);
  CHECK(g->max_norm(0) == 0);
}

TEST_CASE("fourier of constants and characters") {
  auto z4 = make_group({4});
  auto one = GroupFunction::constant(z4, 1.0);
  auto hat = fourier(one);
  CHECK(std::abs(hat[0] - cplx(1.0, 0.0)) < 1e-14);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(hat[i]) < 1e-14);

  auto z8 = make_group({8});
  auto chi = character_function(z8, 3);
  auto chat = fourier(chi);
  for (std::size_t i = 0; i < 8; ++i) {
    double expect = (i == 3) ? 1.0 : 0.0;
    CHECK(std::abs(chat[i] - cplx(expect, 0.0)) < 1e-14);
  }

  // Point mass at 0 on Z_4: every coefficient equals 1/4 (defining sum).
  auto delta = GroupFunction::zero(z4);
  delta[0] = 1.0;
  auto naive = oracle::naive_fourier(delta);
  auto dhat = fourier(delta);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(naive[i] - cplx(0.25, 0.0)) < 1e-15);
    CHECK(std::abs(dhat[i] - naive[i]) < 1e-14);
  }
}

TEST_CASE("fast transform matches the defining sum up to |G| = 64") {
  Rng rng(20240601);
  for (auto orders : std::vector<std::vector<int>>{
           {2}, {3}, {5}, {8}, {12}, {64}, {2, 2, 2}, {4, 9}, {2, 3, 5}, {7, 9}}) {
    auto g = make_group(orders);
    auto f = random_function(g, rng);
    auto fast = fourier(f);
    auto slow = oracle::naive_fourier(f);
    CHECK(max_abs_diff(fast.coefficients(), slow) < 1e-12);

    auto back = inverse_fourier(fast);
    CHECK(max_abs_diff(back.values(), f.values()) < 1e-12);
  }
}

TEST_CASE("unitarity and round-trip on random groups") {
  Rng rng(77);
  std::vector<std::vector<int>> shapes = {
      {4096}, {2048}, {243}, {729}, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {8, 16, 32}, {6, 10, 15}, {31, 64}, {4095}};
  for (const auto& orders : shapes) {
    auto g = make_group(orders);
    for (int rep = 0; rep < 3; ++rep) {
      auto f = random_function(g, rng);
      auto hat = fourier(f);
      double lhs = 0.0;
      for (auto c : hat.coefficients()) lhs += std::norm(c);
      double rhs = 0.0;
      for (auto v : f.values()) rhs += std::norm(v);
      rhs /= static_cast<double>(g->size());
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));

      auto back = inverse_fourier(hat);
      double err = max_abs_diff(back.values(), f.values());
      CHECK(err <= 1e-12 * std::max(1.0, f.norm_sup()));
    }
  }
}

TEST_CASE("convolution identities") {
  auto z8 = make_group({8});

  // e(0) = |G| is the identity for the normalized convolution.
  auto e = GroupFunction::zero(z8);
  e[0] = cplx(8.0, 0.0);
  Rng rng(5);
  auto f = random_function(z8, rng);
  auto fe = convolve(f, e);
  CHECK(max_abs_diff(fe.values(), f.values()) < 1e-13);

  // gamma * gamma = gamma for characters.
  auto chi = character_function(z8, 5);
  auto cc = convolve(chi, chi);
  CHECK(max_abs_diff(cc.values(), chi.values()) < 1e-13);

  // chi_U * chi_U at 0 with U = {-1,0,1}: direct sum over the 8 points gives 3/8.
  IndexSet U(z8, {7, 0, 1});
  auto chiU = indicator(U);
  auto conv = convolve(chiU, chiU);
  auto naive = oracle::naive_convolve(chiU, chiU);
  CHECK(std::abs(conv[0] - cplx(3.0 / 8.0, 0.0)) < 1e-13);
  CHECK(max_abs_diff(conv.values(), naive) < 1e-13);
}

TEST_CASE("convolution theorem and real symmetry on random data") {
  Rng rng(99);
  for (auto orders : std::vector<std::vector<int>>{{36}, {4, 27}, {2, 2, 3}}) {
    auto g = make_group(orders);
    auto f = random_function(g, rng);
    auto h = random_function(g, rng);
    auto conv_hat = fourier(convolve(f, h));
    auto fh = fourier(f);
    auto hh = fourier(h);
    for (std::size_t i = 0; i < g->size(); ++i) {
      CHECK(std::abs(conv_hat[i] - fh[i] * hh[i]) < 1e-10);
    }

    auto fr = f.real_part();
    auto fr_hat = fourier(fr);
    for (std::size_t gamma = 0; gamma < g->size(); ++gamma) {
      cplx a = fr_hat[gamma];
      cplx b = std::conj(fr_hat[g->negate(gamma)]);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
}

TEST_CASE("modulate_real") {
  auto z8 = make_group({8});
  auto one = GroupFunction::constant(z8, 1.0);

  SUBCASE("constant times a character gives its real part") {
    auto m = modulate_real(one, 2);
    for (std::size_t x = 0; x < 8; ++x) {
      double expect = std::cos(2.0 * std::numbers::pi * 2.0 * x / 8.0);
      CHECK(std::abs(m[x] - cplx(expect, 0.0)) < 1e-14);
    }
  }

  SUBCASE("dyadic characters are real so modulation is exact multiplication") {
    auto d = make_group({2, 2, 2});
    Rng rng(3);
    auto f = random_function(d, rng).real_part();
    auto m = modulate_real(f, 5);
    auto chi = character_function(d, 5);
    auto prod = f.pointwise_product(chi);
    CHECK(max_abs_diff(m.values(), prod.values()) < 1e-14);
  }

  SUBCASE("spectrum shifts by +/-gamma with halved coefficients") {
    auto f = inverse_fourier(fourier(indicator(IndexSet(z8, {0, 1, 2}))));
    auto m = modulate_real(f, 3);
    auto mhat = fourier(m);
    auto fhat = fourier(f);
    for (std::size_t gamma = 0; gamma < 8; ++gamma) {
      cplx expect = 0.5 * (fhat[z8->sub(gamma, 3)] + fhat[z8->add(gamma, 3)]);
      CHECK(std::abs(mhat[gamma] - expect) < 1e-12);
    }
  }

  SUBCASE("rejects functions with a genuine imaginary part") {
    auto bad = GroupFunction::constant(z8, cplx(0.0, 1.0));
    CHECK_THROWS_AS(modulate_real(bad, 1), Error);
  }
}

TEST_CASE("index sets") {
  auto g = make_group({16});
  IndexSet a(g, {1, 2, 3});
  IndexSet b(g, {3, 4});
  CHECK(a.unite(b).size() == 4);
  CHECK(a.intersect(b).indices() == std::vector<std::uint32_t>{3});
  CHECK(a.difference(b).size() == 2);
  CHECK(a.shifted(2).indices() == std::vector<std::uint32_t>{3, 4, 5});
  CHECK(a.negated().indices() == std::vector<std::uint32_t>{13, 14, 15});
  CHECK(a.sum_with(b).contains(7));
  CHECK_FALSE(a.is_symmetric());
  CHECK(IndexSet(g, {0, 1, 15}).is_symmetric());
  CHECK(a.intersects(b));
  CHECK(IndexSet(g, {3}).is_subset_of(a));

  auto f = indicator(a);
  CHECK(std::abs(f.integral().real() - 3.0 / 16.0) < 1e-15);
  auto sup = support(fourier(character_function(g, 7)));
  CHECK(sup.indices() == std::vector<std::uint32_t>{7});
}

TEST_CASE("group mismatch is rejected across operations") {
  auto z8 = make_group({8});
  auto z4 = make_group({4});
  auto f8 = GroupFunction::constant(z8, 1.0);
  auto f4 = GroupFunction::constant(z4, 1.0);
  CHECK_THROWS_AS(convolve(f8, f4), Error);
  CHECK_THROWS_AS(f8.pointwise_product(f4), Error);
  CHECK_THROWS_AS(IndexSet(z4, {5}), Error);
}
