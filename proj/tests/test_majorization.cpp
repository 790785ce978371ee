#include <doctest.h>

#include <algorithm>
#include <functional>
#include <vector>

#include "eg2/majorization.hpp"
#include "generators.hpp"

using namespace eg2;
using doctest::Approx;

namespace {

const ParamMatrix kEx33A({0.5, 0.7}, {1.8, 1.3});
const ParamMatrix kEx33B({0.54, 0.66}, {1.7, 1.4});
const ParamMatrix kEx34A({2.1, 2.5}, {1.5, 1.2});
const ParamMatrix kEx34B({2.34, 2.26}, {1.32, 1.38});

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace

TEST_CASE("vector majorization") {
  CHECK(majorizes(RealVector({2, 1, 1}), RealVector({4.0 / 3, 4.0 / 3, 4.0 / 3})));
  CHECK_FALSE(majorizes(RealVector({4.0 / 3, 4.0 / 3, 4.0 / 3}), RealVector({2, 1, 1})));
  CHECK(majorizes(RealVector({0.5, 0.7}), RealVector({0.54, 0.66})));
  CHECK_FALSE(majorizes(RealVector({0.54, 0.66}), RealVector({0.5, 0.7})));
  CHECK(majorizes(RealVector({3, 1, 1}), RealVector({2, 2, 1})));
  // unequal totals never majorize
  CHECK_FALSE(majorizes(RealVector({3, 1}), RealVector({1, 1})));
  // the shape-parameter claim of the crossing example: 1.44 < 1.5 at k = 2
  CHECK_FALSE(majorizes(RealVector({0.1, 1.14, 0.3}), RealVector({0.6, 0.9, 0.04})));
  CHECK_THROWS_AS(majorizes(RealVector({1, 2}), RealVector({1, 2, 3})), ContractError);
  CHECK_THROWS_AS(RealVector({}), ContractError);
  CHECK_THROWS_AS(RealVector({1.0, NAN}), DomainError);

  gen::Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    const auto v = gen::vector(rng, gen::index(rng, 1, 7), -5.0, 5.0);
    CHECK(majorizes(RealVector(v), RealVector(v)));
  }
}

TEST_CASE("majorization is transitive and antisymmetric up to order") {
  gen::Rng rng(32);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = gen::index(rng, 2, 6);
    const auto a = gen::vector(rng, n, 0.0, 10.0);
    const auto b = gen::smoothed(rng, a, gen::index(rng, 0, 4));
    const auto c = gen::smoothed(rng, b, gen::index(rng, 0, 4));
    const RealVector va(a), vb(b), vc(c);
    REQUIRE(majorizes(va, vb));
    REQUIRE(majorizes(vb, vc));
    CHECK(majorizes(va, vc));
    if (majorizes(vb, va)) {
      const auto sa = sorted_desc(a), sb = sorted_desc(b);
      for (std::size_t i = 0; i < n; ++i) CHECK(sa[i] == Approx(sb[i]).epsilon(1e-9));
    }
    // a random permutation is majorized both ways
    auto p = a;
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(majorizes(va, RealVector(p)));
    CHECK(majorizes(RealVector(p), va));
  }
}

TEST_CASE("row majorization") {
  CHECK(row_majorizes(kEx33A, kEx33B));
  CHECK(row_majorizes(kEx33A, kEx33A));
  CHECK(row_majorizes(ParamMatrix({1, 3}, {1, 1}), ParamMatrix({2, 2}, {1, 1})));
  CHECK_FALSE(row_majorizes(kEx33B, kEx33A));
  CHECK_THROWS_AS(row_majorizes(kEx33A, ParamMatrix({1, 1, 1}, {1, 1, 1})), ContractError);
}

TEST_CASE("matrix classes") {
  CHECK(is_permutation_matrix(SquareMatrix::identity(3)));
  CHECK(is_permutation_matrix(SquareMatrix(2, {0, 1, 1, 0})));
  CHECK_FALSE(is_permutation_matrix(SquareMatrix(2, {0.5, 0.5, 0.5, 0.5})));
  CHECK_FALSE(is_permutation_matrix(SquareMatrix(2, {1, 0, 1, 0})));
  CHECK(is_doubly_stochastic(SquareMatrix(2, {0.5, 0.5, 0.5, 0.5}), 1e-12));
  CHECK(is_doubly_stochastic(SquareMatrix::identity(4), 1e-12));
  CHECK_FALSE(is_doubly_stochastic(SquareMatrix(2, {0.9, 0.2, 0.1, 0.8}), 1e-12));
  CHECK_FALSE(is_doubly_stochastic(SquareMatrix(2, {1.5, -0.5, -0.5, 1.5}), 1e-12));
  CHECK_THROWS_AS(SquareMatrix(2, {1, 0, 0}), ContractError);
}

TEST_CASE("T-transform matrices") {
  CHECK_THROWS_AS(TTransform(1, 0, 0, 0.5), ContractError);
  CHECK_THROWS_AS(TTransform(3, 1, 1, 0.5), ContractError);
  CHECK_THROWS_AS(TTransform(3, 0, 3, 0.5), ContractError);
  CHECK_THROWS_AS(TTransform(3, 0, 1, 1.5), DomainError);

  const auto id = t_transform_matrix(TTransform(3, 0, 2, 1.0));
  CHECK(is_permutation_matrix(id));
  for (std::size_t r = 0; r < 3; ++r) CHECK(id.at(r, r) == 1.0);
  const auto swap = t_transform_matrix(TTransform(3, 0, 2, 0.0));
  CHECK(is_permutation_matrix(swap));
  CHECK(swap.at(0, 2) == 1.0);
  CHECK(swap.at(1, 1) == 1.0);

  const auto t8 = t_transform_matrix(TTransform(2, 0, 1, 0.8));
  CHECK(t8.at(0, 0) == Approx(0.8));
  CHECK(t8.at(0, 1) == Approx(0.2));
  CHECK(t8.at(1, 0) == Approx(0.2));
  CHECK(t8.at(1, 1) == Approx(0.8));

  gen::Rng rng(33);
  for (int k = 0; k < 200; ++k) {
    const auto t = gen::transform(rng, gen::index(rng, 2, 8));
    const auto m = t_transform_matrix(t);
    CHECK(is_doubly_stochastic(m, 1e-12));
    const auto back = as_t_transform(m);
    REQUIRE(back.has_value());
    CHECK(back->weight() == Approx(t.weight()).epsilon(1e-12));
  }
  CHECK_FALSE(as_t_transform(SquareMatrix(2, {0.9, 0.2, 0.1, 0.8})).has_value());
}

TEST_CASE("applying transforms") {
  const std::vector<TTransform> none;
  CHECK(apply_transforms(kEx33A, none) == kEx33A);

  const std::vector<TTransform> t33{TTransform(2, 0, 1, 0.8)};
  CHECK(max_abs_difference(apply_transforms(kEx33A, t33), kEx33B) < 1e-12);
  const std::vector<TTransform> t34{TTransform(2, 0, 1, 0.4)};
  CHECK(max_abs_difference(apply_transforms(kEx34A, t34), kEx34B) < 1e-12);

  const std::vector<TTransform> wrong{TTransform(3, 0, 1, 0.4)};
  CHECK_THROWS_AS(apply_transforms(kEx33A, wrong), ContractError);

  // general doubly stochastic P supplied by the caller
  CHECK(majorizes_via(kEx33A, kEx33B, t_transform_matrix(t33[0])));
  CHECK_FALSE(majorizes_via(kEx33A, kEx34B, t_transform_matrix(t33[0])));
  CHECK_FALSE(majorizes_via(kEx33A, kEx33A, SquareMatrix(2, {0.9, 0.2, 0.1, 0.8})));
}

TEST_CASE("chain majorization implies row majorization and keeps row sums") {
  gen::Rng rng(34);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = gen::index(rng, 2, 6);
    const ParamMatrix a(gen::vector(rng, n, 0.1, 5.0), gen::vector(rng, n, 0.1, 5.0));
    std::vector<TTransform> ts;
    for (std::size_t s = 0, m = gen::index(rng, 0, 5); s < m; ++s) ts.push_back(gen::transform(rng, n));
    const auto b = apply_transforms(a, ts);
    CHECK(row_majorizes(a, b));
    for (std::size_t r = 0; r < 2; ++r) {
      double sa = 0.0, sb = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        sa += a.at(r, c);
        sb += b.at(r, c);
        CHECK(b.at(r, c) > 0.0);
      }
      CHECK(sb == Approx(sa).epsilon(1e-13));
    }
  }
}

TEST_CASE("S_n and T_n membership") {
  CHECK(in_S_n(kEx33A));
  CHECK(in_S_n(kEx33B));
  CHECK(in_T_n(kEx34A));
  CHECK(in_T_n(kEx34B));
  CHECK_FALSE(in_T_n(kEx33B));
  CHECK_FALSE(in_S_n(ParamMatrix({1, 2}, {1, 2})));
  CHECK(in_S_n(ParamMatrix({0.3, 0.3}, {1, 7})));
  CHECK(in_T_n(ParamMatrix({1, 1}, {5, 9})));
  CHECK(is_member(kEx34A, ParamSet::T));
  CHECK_FALSE(is_member(kEx33A, ParamSet::T));
  CHECK_THROWS_AS(ParamMatrix({1}, {1}), ContractError);
  CHECK_THROWS_AS(ParamMatrix({1, -1}, {1, 1}), DomainError);
  CHECK_THROWS_AS(ParamMatrix({1, 1}, {1, 1, 1}), ContractError);
}

TEST_CASE("recovering a 2x2 T-transform weight") {
  CHECK(recover_t_transform_2x2(kEx33A, kEx33A).value() == 1.0);
  CHECK(recover_t_transform_2x2(kEx33A, kEx33B).value() == Approx(0.8).epsilon(1e-10));
  CHECK(recover_t_transform_2x2(kEx34A, kEx34B).value() == Approx(0.4).epsilon(1e-10));
  // theta row is inconsistent with the alpha-row solution
  CHECK_FALSE(recover_t_transform_2x2(kEx33A, ParamMatrix({0.54, 0.66}, {1.3, 1.8})).has_value());
  // outside the convex hull
  CHECK_FALSE(recover_t_transform_2x2(kEx33A, ParamMatrix({0.4, 0.8}, {1.9, 1.2})).has_value());
  // identical columns: every weight fits, reported as 1
  const ParamMatrix flat({2, 2}, {3, 3});
  CHECK(recover_t_transform_2x2(flat, flat).value() == 1.0);
  CHECK_FALSE(recover_t_transform_2x2(flat, ParamMatrix({2, 2}, {3, 4})).has_value());
  CHECK_THROWS_AS(recover_t_transform_2x2(ParamMatrix({1, 2, 3}, {1, 2, 3}), kEx33A), ContractError);

  // products of same-structure transforms are again a T-transform
  gen::Rng rng(35);
  for (int k = 0; k < 200; ++k) {
    const ParamMatrix a(gen::vector(rng, 2, 0.1, 5.0), gen::vector(rng, 2, 0.1, 5.0));
    std::vector<TTransform> ts;
    for (std::size_t s = 0, m = gen::index(rng, 1, 5); s < m; ++s) ts.push_back(gen::transform(rng, 2));
    const auto b = apply_transforms(a, ts);
    const auto w = recover_t_transform_2x2(a, b);
    REQUIRE(w.has_value());
    const std::vector<TTransform> single{TTransform(2, 0, 1, *w)};
    CHECK(max_abs_difference(apply_transforms(a, single), b) < 1e-9);
  }
}

TEST_CASE("chain path verification") {
  SUBCASE("length-1 chain in S_2") {
    const std::vector<TTransform> ts{TTransform(2, 0, 1, 0.8)};
    const auto rep = verify_chain_path(kEx33A, ts, ParamSet::S);
    CHECK(rep.all_members);
    CHECK(rep.initial_member);
    CHECK_FALSE(rep.first_failure.has_value());
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].member);
    CHECK(max_abs_difference(rep.final_matrix, kEx33B) < 1e-12);
    CHECK(rep.same_structure);
  }
  SUBCASE("k = 1 depends on the starting matrix only") {
    // the final matrix is outside T_2, which the hypothesis never asks about
    const ParamMatrix a({1.0, 3.0}, {2.0, 1.0});
    const std::vector<TTransform> ts{TTransform(2, 0, 1, 0.5)};
    CHECK(verify_chain_path(a, ts, ParamSet::T).all_members);
    CHECK_FALSE(verify_chain_path(kEx33A, ts, ParamSet::T).all_members);
    CHECK(verify_chain_path(kEx33A, ts, ParamSet::T).first_failure == 0u);
  }
  SUBCASE("empty chain") {
    const auto rep = verify_chain_path(kEx34A, {}, ParamSet::T);
    CHECK(rep.steps.empty());
    CHECK(rep.all_members);
    CHECK(rep.final_matrix == kEx34A);
  }
  SUBCASE("intermediate leaves T_3") {
    // averaging the outer columns puts them below the middle one in both rows
    const ParamMatrix a({1.0, 2.9, 3.0}, {3.0, 2.9, 1.0});
    REQUIRE(in_T_n(a));
    const std::vector<TTransform> ts{TTransform(3, 0, 2, 0.5), TTransform(3, 0, 1, 0.7)};
    const auto rep = verify_chain_path(a, ts, ParamSet::T);
    CHECK_FALSE(rep.all_members);
    CHECK(rep.first_failure == 1u);
    CHECK_FALSE(rep.steps[0].member);
    CHECK_FALSE(in_T_n(rep.steps[0].matrix));
    CHECK_FALSE(rep.same_structure);
  }
  SUBCASE("order mismatch") {
    const std::vector<TTransform> ts{TTransform(3, 0, 2, 0.5)};
    CHECK_THROWS_AS(verify_chain_path(kEx33A, ts, ParamSet::S), ContractError);
  }
}
