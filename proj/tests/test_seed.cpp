#include <random>

#include "doctest.h"
#include "qclust/errors.hpp"
#include "qclust/seed.hpp"
#include "support.hpp"

using namespace qclust;

namespace {

CompatiblePair a2() {
  return CompatiblePair::make(IndexSet::standard(2, 2), IntMatrix::from_rows({{0, -2}, {2, 0}}),
                              IntMatrix::from_rows({{0, 1}, {-1, 0}}));
}

void check_commutation(const QuantumSeed& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j) CHECK(qcommute(s.var(i), s.var(j)) == s.L()(i, j));
}

}  // namespace

TEST_SUITE("seed") {

TEST_CASE("A2 first mutation") {
  const QuantumSeed s = initial_seed(a2());
  const QuantumSeed m = mutate_seed(s, 0);
  const auto& T = s.initial_torus();
  CHECK(m.var(0) == TorusElement::monomial(T, {-1, 1}) + TorusElement::monomial(T, {-1, 0}));
  CHECK(m.var(1) == s.var(1));
  CHECK(m.history() == std::vector<std::size_t>{0});
  CHECK(m.L() == IntMatrix::from_rows({{0, 2}, {-2, 0}}));
  check_commutation(m);
}

TEST_CASE("A2 variables match the classical pentagon") {
  // At v = 1: (1 + x2)/x1, (1 + x1 + x2)/(x1 x2), (1 + x1)/x2.
  const QuantumSeed s0 = initial_seed(a2());
  std::mt19937_64 rng(1);
  const auto pt = qtest::sample_point(rng, 2);
  const qtest::Rational x1 = pt[0], x2 = pt[1];
  const std::vector<qtest::Rational> expected{(1 + x2) / x1, (1 + x1 + x2) / (x1 * x2), (1 + x1) / x2};

  QuantumSeed s = s0;
  std::vector<qtest::Rational> got;
  for (std::size_t k : {0, 1, 0}) {
    s = mutate_seed(s, k);
    got.push_back(qtest::evaluate(s.var(k), pt));
  }
  CHECK(got == expected);
}

TEST_CASE("random sequences agree with the classical oracle") {
  std::mt19937_64 rng(31);
  RandomPairOptions opts;
  opts.max_rank = 5;
  opts.max_entry = 1;
  for (int trial = 0; trial < 40; ++trial) {
    const CompatiblePair p = random_compatible_pair(rng, opts);
    QuantumSeed s = initial_seed(p);
    const auto pt = qtest::sample_point(rng, p.indices.size());
    qtest::ClassicalSeed c = qtest::classical_from(s, pt);
    std::size_t last = p.indices.size();
    for (int step = 0; step < 4; ++step) {
      const auto& ex = p.indices.ex_positions();
      std::size_t k = ex[static_cast<std::size_t>(qtest::uniform(rng, 0, static_cast<std::int64_t>(ex.size()) - 1))];
      if (k == last) continue;
      last = k;
      s = mutate_seed(s, k);
      c = qtest::classical_mutate(c, k);
      CHECK(IntMatrix::from_rows(c.B) == s.B());
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(qtest::evaluate(s.var(i), pt) == c.x[i]);
      const SeedAudit a = audit_seed(s);
      CHECK(a.ok());
    }
  }
}

TEST_CASE("exchange relation and involution") {
  std::mt19937_64 rng(32);
  RandomPairOptions opts;
  opts.max_rank = 5;
  for (int trial = 0; trial < 40; ++trial) {
    const QuantumSeed s = initial_seed(random_compatible_pair(rng, opts));
    for (auto k : s.indices().ex_positions()) {
      const QuantumSeed m = mutate_seed(s, k);
      CHECK(s.var(k) * m.var(k) == exchange_numerator(s, k));
      CHECK(mutate_seed(m, k).same_state(s));
      check_commutation(m);
    }
  }
}

TEST_CASE("cluster monomials are bar-invariant") {
  std::mt19937_64 rng(33);
  QuantumSeed s = mutate_sequence(initial_seed(a2()), {0, 1});
  for (int trial = 0; trial < 20; ++trial) {
    const ExponentVector c{qtest::uniform(rng, 0, 3), qtest::uniform(rng, 0, 3)};
    const TorusElement m = cluster_monomial(s, c);
    CHECK(m.bar() == m);
    CHECK(m.is_nonneg());
  }
  CHECK_THROWS_AS(cluster_monomial(s, {-1, 0}), ShapeError);
}

TEST_CASE("frozen directions are rejected") {
  const CompatiblePair f3 = CompatiblePair::make(IndexSet::from_labels({1}, {2, 3}),
                                                 IntMatrix::from_rows({{0, 4, 2}, {-4, 0, 0}, {-2, 0, 0}}),
                                                 IntMatrix::from_rows({{0}, {1}, {-1}}));
  const QuantumSeed s = initial_seed(f3);
  CHECK_THROWS_AS(mutate_seed(s, 1), NotExchangeable);
  CHECK_THROWS_AS(mutate_seed(s, 3), NotExchangeable);
  const QuantumSeed m = mutate_seed(s, 0);
  CHECK(m.var(0).term_count() == 2);
  check_commutation(m);
}

TEST_CASE("relabeling") {
  const QuantumSeed s = initial_seed(a2());
  const QuantumSeed m = mutate_sequence(s, {0, 1, 0, 1, 0});
  const auto perm = find_relabeling(m, s);
  REQUIRE(perm);
  CHECK(relabeled(m, *perm).same_state(s));
  CHECK(*perm == std::vector<std::size_t>{1, 0});
  CHECK_FALSE(find_relabeling(mutate_seed(s, 0), s).has_value());
  CHECK(exchangeable_permutations(IndexSet::from_labels({1, 2, 3}, {4})).size() == 6);
}

TEST_CASE("audit flags a corrupted variable") {
  const QuantumSeed s = initial_seed(a2());
  const QuantumSeed m = mutate_seed(s, 0);
  std::vector<TorusElement> vars = m.vars();
  vars[0] = -vars[0];
  const QuantumSeed bad(m.pair(), m.initial_torus(), vars);
  const SeedAudit a = audit_seed(bad);
  CHECK_FALSE(a.positive);
  CHECK(a.bar_invariant);
  CHECK_FALSE(a.ok());
}


TEST_CASE("A2 cluster monomials and the second mutation") {
  const QuantumSeed s = initial_seed(a2());
  const auto& T = s.initial_torus();
  CHECK(cluster_monomial(s, {1, 1}) == TorusElement::monomial(T, {1, 1}));
  CHECK(cluster_monomial(s, {1, 0}) == s.var(0));
  CHECK(cluster_monomial(s, {0, 0}) == TorusElement::one(T));

  const QuantumSeed m = mutate_sequence(s, {0, 1});
  const TorusElement& x = m.var(1);
  REQUIRE(x.term_count() == 3);
  std::vector<ExponentVector> support;
  for (const auto& [e, c] : x.terms()) {
    support.push_back(e);
    CHECK(c.is_monomial());
    CHECK(c.leading_coeff() == 1);
  }
  CHECK(support == std::vector<ExponentVector>{{-1, -1}, {-1, 0}, {0, -1}});
  CHECK(audit_seed(initial_seed(CompatiblePair::make(IndexSet::from_labels({1}, {2, 3}),
                                                     IntMatrix::from_rows({{0, 4, 2}, {-4, 0, 0}, {-2, 0, 0}}),
                                                     IntMatrix::from_rows({{0}, {1}, {-1}}))))
            .ok());
}

}
