#include <random>

#include "doctest.h"
#include "qclust/errors.hpp"
#include "qclust/ledger.hpp"
#include "support.hpp"

using namespace qclust;

namespace {

MonoidalLedger f3() {
  return MonoidalLedger{IndexSet::from_labels({1}, {2, 3}),
                        IntMatrix::from_rows({{0, -4, -2}, {4, 0, 0}, {2, 0, 0}}),
                        IntMatrix::from_rows({{0}, {1}, {-1}}),
                        WeightData{GramLattice{IntMatrix::from_rows({{2}})}, {{-1}, {-2}, {-2}}}};
}

MonoidalLedger a2_zero_weights() {
  return MonoidalLedger{IndexSet::standard(2, 2), IntMatrix::from_rows({{0, 2}, {-2, 0}}),
                        IntMatrix::from_rows({{0, 1}, {-1, 0}}),
                        WeightData{GramLattice{IntMatrix::from_rows({{2}})}, {{0}, {0}}}};
}

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("F3 satisfies every condition") {
  const MonoidalReport r = check_monoidal(f3());
  CHECK(r.ok());
  CHECK(r.d == 2);
  CHECK(ledger_pair(f3()).d == 2);
}

TEST_CASE("F3 mutation at 1") {
  const LedgerMutation m = mutate_ledger(f3(), 0);
  CHECK(m.report.zeta == Weight{-1});
  CHECK(m.report.lambda_k_kprime == -2);
  CHECK(m.report.lambda_kprime_k == 4);
  CHECK(m.report.delta == 1);
  CHECK(m.report.tilde_lambda == 0);
  CHECK(m.report.shifts.m == 0);
  CHECK(m.report.shifts.m_prime == 3);
  CHECK(m.report.cross_check);
  CHECK(m.ledger.Lambda == IntMatrix::from_rows({{0, 4, 2}, {-4, 0, 0}, {-2, 0, 0}}));
  CHECK(m.ledger.B == IntMatrix::from_rows({{0}, {-1}, {1}}));
  CHECK(m.ledger.weights.D == std::vector<Weight>{{-1}, {-2}, {-2}});
  CHECK(check_monoidal(m.ledger).ok());
  CHECK(mutate_ledger(m.ledger, 0).ledger == f3());
}

TEST_CASE("F3 exchange identities") {
  const DecatReport r = decat_verify(f3(), 0);
  CHECK(r.passed);
  CHECK(r.shift_gap == 1);
  CHECK(r.gap_matches_delta);

  const DecatReport wrong1 = decat_verify(f3(), 0, {1, 3});
  CHECK_FALSE(wrong1.passed);
  CHECK(wrong1.failed_identity == 1);
  CHECK_FALSE(wrong1.witness.empty());
  const DecatReport wrong2 = decat_verify(f3(), 0, {0, 2});
  CHECK(wrong2.failed_identity == 2);
}

TEST_CASE("pairing statistics") {
  const MonoidalLedger l = f3();
  const PairingStats s = pairing_stats(l, 0, 1);
  CHECK(s.lambda == -4);
  CHECK(s.tilde_lambda == 0);  // (-4 + 4) / 2
  CHECK(s.delta == 0);
  MonoidalLedger odd = l;
  odd.Lambda(0, 1) = -3;
  CHECK_THROWS_AS(pairing_stats(odd, 0, 1), NonIntegral);
  CHECK(lambda_of_monomials(l, {1, 1, 0}, {0, 0, 1}) == -2);
}

TEST_CASE("each condition is detected") {
  {
    MonoidalLedger l = f3();
    l.Lambda(0, 1) = -3;
    l.Lambda(1, 0) = 3;
    const auto r = check_monoidal(l);
    CHECK(r.has(Condition::Parity));
    CHECK(r.has(Condition::Compatibility));
    CHECK_THROWS_AS(mutate_ledger(l, 0), LedgerInvalid);
  }
  {
    MonoidalLedger l = f3();
    l.Lambda(0, 1) = -2;
    CHECK(check_monoidal(l).has(Condition::LambdaNotSkew));
  }
  {
    MonoidalLedger l = f3();
    l.weights.lattice.G = IntMatrix::from_rows({{3}});
    CHECK(check_monoidal(l).has(Condition::GramOddDiagonal));
  }
  {
    MonoidalLedger l = f3();
    l.weights.lattice.G = IntMatrix::from_rows({{2, 0}, {2, 2}});
    for (auto& w : l.weights.D) w.push_back(0);
    CHECK(check_monoidal(l).has(Condition::GramNotSymmetric));
  }
  {
    MonoidalLedger l = f3();
    l.weights.D[1] = {0};
    CHECK(check_monoidal(l).has(Condition::WeightBalance));
  }
  {
    MonoidalLedger l = f3();
    l.weights.D.pop_back();
    const auto r = check_monoidal(l);
    CHECK(r.has(Condition::Shape));
    CHECK(r.violations.size() == 1);
  }
  {
    MonoidalLedger l = a2_zero_weights();
    l.B = IntMatrix::from_rows({{0, 1}, {1, 0}});
    CHECK(check_monoidal(l).has(Condition::PrincipalNotSkew));
  }
}

TEST_CASE("compatibility degree other than 2") {
  MonoidalLedger l = a2_zero_weights();
  l.Lambda = IntMatrix::from_rows({{0, 1}, {-1, 0}});
  CHECK(check_monoidal(l).has(Condition::Compatibility));
  LedgerOptions any;
  any.allow_any_d = true;
  const auto r = check_monoidal(l, any);
  CHECK(r.ok());
  CHECK(r.d == 1);
}

TEST_CASE("zero weights on a rank 2 pair") {
  const MonoidalLedger l = a2_zero_weights();
  CHECK(check_monoidal(l).ok());
  const LedgerMutation m = mutate_ledger(l, 0);
  CHECK(m.report.shifts.m == 1);
  CHECK(m.report.delta == 1);
  CHECK(decat_verify(l, 0).passed);
  CHECK(decat_verify(l, 1).passed);
}

TEST_CASE("random ledgers") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const MonoidalLedger l = random_monoidal_ledger(rng);
    REQUIRE(check_monoidal(l).ok());
    for (auto k : l.indices.ex_positions()) {
      const LedgerMutation m = mutate_ledger(l, k);
      CHECK(m.report.delta == 1);
      CHECK(m.report.cross_check);
      CHECK(m.report.tilde_lambda == m.report.shifts.m);
      CHECK(m.ledger.L() == mutate_pair(ledger_pair(l), k).L);
      CHECK(mutate_ledger(m.ledger, k).ledger == l);
      CHECK(decat_verify(l, k).passed);
    }
  }
}


TEST_CASE("F3 worked values") {
  const MonoidalLedger l = f3();
  {
    MonoidalLedger bad = l;
    bad.weights.D[2] = {-1};
    const auto r = check_monoidal(bad);
    REQUIRE(r.has(Condition::WeightBalance));
    for (const auto& v : r.violations)
      if (v.condition == Condition::WeightBalance) CHECK(v.i == 1);
  }
  {
    MonoidalLedger bad = l;
    bad.Lambda(0, 1) = -3;
    bad.Lambda(1, 0) = 3;
    for (const auto& v : check_monoidal(bad).violations)
      if (v.condition == Condition::Parity) {
        CHECK(v.i == 1);
        CHECK(v.j == 2);
      }
  }
  const PairingStats s11 = pairing_stats(l, 0, 0);
  CHECK(s11.lambda == 0);
  CHECK(s11.tilde_lambda == 1);
  CHECK(s11.delta == 0);
  CHECK(lambda_of_monomials(l, {0, 1, 1}, {1, 0, 0}) == 6);
  CHECK(lambda_of_monomials(l, {0, 0, 0}, {1, 2, 3}) == 0);
  CHECK(lambda_of_monomials(l, {0, 1, 0}, {0, 0, 1}) == l.Lambda(1, 2));
  CHECK(mutate_D(l.weights, l.indices, l.B, 0).D[0] == Weight{-1});
  CHECK(mutate_D(a2_zero_weights().weights, IndexSet::standard(2, 2), a2_zero_weights().B, 0).D[0] == Weight{0});
  CHECK(grading_shifts(l, 0).m == 0);
  CHECK(grading_shifts(l, 0).m_prime == 3);
}

}
