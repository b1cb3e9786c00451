#pragma once

// Integer shadow of a quantum monoidal seed.
//
// A ledger records Lambda_ij = Lambda(M_i, M_j), the weights d_i = wt(M_i) in
// a lattice with even symmetric form ( , ), and the exchange matrix B. The
// quasi-commutation matrix of the corresponding quantum seed is L = -Lambda.
// Nothing here builds modules; the ledger checks and transports the numeric
// data that such modules would carry.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qclust/mutation.hpp"
#include "qclust/seed.hpp"
#include "qclust/torus.hpp"

namespace qclust {

using Weight = std::vector<std::int64_t>;

struct GramLattice {
  IntMatrix G;

  std::size_t rank() const noexcept { return G.rows(); }
  std::int64_t pair(const Weight& a, const Weight& b) const;

  friend bool operator==(const GramLattice&, const GramLattice&) = default;
};

struct WeightData {
  GramLattice lattice;
  std::vector<Weight> D;  // one weight per position of K

  bool all_zero() const;

  friend bool operator==(const WeightData&, const WeightData&) = default;
};

struct MonoidalLedger {
  IndexSet indices;
  IntMatrix Lambda;  // K x K
  IntMatrix B;       // K x K_ex
  WeightData weights;

  /// The seed's quasi-commutation matrix, -Lambda.
  IntMatrix L() const { return -Lambda; }

  friend bool operator==(const MonoidalLedger&, const MonoidalLedger&) = default;
};

enum class Condition {
  Shape,
  GramNotSymmetric,
  GramOddDiagonal,
  LambdaNotSkew,
  PrincipalNotSkew,
  Compatibility,
  Parity,
  WeightBalance,
};

std::string to_string(Condition c);

struct Violation {
  Condition condition;
  std::optional<Label> i;
  std::optional<Label> j;
  std::string message;
};

struct MonoidalReport {
  std::vector<Violation> violations;
  std::optional<std::int64_t> d;  // compatibility degree when (L, B) is compatible

  bool ok() const { return violations.empty(); }
  bool has(Condition c) const;
};

struct LedgerOptions {
  /// Accept compatibility with any d > 0 instead of d = 2. Off by default:
  /// the monoidal conditions fix d = 2 and mutate_ledger relies on it.
  bool allow_any_d = false;
};

/// Evaluates the quantum monoidal seed conditions that are visible on integer
/// data. Violations are returned, not thrown. When every weight is zero the
/// parity and weight-balance conditions are skipped.
MonoidalReport check_monoidal(const MonoidalLedger& ledger, const LedgerOptions& opts = {});

struct PairingStats {
  std::int64_t lambda = 0;        // Lambda(M_i, M_j)
  std::int64_t tilde_lambda = 0;  // (Lambda(M_i,M_j) + (d_i,d_j)) / 2
  std::int64_t delta = 0;         // (Lambda(M_i,M_j) + Lambda(M_j,M_i)) / 2
};

/// i, j are positions. Throws NonIntegral if a halved quantity is odd.
PairingStats pairing_stats(const MonoidalLedger& ledger, std::size_t i, std::size_t j);

/// mu_k(D): only slot k changes, to -d_k + sum_{b_ik > 0} b_ik d_i.
WeightData mutate_D(const WeightData& w, const IndexSet& idx, const IntMatrix& B, std::size_t k);

struct GradingShifts {
  std::int64_t m = 0;
  std::int64_t m_prime = 0;
};

/// m_k = (d_k,zeta)/2 + sum_{b_ik<0} l_ki b_ik / 2 and
/// m'_k = (d_k,zeta)/2 + sum_{b_ik>0} l_ki b_ik / 2, with l = -Lambda.
GradingShifts grading_shifts(const MonoidalLedger& ledger, std::size_t k);

struct LedgerMutationReport {
  std::size_t k = 0;
  Weight zeta;                         // weight of M'_k
  std::int64_t lambda_k_kprime = 0;    // Lambda(M_k, M'_k)
  std::int64_t lambda_kprime_k = 0;    // Lambda(M'_k, M_k)
  std::int64_t delta = 0;              // delta(M_k, M'_k), always 1
  std::int64_t tilde_lambda = 0;       // tilde Lambda(M_k, M'_k), equals m_k
  GradingShifts shifts;
  bool cross_check = false;            // -Lambda' == E^T (-Lambda) E
};

struct LedgerMutation {
  MonoidalLedger ledger;
  LedgerMutationReport report;
};

/// Replaces row and column k of Lambda with the values for M'_k, mutates B and
/// D. Throws LedgerInvalid when the input (or output) fails check_monoidal,
/// SimplyLinkedViolation when delta(M_k, M'_k) != 1 and CrossCheckMismatch when
/// the result disagrees with mutate_L or with m_k.
LedgerMutation mutate_ledger(const MonoidalLedger& ledger, std::size_t k, const LedgerOptions& opts = {});

/// sum_{i,j} c_i c'_j Lambda_ij for c, c' >= 0.
std::int64_t lambda_of_monomials(const MonoidalLedger& ledger, const ExponentVector& c, const ExponentVector& c2);

struct DecatReport {
  bool passed = false;
  int failed_identity = 0;  // 1 or 2 when !passed
  std::string witness;      // first differing term
  GradingShifts shifts;
  /// q-power gap between the two right-hand terms of the first identity, which
  /// must equal delta(M_k, M'_k) = 1.
  std::int64_t shift_gap = 0;
  bool gap_matches_delta = false;
};

/// Verifies both exchange identities for the classes [M_k], X'_k and the
/// normalized products on either side, as exact equations in P(-Lambda).
DecatReport decat_verify(const MonoidalLedger& ledger, std::size_t k);
/// Same, with caller-supplied grading shifts.
DecatReport decat_verify(const MonoidalLedger& ledger, std::size_t k, const GradingShifts& shifts);

/// The quantum seed of a ledger: L = -Lambda with the ledger's B.
CompatiblePair ledger_pair(const MonoidalLedger& ledger);

struct RandomLedgerOptions {
  RandomPairOptions pair;
  std::size_t max_lattice_rank = 2;
};

/// A ledger passing check_monoidal: Lambda and the Gram form are even, weights
/// span random vectors of the left kernel of B.
MonoidalLedger random_monoidal_ledger(std::mt19937_64& rng, const RandomLedgerOptions& opts = {});

}  // namespace qclust
