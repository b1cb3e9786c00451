#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qclust/mutation.hpp"
#include "qclust/torus.hpp"

namespace qclust {

/// A quantum seed whose cluster variables are expressed in the fixed initial
/// torus P(L_0). `pair` holds the current (L, B); `history` lists mutation
/// positions in the order applied.
class QuantumSeed {
 public:
  QuantumSeed(CompatiblePair pair, TorusPtr initial, std::vector<TorusElement> vars,
              std::vector<std::size_t> history = {});

  const CompatiblePair& pair() const noexcept { return pair_; }
  const IndexSet& indices() const noexcept { return pair_.indices; }
  const IntMatrix& L() const noexcept { return pair_.L; }
  const IntMatrix& B() const noexcept { return pair_.B; }
  const TorusPtr& initial_torus() const noexcept { return initial_; }
  const std::vector<TorusElement>& vars() const noexcept { return vars_; }
  const TorusElement& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<std::size_t>& history() const noexcept { return history_; }
  std::size_t size() const noexcept { return vars_.size(); }

  /// Exact equality of (L, B, vars) under the fixed labeling; history ignored.
  bool same_state(const QuantumSeed& o) const;

 private:
  CompatiblePair pair_;
  TorusPtr initial_;
  std::vector<TorusElement> vars_;
  std::vector<std::size_t> history_;
};

/// x_i = X^{e_i} over P(L).
QuantumSeed initial_seed(const CompatiblePair& pair);

/// The quantum cluster monomial x^c, c >= 0:
/// v^{sum_{i>j} c_i c_j l'_ij} x_1^{c_1} ... x_n^{c_n} with l' the current L.
TorusElement cluster_monomial(const QuantumSeed& s, const ExponentVector& c);

/// The exchange vectors a' and a'' for direction k (both -1 at k).
std::pair<ExponentVector, ExponentVector> exchange_vectors(const IndexSet& idx, const IntMatrix& B, std::size_t k);

/// x_k * mu_k(x)_k, written with cluster monomials only:
/// v^{sum_i a''_i l_ki} (v^2 x^{e_k + a'} + x^{e_k + a''}).
TorusElement exchange_numerator(const QuantumSeed& s, std::size_t k);

/// mu_k of the seed. The new variable is the left quotient of the exchange
/// numerator by x_k; the result is checked for bar invariance and for
/// quasi-commutation with every other variable against mu_k(L).
QuantumSeed mutate_seed(const QuantumSeed& s, std::size_t k);

/// Applies positions in order.
QuantumSeed mutate_sequence(QuantumSeed s, const std::vector<std::size_t>& seq);

struct SeedAudit {
  bool bar_invariant = true;
  bool positive = true;
  bool quasi_commuting = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks every variable for bar invariance and positivity and every pair for
/// x_i x_j = q^{l_ij} x_j x_i against the current L.
SeedAudit audit_seed(const QuantumSeed& s);

/// Relabel by a permutation of the exchangeable positions (frozen positions
/// fixed): the result has x'_i = x_{perm[i]}, L'_ij = L_{perm[i] perm[j]}.
/// `perm` is indexed by positions of K.
QuantumSeed relabeled(const QuantumSeed& s, const std::vector<std::size_t>& perm);

/// A permutation p of exchangeable positions with relabeled(a, p) state-equal
/// to b, if any. Intended for |K_ex| <= 8.
std::optional<std::vector<std::size_t>> find_relabeling(const QuantumSeed& a, const QuantumSeed& b);

/// Every permutation of K_ex extended by the identity on K_fr.
std::vector<std::vector<std::size_t>> exchangeable_permutations(const IndexSet& idx);

}  // namespace qclust
