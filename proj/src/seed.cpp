#include "qclust/seed.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qclust/errors.hpp"

namespace qclust {

QuantumSeed::QuantumSeed(CompatiblePair pair, TorusPtr initial, std::vector<TorusElement> vars,
                         std::vector<std::size_t> history)
    : pair_(std::move(pair)), initial_(std::move(initial)), vars_(std::move(vars)), history_(std::move(history)) {
  if (vars_.size() != pair_.indices.size()) throw ShapeError("QuantumSeed: one variable per index required");
}

bool QuantumSeed::same_state(const QuantumSeed& o) const {
  return pair_.indices == o.pair_.indices && pair_.L == o.pair_.L && pair_.B == o.pair_.B && vars_ == o.vars_;
}

QuantumSeed initial_seed(const CompatiblePair& pair) {
  TorusPtr torus = make_torus(pair.L);
  std::vector<TorusElement> vars;
  vars.reserve(pair.indices.size());
  for (std::size_t i = 0; i < pair.indices.size(); ++i) vars.push_back(TorusElement::generator(torus, i));
  return QuantumSeed(pair, torus, std::move(vars));
}

TorusElement cluster_monomial(const QuantumSeed& s, const ExponentVector& c) {
  if (c.size() != s.size()) throw ShapeError("cluster_monomial: exponent length mismatch");
  if (!c.is_nonneg()) throw ShapeError("cluster_monomial: exponents must be nonnegative");
  TorusElement out = TorusElement::one(s.initial_torus());
  std::int64_t prefactor = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (c[i] == 0) continue;
    out = out * power(s.var(i), c[i]);
    for (std::size_t j = 0; j < i; ++j) prefactor = checked_add(prefactor, checked_mul(checked_mul(c[i], c[j]), s.L()(i, j)));
  }
  return out.shifted(prefactor);
}

std::pair<ExponentVector, ExponentVector> exchange_vectors(const IndexSet& idx, const IntMatrix& B, std::size_t k) {
  require_exchangeable(idx, k);
  const std::size_t kc = idx.column(k);
  ExponentVector a1(idx.size()), a2(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == k) {
      a1[i] = a2[i] = -1;
    } else {
      a1[i] = std::max<std::int64_t>(0, B(i, kc));
      a2[i] = std::max<std::int64_t>(0, -B(i, kc));
    }
  }
  return {std::move(a1), std::move(a2)};
}

TorusElement exchange_numerator(const QuantumSeed& s, std::size_t k) {
  const auto [a1, a2] = exchange_vectors(s.indices(), s.B(), k);
  const ExponentVector ek = ExponentVector::unit(s.size(), k);
  std::int64_t twist = 0;
  for (std::size_t i = 0; i < s.size(); ++i) twist = checked_add(twist, checked_mul(a2[i], s.L()(k, i)));
  TorusElement n = cluster_monomial(s, ek + a1).shifted(2) + cluster_monomial(s, ek + a2);
  return n.shifted(twist);
}

QuantumSeed mutate_seed(const QuantumSeed& s, std::size_t k) {
  require_exchangeable(s.indices(), k);
  CompatiblePair next = mutate_pair(s.pair(), k);
  TorusElement xk = divide_left_exact(s.var(k), exchange_numerator(s, k));

  if (xk.bar() != xk) throw InvariantViolation("mutate_seed: new cluster variable is not bar-invariant");
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == k) continue;
    const auto c = qcommute(xk, s.var(j));
    if (!c || *c != next.L(k, j)) {
      std::ostringstream os;
      os << "mutate_seed: new variable " << s.indices().label(k) << " does not q-commute with variable "
         << s.indices().label(j) << " as mu_k(L) requires (expected " << next.L(k, j) << ")";
      throw InvariantViolation(os.str());
    }
  }

  std::vector<TorusElement> vars = s.vars();
  vars[k] = std::move(xk);
  std::vector<std::size_t> history = s.history();
  history.push_back(k);
  return QuantumSeed(std::move(next), s.initial_torus(), std::move(vars), std::move(history));
}

QuantumSeed mutate_sequence(QuantumSeed s, const std::vector<std::size_t>& seq) {
  for (auto k : seq) s = mutate_seed(s, k);
  return s;
}

SeedAudit audit_seed(const QuantumSeed& s) {
  SeedAudit a;
  const auto& idx = s.indices();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const TorusElement& x = s.var(i);
    if (x.bar() != x) {
      a.bar_invariant = false;
      a.failures.push_back("variable " + std::to_string(idx.label(i)) + " is not bar-invariant");
    }
    if (!x.is_nonneg()) {
      a.positive = false;
      a.failures.push_back("variable " + std::to_string(idx.label(i)) + " has a negative coefficient");
    }
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const auto c = qcommute(x, s.var(j));
      if (!c || *c != s.L()(i, j)) {
        a.quasi_commuting = false;
        a.failures.push_back("variables " + std::to_string(idx.label(i)) + "," + std::to_string(idx.label(j)) +
                             " do not q-commute as L requires");
      }
    }
  }
  return a;
}

QuantumSeed relabeled(const QuantumSeed& s, const std::vector<std::size_t>& perm) {
  const auto& idx = s.indices();
  const std::size_t n = idx.size();
  if (perm.size() != n) throw ShapeError("relabeled: permutation length mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (perm[i] >= n || idx.is_exchangeable(i) != idx.is_exchangeable(perm[i]) ||
        (!idx.is_exchangeable(i) && perm[i] != i))
      throw ShapeError("relabeled: permutation must fix frozen indices and preserve K_ex");

  IntMatrix L(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) L(i, j) = s.L()(perm[i], perm[j]);
  IntMatrix B(n, idx.num_exchangeable());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < idx.num_exchangeable(); ++c)
      B(i, c) = s.B()(perm[i], idx.column(perm[idx.ex_position(c)]));
  std::vector<TorusElement> vars;
  vars.reserve(n);
  for (std::size_t i = 0; i < n; ++i) vars.push_back(s.var(perm[i]));
  return QuantumSeed(CompatiblePair{idx, std::move(L), std::move(B), s.pair().d}, s.initial_torus(), std::move(vars),
                     s.history());
}

std::vector<std::vector<std::size_t>> exchangeable_permutations(const IndexSet& idx) {
  std::vector<std::size_t> ex = idx.ex_positions();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> order(ex.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    std::vector<std::size_t> p(idx.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t c = 0; c < ex.size(); ++c) p[ex[c]] = ex[order[c]];
    out.push_back(std::move(p));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::optional<std::vector<std::size_t>> find_relabeling(const QuantumSeed& a, const QuantumSeed& b) {
  if (!(a.indices() == b.indices())) return std::nullopt;
  for (auto& p : exchangeable_permutations(a.indices()))
    if (relabeled(a, p).same_state(b)) return p;
  return std::nullopt;
}

}  // namespace qclust
