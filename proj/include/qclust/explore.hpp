#pragma once

// Breadth-first exploration of the exchange graph, period detection and
// audits of every cluster variable met along the way.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qclust/seed.hpp"

namespace qclust {

struct ExploreOptions {
  std::size_t depth = 0;
  /// Identify seeds that agree after permuting K_ex.
  bool relabel_fold = false;
  std::size_t max_nodes = 100000;
  /// Largest admissible term count of a single cluster variable.
  std::size_t max_terms = 200000;
  /// Worker threads for frontier expansion; results do not depend on it.
  unsigned threads = 1;
};

struct GraphEdge {
  std::size_t from = 0;
  std::size_t k = 0;  // mutation position at `from`
  std::size_t to = 0;
  /// relabeled(mu_k(nodes[from]), perm) == nodes[to]; empty means identity.
  std::vector<std::size_t> perm;
};

struct MutationGraph {
  std::vector<QuantumSeed> nodes;  // nodes[0] is the root
  std::vector<std::size_t> depth;
  std::vector<GraphEdge> edges;
  std::vector<std::string> keys;
  bool relabel_fold = false;

  std::size_t size() const noexcept { return nodes.size(); }
  std::optional<std::size_t> find(const QuantumSeed& s) const;
};

/// Canonical content key of (L, B, vars); with `fold`, the least key over all
/// relabelings of K_ex.
std::string canonical_key(const QuantumSeed& s, bool fold);
std::string canonical_string(const TorusElement& x);

/// All seeds reachable by at most `opts.depth` mutations, deduplicated by
/// exact seed equality. Nodes at the last level are still mutated so that
/// every edge between explored nodes is recorded in both directions.
/// Throws BudgetExceeded when a node or term limit is hit.
MutationGraph mutation_graph(const QuantumSeed& root, const ExploreOptions& opts);

/// Distinct cluster variables over all nodes, sorted by canonical string.
std::vector<TorusElement> collect_variables(const MutationGraph& g);

/// Smallest t <= bound such that applying `sequence` cyclically t times
/// returns the seed (exactly, or up to relabeling when `fold`). A cheap
/// homomorphic image (v = 1, variables evaluated modulo a prime) rules out
/// most steps; candidates are confirmed with exact arithmetic.
std::optional<std::size_t> detect_period(const QuantumSeed& seed, const std::vector<std::size_t>& sequence,
                                         std::size_t bound, bool fold = false);

struct AuditReport {
  std::size_t nodes = 0;
  std::size_t variables_checked = 0;
  std::size_t exchange_relations_checked = 0;
  std::size_t laurent_failures = 0;
  std::size_t positivity_failures = 0;
  std::size_t bar_failures = 0;
  std::size_t commutation_failures = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Per node: positivity and bar invariance of every variable, quasi-commutation
/// against the node's L. Per edge: the exchange relation x_k x'_k = N holds.
AuditReport audit_graph(const MutationGraph& g);

/// v = 1 specialization into the commutative Laurent ring Z[x^{+-1}].
using CommutativeLaurent = std::map<ExponentVector, BigInt>;
CommutativeLaurent specialize_at_one(const TorusElement& x);

/// Graphviz rendering of the exchange graph (one undirected edge per pair).
std::string to_dot(const MutationGraph& g);

}  // namespace qclust
