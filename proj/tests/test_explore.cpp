#include <algorithm>
#include <random>

#include "doctest.h"
#include "qclust/errors.hpp"
#include "qclust/explore.hpp"
#include "support.hpp"

using namespace qclust;

namespace {

CompatiblePair a2() {
  return CompatiblePair::make(IndexSet::standard(2, 2), IntMatrix::from_rows({{0, -2}, {2, 0}}),
                              IntMatrix::from_rows({{0, 1}, {-1, 0}}));
}

CompatiblePair kronecker() {
  return CompatiblePair::make(IndexSet::standard(2, 2), IntMatrix::from_rows({{0, -1}, {1, 0}}),
                              IntMatrix::from_rows({{0, 2}, {-2, 0}}));
}

ExploreOptions depth(std::size_t d, bool fold = false) {
  ExploreOptions o;
  o.depth = d;
  o.relabel_fold = fold;
  return o;
}

void check_edge_pairs(const MutationGraph& g) {
  for (const auto& e : g.edges) {
    const bool partner = std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& f) {
      return f.from == e.to && f.to == e.from;
    });
    CHECK(partner);
  }
}

}  // namespace

TEST_SUITE("explore") {

TEST_CASE("depth 0") {
  const MutationGraph g = mutation_graph(initial_seed(a2()), depth(0));
  CHECK(g.size() == 1);
  CHECK(collect_variables(g).size() == 2);
}

TEST_CASE("A2 exchange graph") {
  const QuantumSeed root = initial_seed(a2());
  const MutationGraph g = mutation_graph(root, depth(8));
  CHECK(g.size() == 10);
  CHECK(g.edges.size() == 20);
  check_edge_pairs(g);
  const auto vars = collect_variables(g);
  CHECK(vars.size() == 5);
  for (const auto& x : vars) CHECK(x.bar() == x);

  std::mt19937_64 rng(61);
  const auto pt = qtest::sample_point(rng, 2);
  CHECK(qtest::classical_variable_count(qtest::classical_from(root, pt), 8) == 5);
  std::set<qtest::Rational> values;
  for (const auto& x : vars) values.insert(qtest::evaluate(x, pt));
  CHECK(values.size() == 5);

  const AuditReport a = audit_graph(g);
  CHECK(a.ok());
  CHECK(a.exchange_relations_checked == 20);

  const MutationGraph folded = mutation_graph(root, depth(8, true));
  CHECK(folded.size() == 5);
  check_edge_pairs(folded);
  CHECK(collect_variables(folded).size() == 5);
  CHECK(audit_graph(folded).ok());
  CHECK(folded.find(mutate_sequence(root, {0, 1, 0, 1, 0})) == 0u);
}

TEST_CASE("Kronecker depth 8") {
  const QuantumSeed root = initial_seed(kronecker());
  const MutationGraph g = mutation_graph(root, depth(8));
  const auto vars = collect_variables(g);
  std::mt19937_64 rng(62);
  const auto pt = qtest::sample_point(rng, 2);
  // Two alternating branches leave the root, each adding one variable per step.
  const std::size_t oracle = qtest::classical_variable_count(qtest::classical_from(root, pt), 8);
  CHECK(oracle == 18);
  CHECK(vars.size() == oracle);
  CHECK(g.size() == 17);
  check_edge_pairs(g);
  const AuditReport a = audit_graph(g);
  CHECK(a.ok());
  for (const auto& x : vars) {
    CHECK(x.is_nonneg());
    CHECK(x.bar() == x);
  }
}

TEST_CASE("periods") {
  const QuantumSeed a = initial_seed(a2());
  CHECK(detect_period(a, {0, 1}, 40) == 10u);
  CHECK(detect_period(a, {0, 1}, 40, true) == 5u);
  CHECK(detect_period(a, {0, 1}, 9) == std::nullopt);
  CHECK(detect_period(a, {1, 1}, 10) == 2u);
  CHECK(detect_period(initial_seed(kronecker()), {0, 0}, 10) == 2u);
  CHECK(detect_period(initial_seed(kronecker()), {0, 1}, 40) == std::nullopt);
  CHECK_THROWS_AS(detect_period(a, {}, 10), ShapeError);

  std::mt19937_64 rng(63);
  const auto pt = qtest::sample_point(rng, 2);
  CHECK(qtest::classical_period(qtest::classical_from(a, pt), {0, 1}, 40, false) == 10u);
  CHECK(qtest::classical_period(qtest::classical_from(a, pt), {0, 1}, 40, true) == 5u);
  CHECK(qtest::classical_period(qtest::classical_from(initial_seed(kronecker()), pt), {0, 1}, 40, false) == 0u);
}

TEST_CASE("period of a mutated seed") {
  const QuantumSeed s = mutate_sequence(initial_seed(a2()), {0, 1, 0});
  CHECK(detect_period(s, {1, 0}, 20) == 10u);
}

TEST_CASE("parallel frontier matches sequential") {
  std::mt19937_64 rng(64);
  RandomPairOptions po;
  po.min_rank = 3;
  po.max_rank = 4;
  po.max_entry = 1;
  for (int trial = 0; trial < 5; ++trial) {
    const QuantumSeed root = initial_seed(random_compatible_pair(rng, po));
    ExploreOptions seq = depth(3);
    ExploreOptions par = seq;
    par.threads = 4;
    const MutationGraph a = mutation_graph(root, seq);
    const MutationGraph b = mutation_graph(root, par);
    CHECK(a.keys == b.keys);
    CHECK(a.edges.size() == b.edges.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
      CHECK(a.edges[i].from == b.edges[i].from);
      CHECK(a.edges[i].to == b.edges[i].to);
    }
    CHECK(audit_graph(a).ok());
  }
}

TEST_CASE("budgets") {
  ExploreOptions o = depth(8);
  o.max_nodes = 5;
  CHECK_THROWS_AS(mutation_graph(initial_seed(kronecker()), o), BudgetExceeded);
  o = depth(8);
  o.max_terms = 10;
  CHECK_THROWS_AS(mutation_graph(initial_seed(kronecker()), o), BudgetExceeded);
}

TEST_CASE("audit flags a negated coefficient") {
  MutationGraph g = mutation_graph(initial_seed(a2()), depth(2));
  std::vector<TorusElement> vars = g.nodes[1].vars();
  vars[0] = -vars[0];
  g.nodes[1] = QuantumSeed(g.nodes[1].pair(), g.nodes[1].initial_torus(), vars);
  const AuditReport a = audit_graph(g);
  CHECK_FALSE(a.ok());
  CHECK(a.positivity_failures == 1);
  CHECK(a.laurent_failures > 0);
}

TEST_CASE("exports") {
  const MutationGraph g = mutation_graph(initial_seed(a2()), depth(8, true));
  const std::string dot = to_dot(g);
  CHECK(dot.rfind("graph exchange {", 0) == 0);
  CHECK(dot.find("n0 -- n") != std::string::npos);

  const auto c = specialize_at_one(g.nodes[2].var(0) + g.nodes[2].var(1));
  for (const auto& [e, v] : c) CHECK(v > 0);
}

}
